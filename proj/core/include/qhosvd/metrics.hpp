#pragma once

#include <cstdint>

#include "qhosvd/image.hpp"

namespace qhosvd {

struct MetricReport {
    double psnr_db = 0.0; // +infinity for identical images
    double ssim = 0.0;    // in [-1, 1], 1 for identical images
};

/// 20*log10(255 / sqrt(MSE)), MSE averaged over all pixels and all three
/// channels jointly. Returns +infinity when MSE is 0. Throws ShapeError on
/// extent mismatch.
double psnr(const RgbImage& a, const RgbImage& b);

/// Single-scale SSIM per channel (11x11 Gaussian window, std 1.5,
/// C1=(0.01*255)^2, C2=(0.03*255)^2), map averaged, then averaged over the
/// three channels. Requires extents >= 11x11.
double ssim(const RgbImage& a, const RgbImage& b);

MetricReport compare(const RgbImage& a, const RgbImage& b);

/// Adds i.i.d. zero-mean Gaussian noise (std sigma) per channel per pixel
/// and clamps to [0, 255]. The sample for a given (seed, pixel, channel) is
/// fixed, so the output is platform-stable and order-independent.
RgbImage add_gaussian_noise(const RgbImage& img, double sigma, std::uint64_t seed);

} // namespace qhosvd
