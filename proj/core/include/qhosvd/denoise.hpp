#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qhosvd/image.hpp"
#include "qhosvd/qtensor.hpp"

namespace qhosvd {

/// Nonlocal denoiser parameters. `for_sigma` fills the per-noise-level
/// schedule (sigma 10/20/30/50 -> patch 6/6/7/8, group 70/70/90/120,
/// iterations 8/8/14/20, eta 0.70/0.55/0.45/0.35), interpolating linearly
/// between those rows and clamping outside them. Every field can be
/// overridden afterwards.
struct DenoiseConfig {
    double sigma = 0.0;          // noise standard deviation, [0,255] units
    std::size_t patch_size = 6;  // w
    std::size_t group_size = 70; // K
    std::size_t iterations = 8;
    double relaxation = 0.1;     // delta
    std::size_t search_window = 30; // W
    double eta = 0.55;
    std::size_t ref_stride = 4;
    std::size_t threads = 0;

    static DenoiseConfig for_sigma(double sigma);

    /// tau = eta * sigma * sqrt(2 * ln(w^2 * K)).
    double threshold() const;

    void validate(std::size_t image_h, std::size_t image_w) const;
};

/// K similar patches stacked as a w x w x K tensor; member 1 is the
/// reference itself. Members sorted by ascending squared Frobenius
/// distance to the reference, ties broken by row-major anchor order.
struct SimilarGroup {
    QTensor tensor;
    std::vector<std::pair<std::size_t, std::size_t>> member_anchors;
    bool padded = false; // true when candidates were repeated to reach K
};

/// Exhaustive pixel-step-1 scan for the K nearest patches within the
/// W x W window centered on the reference anchor (clamped at borders).
SimilarGroup block_match(const QMatrix& q, std::pair<std::size_t, std::size_t> ref_anchor,
                         const DenoiseConfig& cfg);

/// Full QHOSVD over modes (3,2,1), hard thresholding of the core at
/// cfg.threshold(), inverse transform; returns the K denoised slices.
std::vector<QMatrix> denoise_group(const SimilarGroup& group, const DenoiseConfig& cfg);

/// Whole-image denoiser: per iteration, the relaxation step
/// Y' = X + delta * (Y - X), then block matching / group thresholding over
/// reference anchors at cfg.ref_stride, then overlap-averaged aggregation.
/// Deterministic for fixed inputs and config, independent of thread count.
RgbImage denoise(const RgbImage& noisy, const DenoiseConfig& cfg);

} // namespace qhosvd
