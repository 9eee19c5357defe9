#include "qhosvd/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qhosvd/errors.hpp"

namespace qhosvd {

namespace {

void check_extents(const RgbImage& a, const RgbImage& b) {
    if (a.height != b.height || a.width != b.width)
        throw ShapeError("metrics: extents " + std::to_string(a.height) + "x" +
                         std::to_string(a.width) + " vs " + std::to_string(b.height) + "x" +
                         std::to_string(b.width));
}

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;

std::vector<double> gaussian_kernel_1d() {
    std::vector<double> k(kSsimWindow);
    const int half = kSsimWindow / 2;
    double sum = 0.0;
    for (int i = 0; i < kSsimWindow; ++i) {
        const double d = i - half;
        k[i] = std::exp(-(d * d) / (2.0 * kSsimSigma * kSsimSigma));
        sum += k[i];
    }
    for (double& v : k) v /= sum;
    return k;
}

// Separable valid-region Gaussian filtering of an h x w plane.
std::vector<double> gauss_valid(const std::vector<double>& src, std::size_t h, std::size_t w,
                                const std::vector<double>& k) {
    const std::size_t ow = w - kSsimWindow + 1;
    const std::size_t oh = h - kSsimWindow + 1;
    std::vector<double> tmp(h * ow, 0.0);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < ow; ++x) {
            double s = 0.0;
            for (int t = 0; t < kSsimWindow; ++t) s += k[t] * src[y * w + x + t];
            tmp[y * ow + x] = s;
        }
    std::vector<double> out(oh * ow, 0.0);
    for (std::size_t y = 0; y < oh; ++y)
        for (std::size_t x = 0; x < ow; ++x) {
            double s = 0.0;
            for (int t = 0; t < kSsimWindow; ++t) s += k[t] * tmp[(y + t) * ow + x];
            out[y * ow + x] = s;
        }
    return out;
}

double ssim_plane(const std::vector<double>& a, const std::vector<double>& b,
                  std::size_t h, std::size_t w, const std::vector<double>& k) {
    const std::size_t n = h * w;
    std::vector<double> aa(n), bb(n), ab(n);
    for (std::size_t i = 0; i < n; ++i) {
        aa[i] = a[i] * a[i];
        bb[i] = b[i] * b[i];
        ab[i] = a[i] * b[i];
    }
    const auto mu_a = gauss_valid(a, h, w, k);
    const auto mu_b = gauss_valid(b, h, w, k);
    const auto m_aa = gauss_valid(aa, h, w, k);
    const auto m_bb = gauss_valid(bb, h, w, k);
    const auto m_ab = gauss_valid(ab, h, w, k);

    const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
    const double c2 = (0.03 * 255.0) * (0.03 * 255.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double ma = mu_a[i], mb = mu_b[i];
        const double va = m_aa[i] - ma * ma;
        const double vb = m_bb[i] - mb * mb;
        const double cov = m_ab[i] - ma * mb;
        acc += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
               ((ma * ma + mb * mb + c1) * (va + vb + c2));
    }
    return acc / static_cast<double>(mu_a.size());
}

// splitmix64; fixed function of (seed, counter).
std::uint64_t mix64(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + counter * 0x9E3779B97F4A7C15ULL + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform_open(std::uint64_t bits) {
    // (0, 1]: avoids log(0) in Box-Muller.
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

double gaussian_sample(std::uint64_t seed, std::uint64_t counter) {
    const double u1 = uniform_open(mix64(seed, 2 * counter));
    const double u2 = uniform_open(mix64(seed, 2 * counter + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace

double psnr(const RgbImage& a, const RgbImage& b) {
    check_extents(a, b);
    double se = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double dr = a.r[i] - b.r[i];
        const double dg = a.g[i] - b.g[i];
        const double db = a.b[i] - b.b[i];
        se += dr * dr + dg * dg + db * db;
    }
    const double mse = se / (3.0 * static_cast<double>(a.size()));
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(255.0 / std::sqrt(mse));
}

double ssim(const RgbImage& a, const RgbImage& b) {
    check_extents(a, b);
    if (a.height < kSsimWindow || a.width < kSsimWindow)
        throw ShapeError("ssim: image smaller than the 11x11 window");
    const auto k = gaussian_kernel_1d();
    const double sr = ssim_plane(a.r, b.r, a.height, a.width, k);
    const double sg = ssim_plane(a.g, b.g, a.height, a.width, k);
    const double sb = ssim_plane(a.b, b.b, a.height, a.width, k);
    return (sr + sg + sb) / 3.0;
}

MetricReport compare(const RgbImage& a, const RgbImage& b) {
    return {psnr(a, b), ssim(a, b)};
}

RgbImage add_gaussian_noise(const RgbImage& img, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw ParameterError("add_gaussian_noise: negative sigma");
    RgbImage out = img;
    if (sigma == 0.0) return out;
    auto clamp255 = [](double v) { return std::min(std::max(v, 0.0), 255.0); };
    for (std::size_t i = 0; i < img.size(); ++i) {
        out.r[i] = clamp255(img.r[i] + sigma * gaussian_sample(seed, 3 * i + 0));
        out.g[i] = clamp255(img.g[i] + sigma * gaussian_sample(seed, 3 * i + 1));
        out.b[i] = clamp255(img.b[i] + sigma * gaussian_sample(seed, 3 * i + 2));
    }
    return out;
}

} // namespace qhosvd
