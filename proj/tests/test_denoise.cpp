#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qhosvd/denoise.hpp"
#include "qhosvd/errors.hpp"
#include "qhosvd/metrics.hpp"
#include "qhosvd/qhosvd.hpp"

#include "support.hpp"

using qhosvd::DenoiseConfig;
using qhosvd::QMatrix;
using qhosvd::Quaternion;
using qhosvd::RgbImage;
using qhosvd::SimilarGroup;

namespace {

RgbImage smooth_image(std::size_t h, std::size_t w) {
    RgbImage img(h, w);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) {
            const std::size_t i = y * w + x;
            img.r[i] = 120.0 + 80.0 * std::sin(0.09 * x + 0.05 * y);
            img.g[i] = 110.0 + 70.0 * std::cos(0.07 * x);
            img.b[i] = 90.0 + 60.0 * std::sin(0.06 * y) + (x > w / 2 ? 40.0 : 0.0);
        }
    return img;
}

double image_diff(const RgbImage& a, const RgbImage& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a.r[i] - b.r[i]));
        m = std::max(m, std::abs(a.g[i] - b.g[i]));
        m = std::max(m, std::abs(a.b[i] - b.b[i]));
    }
    return m;
}

} // namespace

TEST_CASE("schedule rows and interpolation") {
    const DenoiseConfig c10 = DenoiseConfig::for_sigma(10.0);
    CHECK(c10.patch_size == 6);
    CHECK(c10.group_size == 70);
    CHECK(c10.iterations == 8);
    CHECK(c10.eta == doctest::Approx(0.70));

    const DenoiseConfig c50 = DenoiseConfig::for_sigma(50.0);
    CHECK(c50.patch_size == 8);
    CHECK(c50.group_size == 120);
    CHECK(c50.iterations == 20);
    CHECK(c50.eta == doctest::Approx(0.35));

    const DenoiseConfig c25 = DenoiseConfig::for_sigma(25.0);
    CHECK(c25.group_size == 80); // halfway between 70 and 90
    CHECK(c25.eta == doctest::Approx(0.50));
    CHECK(c25.iterations == 11);

    // Clamped outside the tabulated range.
    CHECK(DenoiseConfig::for_sigma(5.0).eta == doctest::Approx(0.70));
    CHECK(DenoiseConfig::for_sigma(80.0).group_size == 120);
    CHECK(DenoiseConfig::for_sigma(0.0).patch_size == 6);
}

TEST_CASE("threshold formula") {
    DenoiseConfig cfg;
    cfg.sigma = 10.0;
    cfg.eta = 0.70;
    cfg.patch_size = 6;
    cfg.group_size = 70;
    // 0.70 * 10 * sqrt(2 ln 2520)
    CHECK(cfg.threshold() == doctest::Approx(27.70).epsilon(1e-3));
    cfg.sigma = 0.0;
    CHECK(cfg.threshold() == 0.0);
}

TEST_CASE("config validation") {
    DenoiseConfig cfg = DenoiseConfig::for_sigma(20.0);
    CHECK_NOTHROW(cfg.validate(64, 64));
    CHECK_THROWS_AS(cfg.validate(4, 64), qhosvd::ShapeError);
    cfg.relaxation = 1.5;
    CHECK_THROWS_AS(cfg.validate(64, 64), qhosvd::ParameterError);
    cfg.relaxation = 0.1;
    cfg.ref_stride = 0;
    CHECK_THROWS_AS(cfg.validate(64, 64), qhosvd::ParameterError);
    CHECK_THROWS_AS(DenoiseConfig::for_sigma(-1.0), qhosvd::ParameterError);
}

TEST_CASE("block matching on a constant image degenerates to row-major order") {
    RgbImage flat(12, 12);
    for (std::size_t i = 0; i < flat.size(); ++i) flat.r[i] = flat.g[i] = flat.b[i] = 50.0;
    const QMatrix q = qhosvd::encode_rgb(flat);

    DenoiseConfig cfg;
    cfg.patch_size = 4;
    cfg.group_size = 5;
    cfg.search_window = 8;
    const SimilarGroup g = qhosvd::block_match(q, {4, 4}, cfg);
    REQUIRE(g.member_anchors.size() == 5);
    CHECK(g.member_anchors[0] == std::pair<std::size_t, std::size_t>{4, 4});
    // All distances tie at zero; the remaining slots fill in row-major order.
    CHECK(g.member_anchors[1] == std::pair<std::size_t, std::size_t>{0, 0});
    CHECK(g.member_anchors[2] == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(g.member_anchors[3] == std::pair<std::size_t, std::size_t>{0, 2});
    CHECK(g.member_anchors[4] == std::pair<std::size_t, std::size_t>{0, 3});
}

TEST_CASE("block matching with K=1 returns the reference alone") {
    testsup::Rng rng(81);
    const QMatrix q = testsup::random_qmatrix(10, 10, rng);
    DenoiseConfig cfg;
    cfg.patch_size = 3;
    cfg.group_size = 1;
    cfg.search_window = 6;
    const SimilarGroup g = qhosvd::block_match(q, {2, 2}, cfg);
    REQUIRE(g.member_anchors.size() == 1);
    CHECK(g.member_anchors[0] == std::pair<std::size_t, std::size_t>{2, 2});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(g.tensor.frontal_slice(0).at(i, j) == q.at(2 + i, 2 + j));
}

TEST_CASE("block matching agrees with a brute-force distance oracle") {
    testsup::Rng rng(82);
    const QMatrix q = testsup::random_qmatrix(12, 12, rng);
    DenoiseConfig cfg;
    cfg.patch_size = 3;
    cfg.group_size = 6;
    cfg.search_window = 10;
    const std::pair<std::size_t, std::size_t> ref{5, 6};
    const SimilarGroup g = qhosvd::block_match(q, ref, cfg);

    struct Entry {
        double d;
        std::size_t r, c;
    };
    std::vector<Entry> oracle;
    const std::size_t half = cfg.search_window / 2;
    for (std::size_t r = ref.first > half ? ref.first - half : 0;
         r + cfg.patch_size <= q.rows() && r <= ref.first + half; ++r)
        for (std::size_t c = ref.second > half ? ref.second - half : 0;
             c + cfg.patch_size <= q.cols() && c <= ref.second + half; ++c) {
            if (r == ref.first && c == ref.second) continue;
            double d = 0.0;
            for (std::size_t i = 0; i < cfg.patch_size; ++i)
                for (std::size_t j = 0; j < cfg.patch_size; ++j)
                    d += (q.at(ref.first + i, ref.second + j) - q.at(r + i, c + j)).modulus_sq();
            oracle.push_back({d, r, c});
        }
    std::sort(oracle.begin(), oracle.end(), [](const Entry& a, const Entry& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.r != b.r) return a.r < b.r;
        return a.c < b.c;
    });

    REQUIRE(g.member_anchors.size() == cfg.group_size);
    CHECK(g.member_anchors[0] == ref);
    for (std::size_t i = 1; i < cfg.group_size; ++i) {
        CHECK(g.member_anchors[i].first == oracle[i - 1].r);
        CHECK(g.member_anchors[i].second == oracle[i - 1].c);
    }
    CHECK_FALSE(g.padded);
}

TEST_CASE("too few candidates pad the group") {
    testsup::Rng rng(83);
    const QMatrix q = testsup::random_qmatrix(5, 5, rng);
    DenoiseConfig cfg;
    cfg.patch_size = 4;
    cfg.group_size = 10;
    cfg.search_window = 4;
    const SimilarGroup g = qhosvd::block_match(q, {0, 0}, cfg);
    CHECK(g.padded);
    CHECK(g.member_anchors.size() == 10);
}

TEST_CASE("group thresholding conserves or reduces energy") {
    testsup::Rng rng(84);
    DenoiseConfig cfg;
    cfg.sigma = 20.0;
    cfg.eta = 0.55;
    cfg.patch_size = 4;
    cfg.group_size = 6;
    cfg.search_window = 10;
    const QMatrix q = testsup::random_qmatrix(12, 12, rng) * 60.0;
    const SimilarGroup g = qhosvd::block_match(q, {4, 4}, cfg);
    const auto slices = qhosvd::denoise_group(g, cfg);
    double out_energy = 0.0, in_energy = 0.0;
    for (std::size_t k = 0; k < slices.size(); ++k) {
        out_energy += std::pow(slices[k].frobenius_norm(), 2);
        in_energy += std::pow(g.tensor.frontal_slice(k).frobenius_norm(), 2);
    }
    CHECK(out_energy <= in_energy * (1.0 + 1e-12));
}

TEST_CASE("zero threshold leaves a group untouched") {
    testsup::Rng rng(85);
    DenoiseConfig cfg;
    cfg.sigma = 0.0;
    cfg.patch_size = 4;
    cfg.group_size = 5;
    cfg.search_window = 10;
    const QMatrix q = qhosvd::encode_rgb(smooth_image(12, 12));
    const SimilarGroup g = qhosvd::block_match(q, {3, 3}, cfg);
    const auto slices = qhosvd::denoise_group(g, cfg);
    for (std::size_t k = 0; k < slices.size(); ++k)
        CHECK(qhosvd::difference_norm(slices[k], g.tensor.frontal_slice(k)) <=
              1e-10 * std::max(g.tensor.frobenius_norm(), 1.0));
}

TEST_CASE("identical patches survive moderate thresholds") {
    DenoiseConfig cfg;
    cfg.patch_size = 4;
    cfg.group_size = 6;
    // Constant pure patch: every stage unfolding has rank 1, so the core
    // concentrates in a single dominant coefficient.
    QMatrix patch(4, 4);
    for (std::size_t i = 0; i < patch.size(); ++i)
        patch.set_linear(i, Quaternion{0.0, 50.0, 30.0, 20.0});
    SimilarGroup g;
    g.tensor = qhosvd::QTensor({4, 4, 6});
    for (std::size_t k = 0; k < 6; ++k) {
        g.tensor.set_frontal_slice(k, patch);
        g.member_anchors.emplace_back(0, 0);
    }
    // Pick a threshold below the dominant coefficient of this rank-1 stack.
    const qhosvd::QhosvdFactors f = qhosvd::qhosvd(g.tensor, {3, 2, 1});
    double top = 0.0;
    for (std::size_t i = 0; i < f.core.size(); ++i)
        top = std::max(top, f.core.at_linear(i).modulus());
    cfg.sigma = 1.0;
    cfg.eta = top / (2.0 * cfg.sigma * std::sqrt(2.0 * std::log(16.0 * 6.0)));
    REQUIRE(cfg.threshold() < top);
    const auto slices = qhosvd::denoise_group(g, cfg);
    for (std::size_t k = 0; k < 6; ++k)
        CHECK(qhosvd::difference_norm(slices[k], patch) <=
              1e-8 * std::max(patch.frobenius_norm(), 1.0));
}

TEST_CASE("relaxation fixed point") {
    testsup::Rng rng(87);
    const QMatrix y = testsup::random_qmatrix(6, 6, rng);
    const QMatrix next = y + (y - y) * 0.1;
    CHECK(qhosvd::difference_norm(next, y) == 0.0);
}

TEST_CASE("zero sigma single iteration is the identity") {
    const RgbImage img = smooth_image(20, 20);
    DenoiseConfig cfg;
    cfg.sigma = 0.0;
    cfg.patch_size = 6;
    cfg.group_size = 8;
    cfg.iterations = 1;
    cfg.search_window = 12;
    cfg.ref_stride = 2;
    cfg.threads = 1;
    const RgbImage out = qhosvd::denoise(img, cfg);
    CHECK(image_diff(out, img) <= 1e-8);
}

TEST_CASE("denoising improves a noisy image") {
    const RgbImage clean = smooth_image(64, 64);
    const RgbImage noisy = qhosvd::add_gaussian_noise(clean, 20.0, 3);
    DenoiseConfig cfg = DenoiseConfig::for_sigma(20.0);
    cfg.iterations = 3; // enough to show the gain at this size
    const RgbImage out = qhosvd::denoise(noisy, cfg);
    const double gain = qhosvd::psnr(out, clean) - qhosvd::psnr(noisy, clean);
    CHECK(gain >= 4.0);
}

TEST_CASE("denoising is deterministic across thread counts") {
    const RgbImage noisy = qhosvd::add_gaussian_noise(smooth_image(32, 32), 15.0, 9);
    DenoiseConfig cfg = DenoiseConfig::for_sigma(15.0);
    cfg.group_size = 12;
    cfg.iterations = 2;
    cfg.search_window = 12;
    cfg.threads = 1;
    const RgbImage serial = qhosvd::denoise(noisy, cfg);
    cfg.threads = 4;
    const RgbImage parallel = qhosvd::denoise(noisy, cfg);
    CHECK(image_diff(serial, parallel) == 0.0);
}
