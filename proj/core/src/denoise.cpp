#include "qhosvd/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qhosvd/errors.hpp"
#include "qhosvd/parallel.hpp"
#include "qhosvd/qhosvd.hpp"

namespace qhosvd {

namespace {

// Schedule rows keyed by sigma.
constexpr double kSigmaKeys[] = {10.0, 20.0, 30.0, 50.0};
constexpr double kPatch[] = {6.0, 6.0, 7.0, 8.0};
constexpr double kGroup[] = {70.0, 70.0, 90.0, 120.0};
constexpr double kIters[] = {8.0, 8.0, 14.0, 20.0};
constexpr double kEta[] = {0.70, 0.55, 0.45, 0.35};

double interp_row(double sigma, const double* values) {
    if (sigma <= kSigmaKeys[0]) return values[0];
    if (sigma >= kSigmaKeys[3]) return values[3];
    for (int i = 0; i < 3; ++i) {
        if (sigma <= kSigmaKeys[i + 1]) {
            const double t = (sigma - kSigmaKeys[i]) / (kSigmaKeys[i + 1] - kSigmaKeys[i]);
            return values[i] + t * (values[i + 1] - values[i]);
        }
    }
    return values[3];
}

} // namespace

DenoiseConfig DenoiseConfig::for_sigma(double sigma) {
    if (sigma < 0.0) throw ParameterError("denoise: negative sigma");
    DenoiseConfig cfg;
    cfg.sigma = sigma;
    cfg.patch_size = static_cast<std::size_t>(std::lround(interp_row(sigma, kPatch)));
    cfg.group_size = static_cast<std::size_t>(std::lround(interp_row(sigma, kGroup)));
    cfg.iterations = static_cast<std::size_t>(std::lround(interp_row(sigma, kIters)));
    cfg.eta = interp_row(sigma, kEta);
    return cfg;
}

double DenoiseConfig::threshold() const {
    const double n = static_cast<double>(patch_size * patch_size * group_size);
    return eta * sigma * std::sqrt(2.0 * std::log(n));
}

void DenoiseConfig::validate(std::size_t image_h, std::size_t image_w) const {
    if (sigma < 0.0) throw ParameterError("denoise: negative sigma");
    if (group_size < 1) throw ParameterError("denoise: group size K must be >= 1");
    if (iterations < 1) throw ParameterError("denoise: iteration count must be >= 1");
    if (!(relaxation > 0.0 && relaxation < 1.0))
        throw ParameterError("denoise: relaxation delta must lie in (0, 1)");
    if (eta <= 0.0) throw ParameterError("denoise: eta must be positive");
    if (ref_stride == 0) throw ParameterError("denoise: zero reference stride");
    if (patch_size > search_window)
        throw ParameterError("denoise: patch size exceeds the search window");
    if (patch_size > image_h || patch_size > image_w)
        throw ShapeError("denoise: image " + std::to_string(image_h) + "x" +
                         std::to_string(image_w) + " smaller than patch " +
                         std::to_string(patch_size));
}

SimilarGroup block_match(const QMatrix& q, std::pair<std::size_t, std::size_t> ref_anchor,
                         const DenoiseConfig& cfg) {
    const std::size_t w = cfg.patch_size;
    const auto [ref_r, ref_c] = ref_anchor;
    if (ref_r + w > q.rows() || ref_c + w > q.cols())
        throw ShapeError("block_match: reference patch outside canvas");

    const std::size_t half = cfg.search_window / 2;
    const std::size_t lo_r = ref_r > half ? ref_r - half : 0;
    const std::size_t lo_c = ref_c > half ? ref_c - half : 0;
    const std::size_t hi_r = std::min(q.rows() - w, ref_r + half);
    const std::size_t hi_c = std::min(q.cols() - w, ref_c + half);

    auto patch_distance_sq = [&](std::size_t r, std::size_t c) {
        double s = 0.0;
        for (std::size_t i = 0; i < w; ++i)
            for (std::size_t j = 0; j < w; ++j) {
                const Quaternion d = q.at(ref_r + i, ref_c + j) - q.at(r + i, c + j);
                s += d.modulus_sq();
            }
        return s;
    };

    struct Candidate {
        double dist;
        std::size_t r, c;
    };
    std::vector<Candidate> cands;
    cands.reserve((hi_r - lo_r + 1) * (hi_c - lo_c + 1));
    for (std::size_t r = lo_r; r <= hi_r; ++r)
        for (std::size_t c = lo_c; c <= hi_c; ++c) {
            if (r == ref_r && c == ref_c) continue; // reference handled separately
            cands.push_back({patch_distance_sq(r, c), r, c});
        }
    auto by_dist_then_order = [](const Candidate& a, const Candidate& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.r != b.r) return a.r < b.r;
        return a.c < b.c;
    };
    std::sort(cands.begin(), cands.end(), by_dist_then_order);

    SimilarGroup group;
    group.member_anchors.reserve(cfg.group_size);
    group.member_anchors.emplace_back(ref_r, ref_c);
    for (std::size_t i = 0; i < cands.size() && group.member_anchors.size() < cfg.group_size; ++i)
        group.member_anchors.emplace_back(cands[i].r, cands[i].c);
    // Fewer candidates than K: repeat the nearest ones.
    if (group.member_anchors.size() < cfg.group_size) {
        group.padded = true;
        std::size_t src = cands.empty() ? 0 : 1; // index into member_anchors to recycle
        while (group.member_anchors.size() < cfg.group_size) {
            group.member_anchors.push_back(group.member_anchors[src % group.member_anchors.size()]);
            ++src;
        }
    }

    group.tensor = QTensor({w, w, cfg.group_size});
    for (std::size_t k = 0; k < cfg.group_size; ++k) {
        const auto [r, c] = group.member_anchors[k];
        QMatrix slice(w, w);
        for (std::size_t i = 0; i < w; ++i)
            for (std::size_t j = 0; j < w; ++j)
                slice.set(i, j, q.at(r + i, c + j));
        group.tensor.set_frontal_slice(k, slice);
    }
    return group;
}

std::vector<QMatrix> denoise_group(const SimilarGroup& group, const DenoiseConfig& cfg) {
    QhosvdFactors f = qhosvd(group.tensor, {3, 2, 1});
    f.core = hard_threshold_core(f.core, cfg.threshold());
    const QTensor restored = reconstruct(f);
    std::vector<QMatrix> slices;
    slices.reserve(cfg.group_size);
    for (std::size_t k = 0; k < cfg.group_size; ++k)
        slices.push_back(restored.frontal_slice(k));
    return slices;
}

RgbImage denoise(const RgbImage& noisy, const DenoiseConfig& cfg) {
    cfg.validate(noisy.height, noisy.width);

    const QMatrix y0 = encode_rgb(noisy);
    QMatrix estimate = y0; // X hat
    const auto refs = patch_anchors(noisy.height, noisy.width, cfg.patch_size, cfg.patch_size,
                                    cfg.ref_stride);
    const std::size_t threads = resolve_threads(cfg.threads);

    for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
        const QMatrix regularized = estimate + (y0 - estimate) * cfg.relaxation;

        std::vector<std::vector<QMatrix>> patches(refs.size());
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> anchors(refs.size());
        parallel_for(refs.size(), threads, [&](std::size_t j) {
            const SimilarGroup group = block_match(regularized, refs[j], cfg);
            patches[j] = denoise_group(group, cfg);
            anchors[j] = group.member_anchors;
        });

        // Sequential aggregation in reference order keeps the result
        // independent of the worker count.
        PatchGrid grid;
        grid.patch_rows = cfg.patch_size;
        grid.patch_cols = cfg.patch_size;
        grid.canvas_rows = noisy.height;
        grid.canvas_cols = noisy.width;
        for (std::size_t j = 0; j < refs.size(); ++j) {
            for (std::size_t k = 0; k < patches[j].size(); ++k) {
                grid.positions.push_back(anchors[j][k]);
                grid.patches.push_back(std::move(patches[j][k]));
            }
        }
        estimate = aggregate_patches(grid);
    }
    return decode(estimate);
}

} // namespace qhosvd
