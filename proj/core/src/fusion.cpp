#include "qhosvd/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qhosvd/errors.hpp"
#include "qhosvd/parallel.hpp"
#include "qhosvd/qhosvd.hpp"

namespace qhosvd {

void FusionConfig::validate() const {
    if (patch_rows == 0 || patch_cols == 0)
        throw ParameterError("fusion: zero patch extent");
    if (overlap >= std::min(patch_rows, patch_cols))
        throw ParameterError("fusion: overlap " + std::to_string(overlap) +
                             " must be smaller than the patch side");
    if (tie_tolerance < 0.0) throw ParameterError("fusion: negative tie tolerance");
}

QMatrix select_coefficients(const QTensor& core, double tie_tolerance) {
    if (core.order() != 3) throw ShapeError("select_coefficients: core must be order 3");
    const std::size_t k_count = core.dims()[2];
    std::vector<double> l1(k_count);
    for (std::size_t k = 0; k < k_count; ++k) l1[k] = core.frontal_slice(k).l1_norm();

    const double max_l1 = *std::max_element(l1.begin(), l1.end());
    const double min_l1 = *std::min_element(l1.begin(), l1.end());
    const bool all_equal = (max_l1 - min_l1) <= tie_tolerance * std::max(max_l1, 1e-300);
    if (all_equal && k_count > 1) {
        QMatrix mean = core.frontal_slice(0);
        for (std::size_t k = 1; k < k_count; ++k) mean = mean + core.frontal_slice(k);
        return mean * (1.0 / static_cast<double>(k_count));
    }
    const std::size_t xi =
        static_cast<std::size_t>(std::max_element(l1.begin(), l1.end()) - l1.begin());
    return core.frontal_slice(xi);
}

QMatrix fuse_group(const QTensor& stack, const FusionConfig& cfg) {
    if (stack.order() != 3) throw ShapeError("fuse_group: stack must be order 3");
    const QhosvdFactors f = qhosvd(stack, {2, 1});
    const QMatrix& u2 = f.factors[0];
    const QMatrix& u1 = f.factors[1];
    const QMatrix selected = select_coefficients(f.core, cfg.tie_tolerance);
    // Plain transposes here, not conjugate ones.
    return transpose(multiply(u2, transpose(multiply(u1, selected))));
}

RgbImage fuse(const std::vector<RgbImage>& sources, const FusionConfig& cfg) {
    cfg.validate();
    if (sources.empty() || (sources.size() < 2 && !cfg.allow_single_source))
        throw ParameterError("fusion: at least 2 sources required (" +
                             std::to_string(sources.size()) + " given)");
    const std::size_t h = sources.front().height;
    const std::size_t w = sources.front().width;
    for (const RgbImage& s : sources)
        if (s.height != h || s.width != w)
            throw ShapeError("fusion: source extents differ (" + std::to_string(s.height) + "x" +
                             std::to_string(s.width) + " vs " + std::to_string(h) + "x" +
                             std::to_string(w) + ")");

    std::vector<PatchGrid> grids;
    grids.reserve(sources.size());
    for (const RgbImage& s : sources)
        grids.push_back(extract_patches(encode_rgb(s), cfg.patch_rows, cfg.patch_cols, cfg.stride()));

    PatchGrid fused = grids.front(); // same anchors and extents
    const std::size_t k_count = sources.size();
    const std::size_t anchors = fused.positions.size();
    parallel_for(anchors, resolve_threads(cfg.threads), [&](std::size_t d) {
        QTensor stack({cfg.patch_rows, cfg.patch_cols, k_count});
        for (std::size_t k = 0; k < k_count; ++k)
            stack.set_frontal_slice(k, grids[k].patches[d]);
        fused.patches[d] = fuse_group(stack, cfg);
    });
    return decode(aggregate_patches(fused));
}

} // namespace qhosvd
