#pragma once

#include <cstddef>
#include <vector>

#include "qhosvd/image.hpp"
#include "qhosvd/qtensor.hpp"

namespace qhosvd {

struct FusionConfig {
    std::size_t patch_rows = 25;
    std::size_t patch_cols = 25;
    std::size_t overlap = 6;       // stride = patch - overlap
    double tie_tolerance = 1e-12;  // relative, for the all-equal L1 clause
    bool allow_single_source = false;
    std::size_t threads = 0; // 0 = resolve from env / hardware

    std::size_t stride() const { return std::min(patch_rows, patch_cols) - overlap; }
    void validate() const;
};

/// Picks the frontal slice of maximal L1 norm (first maximal index on
/// partial ties); when all K slice norms agree within the relative
/// tolerance, returns the entrywise mean of all slices instead.
QMatrix select_coefficients(const QTensor& core, double tie_tolerance);

/// Fuses one aligned patch stack (M1 x M2 x K): partial QHOSVD over modes
/// (2, 1), L1-max coefficient selection, then the plain-transpose
/// reconstruction (U2 (U1 Sf)^T)^T.
QMatrix fuse_group(const QTensor& stack, const FusionConfig& cfg);

/// Full multi-focus fusion pipeline over >= 2 equally-sized sources.
/// Deterministic for fixed inputs and config, independent of thread count.
RgbImage fuse(const std::vector<RgbImage>& sources, const FusionConfig& cfg);

} // namespace qhosvd
