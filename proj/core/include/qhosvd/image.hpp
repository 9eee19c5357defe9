#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qhosvd/qmatrix.hpp"

namespace qhosvd {

/// 8-bit RGB image held as three real planes in [0, 255]. Values stay
/// real-valued through processing; quantization happens only at file write.
struct RgbImage {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<double> r, g, b; // row-major, height * width each

    RgbImage() = default;
    RgbImage(std::size_t h, std::size_t w)
        : height(h), width(w),
          r(h * w, 0.0), g(h * w, 0.0), b(h * w, 0.0) {}

    std::size_t size() const { return height * width; }
};

/// Pixel (m,n) -> R*i + G*j + B*k; the result is a pure quaternion matrix.
QMatrix encode_rgb(const RgbImage& img);

/// Channels read back from the i, j, k coefficients; any real part is
/// discarded and values are clamped to [0, 255].
RgbImage decode(const QMatrix& q);

/// Patch contents with their canvas positions, for extract/aggregate
/// round trips. Anchors cover every canvas pixel at least once.
struct PatchGrid {
    std::size_t patch_rows = 0;
    std::size_t patch_cols = 0;
    std::size_t canvas_rows = 0;
    std::size_t canvas_cols = 0;
    std::vector<std::pair<std::size_t, std::size_t>> positions; // (top, left)
    std::vector<QMatrix> patches;
};

/// Sliding-window extraction: anchors at multiples of the stride, plus
/// clamped final row/column anchors so the last patches touch the borders.
/// Deterministic row-major anchor order. Throws ShapeError when the patch
/// exceeds the canvas.
PatchGrid extract_patches(const QMatrix& q, std::size_t patch_rows, std::size_t patch_cols,
                          std::size_t stride);

/// Anchor positions only (same policy as extract_patches).
std::vector<std::pair<std::size_t, std::size_t>> patch_anchors(
    std::size_t canvas_rows, std::size_t canvas_cols,
    std::size_t patch_rows, std::size_t patch_cols, std::size_t stride);

/// Overlap-averaged reassembly: every canvas entry is the sum of patch
/// contributions divided by its coverage count. Throws IntegrityError if
/// any pixel is uncovered.
QMatrix aggregate_patches(const PatchGrid& grid);

// File I/O. PNG (8-bit RGB; alpha rejected) and binary PPM (P6).

/// Loads by sniffing the file signature. Throws IoError on failure.
RgbImage load_image(const std::string& path);

/// Format chosen by extension: ".ppm" writes P6, anything else PNG.
/// Values are rounded and clamped to 8 bits here.
void save_image(const RgbImage& img, const std::string& path);

} // namespace qhosvd
