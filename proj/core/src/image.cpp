#include "qhosvd/image.hpp"

#include <algorithm>
#include <string>

#include "qhosvd/errors.hpp"

namespace qhosvd {

QMatrix encode_rgb(const RgbImage& img) {
    QMatrix q(img.height, img.width);
    for (std::size_t i = 0; i < img.size(); ++i)
        q.set_linear(i, {0.0, img.r[i], img.g[i], img.b[i]});
    return q;
}

RgbImage decode(const QMatrix& q) {
    RgbImage img(q.rows(), q.cols());
    auto clamp255 = [](double v) { return std::clamp(v, 0.0, 255.0); };
    for (std::size_t i = 0; i < img.size(); ++i) {
        const Quaternion e = q.at_linear(i);
        img.r[i] = clamp255(e.x);
        img.g[i] = clamp255(e.y);
        img.b[i] = clamp255(e.z);
    }
    return img;
}

namespace {

std::vector<std::size_t> axis_anchors(std::size_t canvas, std::size_t patch, std::size_t stride) {
    std::vector<std::size_t> anchors;
    for (std::size_t a = 0; a + patch <= canvas; a += stride) anchors.push_back(a);
    const std::size_t last = canvas - patch;
    if (anchors.empty() || anchors.back() != last) anchors.push_back(last);
    return anchors;
}

} // namespace

std::vector<std::pair<std::size_t, std::size_t>> patch_anchors(
    std::size_t canvas_rows, std::size_t canvas_cols,
    std::size_t patch_rows, std::size_t patch_cols, std::size_t stride) {
    if (patch_rows > canvas_rows || patch_cols > canvas_cols)
        throw ShapeError("extract: patch " + std::to_string(patch_rows) + "x" +
                         std::to_string(patch_cols) + " exceeds canvas " +
                         std::to_string(canvas_rows) + "x" + std::to_string(canvas_cols));
    if (stride == 0) throw ParameterError("extract: zero stride");
    const auto row_anchors = axis_anchors(canvas_rows, patch_rows, stride);
    const auto col_anchors = axis_anchors(canvas_cols, patch_cols, stride);
    std::vector<std::pair<std::size_t, std::size_t>> anchors;
    anchors.reserve(row_anchors.size() * col_anchors.size());
    for (std::size_t rt : row_anchors)
        for (std::size_t ct : col_anchors)
            anchors.emplace_back(rt, ct);
    return anchors;
}

PatchGrid extract_patches(const QMatrix& q, std::size_t patch_rows, std::size_t patch_cols,
                          std::size_t stride) {
    PatchGrid grid;
    grid.patch_rows = patch_rows;
    grid.patch_cols = patch_cols;
    grid.canvas_rows = q.rows();
    grid.canvas_cols = q.cols();
    grid.positions = patch_anchors(q.rows(), q.cols(), patch_rows, patch_cols, stride);
    grid.patches.reserve(grid.positions.size());
    for (const auto& [top, left] : grid.positions) {
        QMatrix p(patch_rows, patch_cols);
        for (std::size_t r = 0; r < patch_rows; ++r)
            for (std::size_t c = 0; c < patch_cols; ++c)
                p.set(r, c, q.at(top + r, left + c));
        grid.patches.push_back(std::move(p));
    }
    return grid;
}

QMatrix aggregate_patches(const PatchGrid& grid) {
    QMatrix sum(grid.canvas_rows, grid.canvas_cols);
    std::vector<unsigned> count(grid.canvas_rows * grid.canvas_cols, 0);
    if (grid.positions.size() != grid.patches.size())
        throw IntegrityError("aggregate: anchor/patch count mismatch");
    for (std::size_t p = 0; p < grid.patches.size(); ++p) {
        const auto& [top, left] = grid.positions[p];
        const QMatrix& patch = grid.patches[p];
        if (patch.rows() != grid.patch_rows || patch.cols() != grid.patch_cols)
            throw ShapeError("aggregate: patch " + std::to_string(p) + " has wrong extents");
        if (top + grid.patch_rows > grid.canvas_rows || left + grid.patch_cols > grid.canvas_cols)
            throw IntegrityError("aggregate: anchor outside canvas");
        for (std::size_t r = 0; r < grid.patch_rows; ++r)
            for (std::size_t c = 0; c < grid.patch_cols; ++c) {
                const std::size_t idx = (top + r) * grid.canvas_cols + (left + c);
                sum.set_linear(idx, sum.at_linear(idx) + patch.at(r, c));
                ++count[idx];
            }
    }
    for (std::size_t i = 0; i < count.size(); ++i) {
        if (count[i] == 0)
            throw IntegrityError("aggregate: uncovered pixel at linear index " + std::to_string(i));
        sum.set_linear(i, sum.at_linear(i) * (1.0 / count[i]));
    }
    return sum;
}

} // namespace qhosvd
