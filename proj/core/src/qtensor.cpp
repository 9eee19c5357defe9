#include "qhosvd/qtensor.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "qhosvd/errors.hpp"

namespace qhosvd {

namespace {

std::size_t product(const std::vector<std::size_t>& v) {
    std::size_t p = 1;
    for (std::size_t d : v) p *= d;
    return p;
}

void check_mode(std::size_t k, std::size_t order) {
    if (k < 1 || k > order)
        throw ModeError("mode " + std::to_string(k) + " out of range 1.." + std::to_string(order));
}

} // namespace

QTensor::QTensor(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw ShapeError("tensor: empty dims list");
    for (std::size_t d : dims_)
        if (d == 0) throw ShapeError("tensor: zero extent");
    const std::size_t n = product(dims_);
    entries_w_.assign(n, 0.0);
    entries_x_.assign(n, 0.0);
    entries_y_.assign(n, 0.0);
    entries_z_.assign(n, 0.0);
}

std::size_t QTensor::linear_index(const std::vector<std::size_t>& idx) const {
    std::size_t lin = 0, stride = 1;
    for (std::size_t m = 0; m < dims_.size(); ++m) {
        lin += idx[m] * stride;
        stride *= dims_[m];
    }
    return lin;
}

double QTensor::frobenius_norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        s += at_linear(i).modulus_sq();
    return std::sqrt(s);
}

QTensor QTensor::operator-(const QTensor& o) const {
    if (dims_ != o.dims_) throw ShapeError("tensor sub: extents differ");
    QTensor r(dims_);
    for (std::size_t i = 0; i < size(); ++i)
        r.set_linear(i, at_linear(i) - o.at_linear(i));
    return r;
}

QMatrix QTensor::frontal_slice(std::size_t k) const {
    if (order() != 3) throw ShapeError("frontal_slice: tensor order must be 3");
    const std::size_t n1 = dims_[0], n2 = dims_[1];
    QMatrix m(n1, n2);
    const std::size_t base = k * n1 * n2;
    for (std::size_t c = 0; c < n2; ++c)
        for (std::size_t r = 0; r < n1; ++r)
            m.set(r, c, at_linear(base + c * n1 + r));
    return m;
}

void QTensor::set_frontal_slice(std::size_t k, const QMatrix& m) {
    if (order() != 3) throw ShapeError("set_frontal_slice: tensor order must be 3");
    if (m.rows() != dims_[0] || m.cols() != dims_[1])
        throw ShapeError("set_frontal_slice: slice shape mismatch");
    const std::size_t n1 = dims_[0], n2 = dims_[1];
    const std::size_t base = k * n1 * n2;
    for (std::size_t c = 0; c < n2; ++c)
        for (std::size_t r = 0; r < n1; ++r)
            set_linear(base + c * n1 + r, m.at(r, c));
}

QMatrix QTensor::mode_slice(std::size_t mode, std::size_t n) const {
    check_mode(mode, order());
    const std::size_t m0 = mode - 1;
    if (n >= dims_[m0]) throw ShapeError("mode_slice: index out of range");
    QMatrix out(1, size() / dims_[m0]);
    std::size_t col = 0;
    // Walk the full layout, keeping entries whose mode-`mode` index is n.
    std::vector<std::size_t> idx(order(), 0);
    for (std::size_t lin = 0; lin < size(); ++lin) {
        if (idx[m0] == n) out.set(0, col++, at_linear(lin));
        for (std::size_t m = 0; m < order(); ++m) {
            if (++idx[m] < dims_[m]) break;
            idx[m] = 0;
        }
    }
    return out;
}

QTensor QTensor::from_matrix(const QMatrix& m) {
    QTensor t({m.rows(), m.cols()});
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r = 0; r < m.rows(); ++r)
            t.set_linear(c * m.rows() + r, m.at(r, c));
    return t;
}

QMatrix QTensor::to_matrix() const {
    if (order() != 2) throw ShapeError("to_matrix: tensor order must be 2");
    QMatrix m(dims_[0], dims_[1]);
    for (std::size_t c = 0; c < dims_[1]; ++c)
        for (std::size_t r = 0; r < dims_[0]; ++r)
            m.set(r, c, at_linear(c * dims_[0] + r));
    return m;
}

QMatrix unfold(const QTensor& t, std::size_t k) {
    check_mode(k, t.order());
    const auto& dims = t.dims();
    const std::size_t k0 = k - 1;
    const std::size_t nk = dims[k0];
    const std::size_t ncols = t.size() / nk;
    QMatrix m(nk, ncols);
    std::vector<std::size_t> idx(t.order(), 0);
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        // Column index: remaining modes, smallest mode index fastest.
        std::size_t col = 0, stride = 1;
        for (std::size_t mm = 0; mm < t.order(); ++mm) {
            if (mm == k0) continue;
            col += idx[mm] * stride;
            stride *= dims[mm];
        }
        m.set(idx[k0], col, t.at_linear(lin));
        for (std::size_t mm = 0; mm < t.order(); ++mm) {
            if (++idx[mm] < dims[mm]) break;
            idx[mm] = 0;
        }
    }
    return m;
}

QTensor fold(const QMatrix& m, std::size_t k, const std::vector<std::size_t>& dims) {
    check_mode(k, dims.size());
    const std::size_t k0 = k - 1;
    std::size_t others = 1;
    for (std::size_t mm = 0; mm < dims.size(); ++mm)
        if (mm != k0) others *= dims[mm];
    if (m.rows() != dims[k0] || m.cols() != others)
        throw ShapeError("fold: matrix " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         " does not match extents at mode " + std::to_string(k));
    QTensor t(dims);
    std::vector<std::size_t> idx(dims.size(), 0);
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        std::size_t col = 0, stride = 1;
        for (std::size_t mm = 0; mm < dims.size(); ++mm) {
            if (mm == k0) continue;
            col += idx[mm] * stride;
            stride *= dims[mm];
        }
        t.set_linear(lin, m.at(idx[k0], col));
        for (std::size_t mm = 0; mm < dims.size(); ++mm) {
            if (++idx[mm] < dims[mm]) break;
            idx[mm] = 0;
        }
    }
    return t;
}

QTensor mode_product(const QTensor& t, std::size_t k, const QMatrix& u) {
    check_mode(k, t.order());
    if (u.cols() != t.dims()[k - 1])
        throw ShapeError("mode product: factor cols " + std::to_string(u.cols()) +
                         " vs extent " + std::to_string(t.dims()[k - 1]) +
                         " at mode " + std::to_string(k));
    const QMatrix unfolded = unfold(t, k);
    const QMatrix prod = multiply(u, unfolded);
    std::vector<std::size_t> out_dims = t.dims();
    out_dims[k - 1] = u.rows();
    return fold(prod, k, out_dims);
}

QMatrix kronecker(const QMatrix& a, const QMatrix& b) {
    QMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const Quaternion s = a.at(ia, ja);
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    r.set(ia * b.rows() + ib, ja * b.cols() + jb, s * b.at(ib, jb));
        }
    return r;
}

} // namespace qhosvd
