#include "qhosvd/qmatrix.hpp"

#include <cmath>
#include <string>

#include "qhosvd/errors.hpp"

namespace qhosvd {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

} // namespace

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols),
      w_(rows * cols, 0.0), x_(rows * cols, 0.0),
      y_(rows * cols, 0.0), z_(rows * cols, 0.0) {}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.w_[i * n + i] = 1.0;
    return m;
}

bool QMatrix::is_pure(double tol) const {
    for (double v : w_)
        if (std::abs(v) > tol) return false;
    return true;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw ShapeError("matrix add: " + shape_str(rows_, cols_) + " vs " + shape_str(o.rows_, o.cols_));
    QMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < w_.size(); ++i) {
        r.w_[i] = w_[i] + o.w_[i];
        r.x_[i] = x_[i] + o.x_[i];
        r.y_[i] = y_[i] + o.y_[i];
        r.z_[i] = z_[i] + o.z_[i];
    }
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw ShapeError("matrix sub: " + shape_str(rows_, cols_) + " vs " + shape_str(o.rows_, o.cols_));
    QMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < w_.size(); ++i) {
        r.w_[i] = w_[i] - o.w_[i];
        r.x_[i] = x_[i] - o.x_[i];
        r.y_[i] = y_[i] - o.y_[i];
        r.z_[i] = z_[i] - o.z_[i];
    }
    return r;
}

QMatrix QMatrix::operator*(double s) const {
    QMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < w_.size(); ++i) {
        r.w_[i] = w_[i] * s;
        r.x_[i] = x_[i] * s;
        r.y_[i] = y_[i] * s;
        r.z_[i] = z_[i] * s;
    }
    return r;
}

QMatrix QMatrix::scaled_right(const Quaternion& q) const {
    QMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < w_.size(); ++i)
        r.set_linear(i, at_linear(i) * q);
    return r;
}

double QMatrix::frobenius_norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i)
        s += w_[i] * w_[i] + x_[i] * x_[i] + y_[i] * y_[i] + z_[i] * z_[i];
    return std::sqrt(s);
}

double QMatrix::l1_norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i)
        s += std::sqrt(w_[i] * w_[i] + x_[i] * x_[i] + y_[i] * y_[i] + z_[i] * z_[i]);
    return s;
}

namespace {

// C += sign * A * B on raw row-major planes.
void gemm_acc(const double* a, const double* b, double* c,
              std::size_t m, std::size_t k, std::size_t n, double sign) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const double av = sign * arow[p];
            if (av == 0.0) continue;
            const double* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

} // namespace

QMatrix multiply(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matrix multiply: " + shape_str(a.rows(), a.cols()) +
                         " * " + shape_str(b.rows(), b.cols()));
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    QMatrix c(m, n);
    const double* aw = a.plane_w().data();
    const double* ax = a.plane_x().data();
    const double* ay = a.plane_y().data();
    const double* az = a.plane_z().data();
    const double* bw = b.plane_w().data();
    const double* bx = b.plane_x().data();
    const double* by = b.plane_y().data();
    const double* bz = b.plane_z().data();
    // Hamilton sign table over the four planes.
    gemm_acc(aw, bw, c.plane_w().data(), m, k, n, +1.0);
    gemm_acc(ax, bx, c.plane_w().data(), m, k, n, -1.0);
    gemm_acc(ay, by, c.plane_w().data(), m, k, n, -1.0);
    gemm_acc(az, bz, c.plane_w().data(), m, k, n, -1.0);

    gemm_acc(aw, bx, c.plane_x().data(), m, k, n, +1.0);
    gemm_acc(ax, bw, c.plane_x().data(), m, k, n, +1.0);
    gemm_acc(ay, bz, c.plane_x().data(), m, k, n, +1.0);
    gemm_acc(az, by, c.plane_x().data(), m, k, n, -1.0);

    gemm_acc(aw, by, c.plane_y().data(), m, k, n, +1.0);
    gemm_acc(ax, bz, c.plane_y().data(), m, k, n, -1.0);
    gemm_acc(ay, bw, c.plane_y().data(), m, k, n, +1.0);
    gemm_acc(az, bx, c.plane_y().data(), m, k, n, +1.0);

    gemm_acc(aw, bz, c.plane_z().data(), m, k, n, +1.0);
    gemm_acc(ax, by, c.plane_z().data(), m, k, n, +1.0);
    gemm_acc(ay, bx, c.plane_z().data(), m, k, n, -1.0);
    gemm_acc(az, bw, c.plane_z().data(), m, k, n, +1.0);
    return c;
}

QMatrix multiply_scalar_loop(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matrix multiply: " + shape_str(a.rows(), a.cols()) +
                         " * " + shape_str(b.rows(), b.cols()));
    QMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Quaternion s;
            for (std::size_t p = 0; p < a.cols(); ++p)
                s += a.at(i, p) * b.at(p, j);
            c.set(i, j, s);
        }
    return c;
}

QMatrix conjugate_transpose(const QMatrix& a) {
    QMatrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r.set(j, i, a.at(i, j).conj());
    return r;
}

QMatrix transpose(const QMatrix& a) {
    QMatrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r.set(j, i, a.at(i, j));
    return r;
}

Quaternion inner_product(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("inner product: " + shape_str(a.rows(), a.cols()) +
                         " vs " + shape_str(b.rows(), b.cols()));
    Quaternion s;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a.at_linear(i) * b.at_linear(i).conj();
    return s;
}

double difference_norm(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("difference norm: " + shape_str(a.rows(), a.cols()) +
                         " vs " + shape_str(b.rows(), b.cols()));
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Quaternion d = a.at_linear(i) - b.at_linear(i);
        s += d.modulus_sq();
    }
    return std::sqrt(s);
}

} // namespace qhosvd
