#pragma once

#include <cstddef>
#include <vector>

#include "qhosvd/quaternion.hpp"

namespace qhosvd {

/// Dense quaternion matrix.
///
/// Storage is four parallel real planes (w, x, y, z), each row-major, so the
/// quaternion matrix product can run as 16 real plane products combined by
/// the Hamilton sign table. Quaternion entries are assembled at the access
/// boundary.
class QMatrix {
public:
    QMatrix() = default;

    /// rows x cols zero matrix.
    QMatrix(std::size_t rows, std::size_t cols);

    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return rows_ * cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Quaternion at(std::size_t r, std::size_t c) const {
        const std::size_t idx = r * cols_ + c;
        return {w_[idx], x_[idx], y_[idx], z_[idx]};
    }
    void set(std::size_t r, std::size_t c, const Quaternion& q) {
        const std::size_t idx = r * cols_ + c;
        w_[idx] = q.w; x_[idx] = q.x; y_[idx] = q.y; z_[idx] = q.z;
    }

    /// Linear (row-major) entry access.
    Quaternion at_linear(std::size_t idx) const { return {w_[idx], x_[idx], y_[idx], z_[idx]}; }
    void set_linear(std::size_t idx, const Quaternion& q) {
        w_[idx] = q.w; x_[idx] = q.x; y_[idx] = q.y; z_[idx] = q.z;
    }

    std::vector<double>& plane_w() { return w_; }
    std::vector<double>& plane_x() { return x_; }
    std::vector<double>& plane_y() { return y_; }
    std::vector<double>& plane_z() { return z_; }
    const std::vector<double>& plane_w() const { return w_; }
    const std::vector<double>& plane_x() const { return x_; }
    const std::vector<double>& plane_y() const { return y_; }
    const std::vector<double>& plane_z() const { return z_; }

    /// True iff every entry has zero real part.
    bool is_pure(double tol = 0.0) const;

    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix operator*(double s) const;

    /// Entry-wise right scaling by a quaternion scalar: a_ij * q.
    QMatrix scaled_right(const Quaternion& q) const;

    double frobenius_norm() const;
    double l1_norm() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> w_, x_, y_, z_;
};

/// C[m,n] = sum_p A[m,p] * B[p,n], quaternion products in that order.
/// Throws ShapeError on inner-dimension mismatch.
QMatrix multiply(const QMatrix& a, const QMatrix& b);

/// Definitional scalar-loop product; validation reference for multiply().
QMatrix multiply_scalar_loop(const QMatrix& a, const QMatrix& b);

/// result[n,m] = conj(A[m,n]).
QMatrix conjugate_transpose(const QMatrix& a);

/// Plain transpose, no conjugation.
QMatrix transpose(const QMatrix& a);

/// <A,B> = sum_mn a_mn * conj(b_mn). Throws ShapeError on shape mismatch.
Quaternion inner_product(const QMatrix& a, const QMatrix& b);

/// ||A - B||_F without materializing the difference.
double difference_norm(const QMatrix& a, const QMatrix& b);

} // namespace qhosvd
