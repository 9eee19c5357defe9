#pragma once

#include <cstddef>
#include <vector>

#include "qhosvd/qmatrix.hpp"

namespace qhosvd {

/// Dense quaternion tensor of arbitrary order.
///
/// Linear layout: the first index varies fastest, then the second, and so
/// on. A matrix is the order-2 specialization and converts losslessly.
/// Mode indices in the public API are 1-based.
class QTensor {
public:
    QTensor() = default;

    /// Zero tensor with the given extents. Throws ShapeError on an empty
    /// dims list or a zero extent.
    explicit QTensor(std::vector<std::size_t> dims);

    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t order() const { return dims_.size(); }
    std::size_t size() const { return entries_w_.size(); }

    /// Entry at a zero-based multi-index.
    Quaternion at(const std::vector<std::size_t>& idx) const { return at_linear(linear_index(idx)); }
    void set(const std::vector<std::size_t>& idx, const Quaternion& q) { set_linear(linear_index(idx), q); }

    Quaternion at_linear(std::size_t i) const {
        return {entries_w_[i], entries_x_[i], entries_y_[i], entries_z_[i]};
    }
    void set_linear(std::size_t i, const Quaternion& q) {
        entries_w_[i] = q.w; entries_x_[i] = q.x; entries_y_[i] = q.y; entries_z_[i] = q.z;
    }

    std::size_t linear_index(const std::vector<std::size_t>& idx) const;

    double frobenius_norm() const;

    QTensor operator-(const QTensor& o) const;

    /// Order-3 convenience: frontal slice at third index k (zero-based),
    /// returned as a dims[0] x dims[1] matrix.
    QMatrix frontal_slice(std::size_t k) const;
    void set_frontal_slice(std::size_t k, const QMatrix& m);

    /// Sub-tensor obtained by fixing 1-based mode `mode` at zero-based
    /// index n, flattened into a 1 x (size/N_mode) matrix in layout order.
    /// Used for slice norms and slice inner products.
    QMatrix mode_slice(std::size_t mode, std::size_t n) const;

    static QTensor from_matrix(const QMatrix& m);
    QMatrix to_matrix() const; // requires order() == 2

private:
    std::vector<std::size_t> dims_;
    std::vector<double> entries_w_, entries_x_, entries_y_, entries_z_;
};

/// Mode-k unfolding: N_k x (prod of remaining extents); among the column
/// enumeration the smallest remaining mode index varies fastest.
/// Throws ModeError when k is outside 1..order.
QMatrix unfold(const QTensor& t, std::size_t k);

/// Inverse of unfold. Throws ShapeError when m's shape does not match
/// dims at mode k.
QTensor fold(const QMatrix& m, std::size_t k, const std::vector<std::size_t>& dims);

/// k-mode product with the factor strictly on the left of each entry:
/// unfold(result, k) = U * unfold(t, k).
QTensor mode_product(const QTensor& t, std::size_t k, const QMatrix& u);

/// Block Kronecker product: block (i,j) is a_ij left-multiplying B.
QMatrix kronecker(const QMatrix& a, const QMatrix& b);

} // namespace qhosvd
