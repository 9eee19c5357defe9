#pragma once

#include <complex>
#include <vector>

#include "qhosvd/qmatrix.hpp"

namespace qhosvd {

/// Q = U * Sigma * V^H with unitary quaternion U (MxM), V (NxN) and real
/// nonnegative singular values sorted descending.
struct QsvdResult {
    QMatrix u;
    std::vector<double> singular_values; // length min(M, N)
    QMatrix v;
};

/// Full quaternion SVD.
///
/// Structure-preserving reduction: quaternion Householder reflectors plus
/// unit-quaternion phase scalings bring Q to a real nonnegative upper
/// bidiagonal matrix; an implicit-shift QR iteration on the real bidiagonal
/// finishes. Throws ConvergenceError if the off-bidiagonal residual does
/// not fall below machine-epsilon scale within 30*min(M,N) sweeps, and
/// ShapeError for an empty input.
QsvdResult qsvd(const QMatrix& q);

/// Same decomposition but only U and the singular values are accumulated;
/// result.v is left empty. Cheaper when only left singular vectors matter
/// (every stage of the QHOSVD procedure).
QsvdResult qsvd_left(const QMatrix& q);

/// Dense complex matrix, row-major. Test-oracle plumbing for the
/// quaternion-to-complex isomorphism.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::complex<double>> data;

    std::complex<double>& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const std::complex<double>& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Writing Q = A + B*j with complex A = Q0 + Q1*i and B = Q2 + Q3*i,
/// returns the 2Mx2N block matrix [[A, B], [-conj(B), conj(A)]].
/// The map is additive and multiplicative.
ComplexMatrix complex_adjoint(const QMatrix& q);

} // namespace qhosvd
