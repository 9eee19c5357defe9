#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qhosvd/qmatrix.hpp"
#include "qhosvd/qtensor.hpp"

namespace testsup {

using Rng = std::mt19937_64;

qhosvd::QMatrix random_qmatrix(std::size_t rows, std::size_t cols, Rng& rng);
qhosvd::QTensor random_qtensor(const std::vector<std::size_t>& dims, Rng& rng);

/// ||U^H U - I||_F.
double unitarity_residual(const qhosvd::QMatrix& u);

/// ||Q - U diag(s) V^H||_F / max(||Q||_F, 1).
double reconstruction_residual(const qhosvd::QMatrix& q, const qhosvd::QMatrix& u,
                               const std::vector<double>& s, const qhosvd::QMatrix& v);

/// Singular values of the 2Mx2N complex adjoint of q, descending
/// (length 2*min(M,N)), computed with an independent complex SVD.
std::vector<double> adjoint_singular_values(const qhosvd::QMatrix& q);

/// Real matrix SVD: fills u (MxM), s (min), vt (NxN) from the row-major
/// MxN input. Independent real kernel for oracle pipelines.
void real_svd(const std::vector<double>& a, std::size_t m, std::size_t n,
              std::vector<double>& u, std::vector<double>& s, std::vector<double>& vt);

} // namespace testsup
