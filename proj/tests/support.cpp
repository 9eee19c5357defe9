#include "support.hpp"

#include <algorithm>
#include <stdexcept>

#include <lapacke.h>

#include "qhosvd/qsvd.hpp"

namespace testsup {

using qhosvd::QMatrix;
using qhosvd::Quaternion;
using qhosvd::QTensor;

QMatrix random_qmatrix(std::size_t rows, std::size_t cols, Rng& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    QMatrix m(rows, cols);
    for (std::size_t idx = 0; idx < rows * cols; ++idx)
        m.set_linear(idx, {dist(rng), dist(rng), dist(rng), dist(rng)});
    return m;
}

QTensor random_qtensor(const std::vector<std::size_t>& dims, Rng& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    QTensor t(dims);
    for (std::size_t idx = 0; idx < t.size(); ++idx)
        t.set_linear(idx, {dist(rng), dist(rng), dist(rng), dist(rng)});
    return t;
}

double unitarity_residual(const QMatrix& u) {
    const QMatrix g = qhosvd::multiply(qhosvd::conjugate_transpose(u), u);
    return qhosvd::difference_norm(g, QMatrix::identity(u.cols()));
}

double reconstruction_residual(const QMatrix& q, const QMatrix& u, const std::vector<double>& s,
                               const QMatrix& v) {
    QMatrix sig(u.cols(), v.cols());
    for (std::size_t i = 0; i < s.size(); ++i) sig.set(i, i, Quaternion::real(s[i]));
    const QMatrix rec = qhosvd::multiply(qhosvd::multiply(u, sig), qhosvd::conjugate_transpose(v));
    return qhosvd::difference_norm(q, rec) / std::max(q.frobenius_norm(), 1.0);
}

std::vector<double> adjoint_singular_values(const QMatrix& q) {
    qhosvd::ComplexMatrix adj = qhosvd::complex_adjoint(q);
    const lapack_int m = static_cast<lapack_int>(adj.rows);
    const lapack_int n = static_cast<lapack_int>(adj.cols);
    std::vector<double> s(static_cast<std::size_t>(std::min(m, n)));
    std::vector<double> superb(s.size());
    // std::complex<double> and the C complex type share their layout.
    auto* a = reinterpret_cast<lapack_complex_double*>(adj.data.data());
    const lapack_int info = LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'N', 'N', m, n, a, n, s.data(),
                                           nullptr, 1, nullptr, 1, superb.data());
    if (info != 0) throw std::runtime_error("zgesvd failed");
    return s;
}

void real_svd(const std::vector<double>& a, std::size_t m, std::size_t n, std::vector<double>& u,
              std::vector<double>& s, std::vector<double>& vt) {
    std::vector<double> work = a;
    u.assign(m * m, 0.0);
    vt.assign(n * n, 0.0);
    s.assign(std::min(m, n), 0.0);
    std::vector<double> superb(s.size());
    const lapack_int info = LAPACKE_dgesvd(
        LAPACK_ROW_MAJOR, 'A', 'A', static_cast<lapack_int>(m), static_cast<lapack_int>(n),
        work.data(), static_cast<lapack_int>(n), s.data(), u.data(), static_cast<lapack_int>(m),
        vt.data(), static_cast<lapack_int>(n), superb.data());
    if (info != 0) throw std::runtime_error("dgesvd failed");
}

} // namespace testsup
