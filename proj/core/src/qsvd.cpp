#include "qhosvd/qsvd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qhosvd/errors.hpp"

namespace qhosvd {

namespace {

// ---------------------------------------------------------------------------
// Real Givens machinery for the bidiagonal QR iteration. Rotations are real
// and commute with quaternion entries, so they apply to quaternion factor
// columns plane by plane.
// ---------------------------------------------------------------------------

void create_givens(double a, double b, double* c, double* s) {
    if (b == 0.0) {
        *c = 1.0;
        *s = 0.0;
    } else if (std::fabs(b) > std::fabs(a)) {
        double t = -a / b;
        double s1 = 1.0 / std::sqrt(1.0 + t * t);
        *s = s1;
        *c = s1 * t;
    } else {
        double t = -b / a;
        double c1 = 1.0 / std::sqrt(1.0 + t * t);
        *c = c1;
        *s = c1 * t;
    }
}

// Right-rotation of quaternion matrix columns p, q: (a, b) <- (c*a - s*b, s*a + c*b).
void rotate_columns(QMatrix* m, std::size_t p, std::size_t q, double c, double s) {
    if (m == nullptr || m->empty()) return;
    for (std::size_t i = 0; i < m->rows(); ++i) {
        const Quaternion a = m->at(i, p);
        const Quaternion b = m->at(i, q);
        m->set(i, p, a * c - b * s);
        m->set(i, q, a * s + b * c);
    }
}

void swap_columns(QMatrix* m, std::size_t p, std::size_t q) {
    if (m == nullptr || m->empty()) return;
    for (std::size_t i = 0; i < m->rows(); ++i) {
        const Quaternion a = m->at(i, p);
        m->set(i, p, m->at(i, q));
        m->set(i, q, a);
    }
}

void negate_column(QMatrix* m, std::size_t p) {
    if (m == nullptr || m->empty()) return;
    for (std::size_t i = 0; i < m->rows(); ++i)
        m->set(i, p, -m->at(i, p));
}

void chop_small_elements(std::vector<double>& d, std::vector<double>& f) {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::fabs(f[i]) <
            std::numeric_limits<double>::epsilon() * (std::fabs(d[i]) + std::fabs(d[i + 1])))
            f[i] = 0.0;
    }
}

// Wilkinson-style shift from the trailing 2x2 of B^T B.
double trailing_eigenvalue(const double* d, const double* f, std::size_t n) {
    const double da = d[n - 2];
    const double db = d[n - 1];
    const double fa = (n > 2) ? f[n - 3] : 0.0;
    const double fb = f[n - 2];
    const double ta = da * da + fa * fa;
    const double tb = db * db + fb * fb;
    const double tab = da * fb;
    const double dt = (ta - tb) / 2.0;
    if (dt >= 0.0)
        return tb - (tab * tab) / (dt + std::hypot(dt, tab));
    return tb + (tab * tab) / (-dt + std::hypot(dt, tab));
}

void create_schur(double d0, double f0, double d1, double* c, double* s) {
    const double apq = 2.0 * d0 * f0;
    if (apq != 0.0) {
        double t;
        const double tau = (f0 * f0 + (d1 + d0) * (d1 - d0)) / apq;
        if (tau >= 0.0)
            t = 1.0 / (tau + std::hypot(1.0, tau));
        else
            t = -1.0 / (-tau + std::hypot(1.0, tau));
        *c = 1.0 / std::hypot(1.0, t);
        *s = t * (*c);
    } else {
        *c = 1.0;
        *s = 0.0;
    }
}

// Direct 2x2 SVD on the block starting at column offset `off`.
void svd2(double* d, double* f, QMatrix* u, QMatrix* v, std::size_t off) {
    double c, s;
    const double d0 = d[0];
    const double d1 = d[1];
    const double f0 = f[0];

    if (d0 == 0.0) {
        create_givens(f0, d1, &c, &s);
        d[0] = c * f0 - s * d1;
        f[0] = s * f0 + c * d1;
        d[1] = 0.0;
        rotate_columns(u, off, off + 1, c, s);
        swap_columns(v, off, off + 1);
        return;
    }
    if (d1 == 0.0) {
        create_givens(d0, f0, &c, &s);
        d[0] = d0 * c - f0 * s;
        f[0] = 0.0;
        rotate_columns(v, off, off + 1, c, s);
        return;
    }
    create_schur(d0, f0, d1, &c, &s);
    double a11 = c * d0 - s * f0;
    double a21 = -s * d1;
    double a12 = s * d0 + c * f0;
    double a22 = c * d1;
    rotate_columns(v, off, off + 1, c, s);
    if (std::hypot(a11, a21) < std::hypot(a12, a22)) {
        std::swap(a11, a12);
        std::swap(a21, a22);
        swap_columns(v, off, off + 1);
    }
    create_givens(a11, a21, &c, &s);
    d[0] = c * a11 - s * a21;
    d[1] = s * a12 + c * a22;
    f[0] = c * a12 - s * a22;
    rotate_columns(u, off, off + 1, c, s);
}

void chase_out_intermediate_zero(double* d, double* f, QMatrix* u,
                                 std::size_t n, std::size_t k0, std::size_t off) {
    double x = f[k0];
    double y = d[k0 + 1];
    for (std::size_t k = k0; k + 1 < n; ++k) {
        double c, s;
        create_givens(y, -x, &c, &s);
        rotate_columns(u, off + k0, off + k + 1, c, s);
        d[k + 1] = s * x + c * y;
        if (k == k0) f[k] = c * x - s * y;
        if (k + 2 < n) {
            const double z = f[k + 1];
            f[k + 1] = c * z;
            x = -s * z;
            y = d[k + 2];
        }
    }
}

void chase_out_trailing_zero(double* d, double* f, QMatrix* v,
                             std::size_t n, std::size_t off) {
    double x = d[n - 2];
    double y = f[n - 2];
    for (std::size_t k = n - 1; k-- > 0;) {
        double c, s;
        create_givens(x, y, &c, &s);
        rotate_columns(v, off + k, off + n - 1, c, s);
        d[k] = c * x - s * y;
        if (k == n - 2) f[k] = s * x + c * y;
        if (k > 0) {
            const double z = f[k - 1];
            f[k - 1] = c * z;
            x = d[k - 1];
            y = s * z;
        }
    }
}

// One implicit-shift QR step on the unreduced block d[0..n), f[0..n-1),
// rotating the corresponding factor columns at offset `off`.
void qrstep(double* d, double* f, QMatrix* u, QMatrix* v, std::size_t n, std::size_t off) {
    if (n == 1) return;
    if (n == 2) {
        svd2(d, f, u, v, off);
        return;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            chase_out_intermediate_zero(d, f, u, n, i, off);
            return;
        }
    }
    if (d[n - 1] == 0.0) {
        chase_out_trailing_zero(d, f, v, n, off);
        return;
    }

    double y, z;
    double ak = 0.0, bk = 0.0, zk = 0.0;
    double ap = d[0], bp = f[0];
    double aq = d[1], bq = f[1];
    (void)bq;
    {
        const double mu = trailing_eigenvalue(d, f, n);
        y = d[0] * d[0] - mu;
        z = d[0] * f[0];
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double c, s;
        create_givens(y, z, &c, &s);
        rotate_columns(v, off + k, off + k + 1, c, s);
        {
            const double bk1 = c * bk - s * z;
            const double ap1 = c * ap - s * bp;
            const double bp1 = s * ap + c * bp;
            const double zp1 = -s * aq;
            const double aq1 = c * aq;
            if (k > 0) f[k - 1] = bk1;
            ak = ap1;
            bk = bp1;
            zk = zp1;
            ap = aq1;
            bp = (k + 2 < n) ? f[k + 1] : 0.0;
            y = ak;
            z = zk;
        }
        create_givens(y, z, &c, &s);
        rotate_columns(u, off + k, off + k + 1, c, s);
        {
            const double ak1 = c * ak - s * zk;
            const double bk1 = c * bk - s * ap;
            const double zk1 = -s * bp;
            const double ap1 = s * bk + c * ap;
            const double bp1 = c * bp;
            d[k] = ak1;
            ak = ak1;
            bk = bk1;
            zk = zk1;
            ap = ap1;
            bp = bp1;
            aq = (k + 2 < n) ? d[k + 2] : 0.0;
            y = bk;
            z = zk;
        }
    }
    f[n - 2] = bk;
    d[n - 1] = ap;
}

// ---------------------------------------------------------------------------
// Quaternion Householder bidiagonalization, M >= N.
// ---------------------------------------------------------------------------

Quaternion unit_phase(const Quaternion& q) {
    const double m = q.modulus();
    if (m == 0.0) return Quaternion::real(1.0);
    return q * (1.0 / m);
}

struct Bidiagonal {
    std::vector<double> d; // diagonal, length N
    std::vector<double> f; // superdiagonal, length N (last entry unused)
};

// Reduces a to real nonnegative upper bidiagonal in place; accumulates the
// left factor into *u (u <- u * L^H) and the right factor into *v (v <- v * R)
// when the pointers are non-null.
Bidiagonal bidiagonalize(QMatrix& a, QMatrix* u, QMatrix* v) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Bidiagonal bd;
    bd.d.assign(n, 0.0);
    bd.f.assign(n, 0.0);
    std::vector<Quaternion> hv;

    for (std::size_t k = 0; k < n; ++k) {
        // Left reflector: zero column k below the diagonal, diagonal real >= 0.
        {
            const std::size_t len = m - k;
            double norm_sq = 0.0;
            for (std::size_t p = 0; p < len; ++p) norm_sq += a.at(k + p, k).modulus_sq();
            const double norm = std::sqrt(norm_sq);
            if (norm > 0.0) {
                const Quaternion x1 = a.at(k, k);
                const double ax1 = x1.modulus();
                const Quaternion zeta = unit_phase(x1);
                hv.assign(len, Quaternion{});
                hv[0] = x1 + zeta * norm;
                for (std::size_t p = 1; p < len; ++p) hv[p] = a.at(k + p, k);
                const double beta = 1.0 / (norm_sq + norm * ax1);
                // A <- H A on columns k+1..N-1 (column k is set explicitly).
                for (std::size_t j = k + 1; j < n; ++j) {
                    Quaternion t;
                    for (std::size_t p = 0; p < len; ++p)
                        t += hv[p].conj() * a.at(k + p, j);
                    t = t * beta;
                    for (std::size_t p = 0; p < len; ++p)
                        a.set(k + p, j, a.at(k + p, j) - hv[p] * t);
                }
                if (u != nullptr) {
                    for (std::size_t i = 0; i < m; ++i) {
                        Quaternion t;
                        for (std::size_t p = 0; p < len; ++p)
                            t += u->at(i, k + p) * hv[p];
                        t = t * beta;
                        for (std::size_t p = 0; p < len; ++p)
                            u->set(i, k + p, u->at(i, k + p) - t * hv[p].conj());
                    }
                }
                // Phase scaling makes the diagonal entry real nonnegative.
                const Quaternion phi = -zeta.conj();
                for (std::size_t j = k + 1; j < n; ++j)
                    a.set(k, j, phi * a.at(k, j));
                if (u != nullptr) {
                    const Quaternion phic = phi.conj();
                    for (std::size_t i = 0; i < m; ++i)
                        u->set(i, k, u->at(i, k) * phic);
                }
                a.set(k, k, Quaternion::real(norm));
                for (std::size_t p = 1; p < len; ++p) a.set(k + p, k, Quaternion{});
            }
            bd.d[k] = a.at(k, k).w;
        }

        // Right reflector: zero row k beyond the superdiagonal, superdiagonal
        // real >= 0. Works on the conjugated row segment.
        if (k + 1 < n) {
            const std::size_t len = n - k - 1;
            double norm_sq = 0.0;
            for (std::size_t p = 0; p < len; ++p) norm_sq += a.at(k, k + 1 + p).modulus_sq();
            const double norm = std::sqrt(norm_sq);
            if (norm > 0.0) {
                const Quaternion y1 = a.at(k, k + 1).conj();
                const double ay1 = y1.modulus();
                const Quaternion zeta = unit_phase(y1);
                hv.assign(len, Quaternion{});
                hv[0] = y1 + zeta * norm;
                for (std::size_t p = 1; p < len; ++p) hv[p] = a.at(k, k + 1 + p).conj();
                const double beta = 1.0 / (norm_sq + norm * ay1);
                for (std::size_t i = k + 1; i < m; ++i) {
                    Quaternion t;
                    for (std::size_t p = 0; p < len; ++p)
                        t += a.at(i, k + 1 + p) * hv[p];
                    t = t * beta;
                    for (std::size_t p = 0; p < len; ++p)
                        a.set(i, k + 1 + p, a.at(i, k + 1 + p) - t * hv[p].conj());
                }
                if (v != nullptr) {
                    for (std::size_t i = 0; i < n; ++i) {
                        Quaternion t;
                        for (std::size_t p = 0; p < len; ++p)
                            t += v->at(i, k + 1 + p) * hv[p];
                        t = t * beta;
                        for (std::size_t p = 0; p < len; ++p)
                            v->set(i, k + 1 + p, v->at(i, k + 1 + p) - t * hv[p].conj());
                    }
                }
                const Quaternion phi = -zeta;
                for (std::size_t i = k + 1; i < m; ++i)
                    a.set(i, k + 1, a.at(i, k + 1) * phi);
                if (v != nullptr) {
                    for (std::size_t i = 0; i < n; ++i)
                        v->set(i, k + 1, v->at(i, k + 1) * phi);
                }
                a.set(k, k + 1, Quaternion::real(norm));
                for (std::size_t p = 1; p < len; ++p) a.set(k, k + 1 + p, Quaternion{});
            }
            bd.f[k] = a.at(k, k + 1).w;
        }
    }
    return bd;
}

QsvdResult qsvd_tall(const QMatrix& q, bool want_u, bool want_v) {
    const std::size_t m = q.rows();
    const std::size_t n = q.cols();

    QMatrix work = q;
    QMatrix u = want_u ? QMatrix::identity(m) : QMatrix();
    QMatrix v = want_v ? QMatrix::identity(n) : QMatrix();
    QMatrix* up = want_u ? &u : nullptr;
    QMatrix* vp = want_v ? &v : nullptr;

    Bidiagonal bd = bidiagonalize(work, up, vp);
    std::vector<double>& d = bd.d;
    std::vector<double>& f = bd.f;

    chop_small_elements(d, f);

    const std::size_t max_sweeps = 30 * n;
    std::size_t sweeps = 0;
    std::size_t b = n - 1;
    while (b > 0) {
        if (f[b - 1] == 0.0 || std::isnan(f[b - 1])) {
            --b;
            continue;
        }
        std::size_t a0 = b - 1;
        while (a0 > 0 && f[a0 - 1] != 0.0) --a0;
        if (++sweeps > max_sweeps) {
            double residual = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i)
                residual = std::max(residual, std::fabs(f[i]));
            throw ConvergenceError(
                "qsvd: bidiagonal QR did not converge within " +
                    std::to_string(max_sweeps) + " sweeps (off-bidiagonal residual " +
                    std::to_string(residual) + ")",
                residual);
        }
        qrstep(d.data() + a0, f.data() + a0, up, vp, b - a0 + 1, a0);
        chop_small_elements(d, f);
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] < 0.0) {
            d[i] = -d[i];
            if (want_v)
                negate_column(vp, i);
            else if (want_u)
                negate_column(up, i);
        }
    }

    // Sort descending; permute the matched factor columns.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&d](std::size_t a, std::size_t c) { return d[a] > d[c]; });
    QsvdResult res;
    res.singular_values.resize(n);
    if (want_u) {
        res.u = QMatrix(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t jj = n; jj < m; ++jj)
                res.u.set(i, jj, u.at(i, jj));
    }
    if (want_v) res.v = QMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        res.singular_values[j] = d[order[j]];
        if (want_u)
            for (std::size_t i = 0; i < m; ++i) res.u.set(i, j, u.at(i, order[j]));
        if (want_v)
            for (std::size_t i = 0; i < n; ++i) res.v.set(i, j, v.at(i, order[j]));
    }
    return res;
}

QsvdResult qsvd_impl(const QMatrix& q, bool want_u, bool want_v) {
    if (q.empty()) throw ShapeError("qsvd: empty matrix");
    if (q.rows() >= q.cols()) return qsvd_tall(q, want_u, want_v);
    // Wide case through the conjugate transpose: Q^H = U' S V'^H implies
    // Q = V' S U'^H.
    QsvdResult t = qsvd_tall(conjugate_transpose(q), want_v, want_u);
    QsvdResult res;
    res.singular_values = std::move(t.singular_values);
    res.u = std::move(t.v);
    res.v = std::move(t.u);
    return res;
}

} // namespace

QsvdResult qsvd(const QMatrix& q) { return qsvd_impl(q, true, true); }

QsvdResult qsvd_left(const QMatrix& q) { return qsvd_impl(q, true, false); }

ComplexMatrix complex_adjoint(const QMatrix& q) {
    const std::size_t m = q.rows();
    const std::size_t n = q.cols();
    ComplexMatrix out;
    out.rows = 2 * m;
    out.cols = 2 * n;
    out.data.assign(out.rows * out.cols, {0.0, 0.0});
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const Quaternion e = q.at(r, c);
            const std::complex<double> a(e.w, e.x);
            const std::complex<double> b(e.y, e.z);
            out.at(r, c) = a;
            out.at(r, c + n) = b;
            out.at(r + m, c) = -std::conj(b);
            out.at(r + m, c + n) = std::conj(a);
        }
    return out;
}

} // namespace qhosvd
