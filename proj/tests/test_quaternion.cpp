#include <doctest.h>

#include <cmath>

#include "qhosvd/errors.hpp"
#include "qhosvd/qmatrix.hpp"
#include "qhosvd/quaternion.hpp"

#include "support.hpp"

using qhosvd::QMatrix;
using qhosvd::Quaternion;

namespace {

QMatrix single(const Quaternion& q) {
    QMatrix m(1, 1);
    m.set(0, 0, q);
    return m;
}

} // namespace

TEST_CASE("hamilton product basis rules") {
    CHECK(Quaternion::i() * Quaternion::j() == Quaternion::k());
    CHECK(Quaternion::j() * Quaternion::i() == -Quaternion::k());
    CHECK(Quaternion::j() * Quaternion::k() == Quaternion::i());
    CHECK(Quaternion::k() * Quaternion::j() == -Quaternion::i());
    CHECK(Quaternion::k() * Quaternion::i() == Quaternion::j());
    CHECK(Quaternion::i() * Quaternion::k() == -Quaternion::j());
    CHECK(Quaternion::i() * Quaternion::i() == Quaternion::real(-1.0));
    CHECK(Quaternion::j() * Quaternion::j() == Quaternion::real(-1.0));
    CHECK(Quaternion::k() * Quaternion::k() == Quaternion::real(-1.0));

    const Quaternion a = Quaternion::real(1.0) + Quaternion::i();
    const Quaternion b = Quaternion::real(1.0) + Quaternion::j();
    CHECK(a * b == Quaternion{1.0, 1.0, 1.0, 1.0});
}

TEST_CASE("conjugate and modulus") {
    const Quaternion q{1.0, 1.0, 1.0, 1.0};
    CHECK(q.conj() == Quaternion{1.0, -1.0, -1.0, -1.0});
    CHECK(q.modulus() == doctest::Approx(2.0));
    CHECK(Quaternion::i().conj() == -Quaternion::i());
    CHECK(Quaternion::i().modulus() == doctest::Approx(1.0));
    CHECK(Quaternion{}.modulus() == 0.0);
    CHECK(q.conj().conj() == q);
}

TEST_CASE("modulus is multiplicative") {
    testsup::Rng rng(11);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int t = 0; t < 200; ++t) {
        const Quaternion a{dist(rng), dist(rng), dist(rng), dist(rng)};
        const Quaternion b{dist(rng), dist(rng), dist(rng), dist(rng)};
        const double lhs = (a * b).modulus();
        const double rhs = a.modulus() * b.modulus();
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(rhs, 1.0));
        const Quaternion qq = a * a.conj();
        CHECK(std::abs(qq.w - a.modulus_sq()) <= 1e-12 * std::max(a.modulus_sq(), 1.0));
        CHECK(std::abs(qq.x) + std::abs(qq.y) + std::abs(qq.z) <= 1e-14 * std::max(a.modulus_sq(), 1.0));
    }
}

TEST_CASE("1x1 matrix products show non-commutativity") {
    const QMatrix ij = qhosvd::multiply(single(Quaternion::i()), single(Quaternion::j()));
    CHECK(ij.at(0, 0) == Quaternion::k());
    const QMatrix ji = qhosvd::multiply(single(Quaternion::j()), single(Quaternion::i()));
    CHECK(ji.at(0, 0) == -Quaternion::k());
}

TEST_CASE("identity product and shape errors") {
    testsup::Rng rng(12);
    const QMatrix a = testsup::random_qmatrix(2, 2, rng);
    CHECK(qhosvd::difference_norm(qhosvd::multiply(QMatrix::identity(2), a), a) == 0.0);
    const QMatrix b = testsup::random_qmatrix(3, 2, rng);
    CHECK_THROWS_AS(qhosvd::multiply(a, b), qhosvd::ShapeError);
}

TEST_CASE("plane product matches the scalar-loop definition") {
    testsup::Rng rng(13);
    for (int t = 0; t < 20; ++t) {
        const QMatrix a = testsup::random_qmatrix(1 + t % 5, 1 + (t * 3) % 6, rng);
        const QMatrix b = testsup::random_qmatrix(a.cols(), 1 + (t * 7) % 4, rng);
        const QMatrix fast = qhosvd::multiply(a, b);
        const QMatrix slow = qhosvd::multiply_scalar_loop(a, b);
        CHECK(qhosvd::difference_norm(fast, slow) <= 1e-13 * std::max(slow.frobenius_norm(), 1.0));
    }
}

TEST_CASE("conjugate transpose") {
    QMatrix m(1, 2);
    m.set(0, 0, Quaternion::i());
    m.set(0, 1, Quaternion::j());
    const QMatrix h = qhosvd::conjugate_transpose(m);
    CHECK(h.rows() == 2);
    CHECK(h.cols() == 1);
    CHECK(h.at(0, 0) == -Quaternion::i());
    CHECK(h.at(1, 0) == -Quaternion::j());

    testsup::Rng rng(14);
    for (int t = 0; t < 20; ++t) {
        const QMatrix a = testsup::random_qmatrix(3, 3, rng);
        const QMatrix b = testsup::random_qmatrix(3, 3, rng);
        const QMatrix lhs = qhosvd::conjugate_transpose(qhosvd::multiply(a, b));
        const QMatrix rhs =
            qhosvd::multiply(qhosvd::conjugate_transpose(b), qhosvd::conjugate_transpose(a));
        CHECK(qhosvd::difference_norm(lhs, rhs) <= 1e-13 * std::max(rhs.frobenius_norm(), 1.0));
    }
}

TEST_CASE("conjugation and plain transpose do not distribute over products") {
    // A = [[i]], B = [[j]]: conj(AB) != conj(A)conj(B) and (AB)^T != B^T A^T.
    const QMatrix a = single(Quaternion::i());
    const QMatrix b = single(Quaternion::j());
    const Quaternion ab = qhosvd::multiply(a, b).at(0, 0);
    CHECK(ab == Quaternion::k());
    const Quaternion conj_prod = a.at(0, 0).conj() * b.at(0, 0).conj();
    CHECK(ab.conj() != conj_prod);
    const Quaternion bt_at =
        qhosvd::multiply(qhosvd::transpose(b), qhosvd::transpose(a)).at(0, 0);
    CHECK(qhosvd::transpose(qhosvd::multiply(a, b)).at(0, 0) != bt_at);
}

TEST_CASE("norms and inner products") {
    const QMatrix m = single(Quaternion{1.0, 1.0, 1.0, 1.0});
    CHECK(m.frobenius_norm() == doctest::Approx(2.0));
    CHECK(m.l1_norm() == doctest::Approx(2.0));

    const QMatrix unit = single(Quaternion::i());
    const Quaternion self = qhosvd::inner_product(unit, unit);
    CHECK(self == Quaternion::real(1.0));

    QMatrix e1(1, 2), e2(1, 2);
    e1.set(0, 0, Quaternion::real(1.0));
    e2.set(0, 1, Quaternion::real(1.0));
    CHECK(qhosvd::inner_product(e1, e2).is_zero());

    testsup::Rng rng(15);
    const QMatrix a = testsup::random_qmatrix(4, 3, rng);
    const Quaternion aa = qhosvd::inner_product(a, a);
    const double f2 = a.frobenius_norm() * a.frobenius_norm();
    CHECK(std::abs(aa.w - f2) <= 1e-12 * f2);
    CHECK(std::abs(aa.x) + std::abs(aa.y) + std::abs(aa.z) <= 1e-12 * f2);

    CHECK_THROWS_AS(qhosvd::inner_product(a, e1), qhosvd::ShapeError);
}

TEST_CASE("purity predicate") {
    QMatrix m(2, 2);
    m.set(0, 0, Quaternion::i() * 3.0);
    CHECK(m.is_pure());
    m.set(1, 1, Quaternion{1e-6, 0.0, 0.0, 0.0});
    CHECK_FALSE(m.is_pure());
    CHECK(m.is_pure(1e-5));
}
