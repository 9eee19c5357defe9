#pragma once

#include <cmath>

namespace qhosvd {

/// A quaternion scalar w + x*i + y*j + z*k with double components.
///
/// Multiplication follows the Hamilton rules i^2 = j^2 = k^2 = ijk = -1,
/// ij = -ji = k, jk = -kj = i, ki = -ik = j, and is therefore
/// non-commutative.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}

    /// Embeds a real scalar.
    static constexpr Quaternion real(double r) { return {r, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }

    double modulus() const { return std::sqrt(w * w + x * x + y * y + z * z); }
    constexpr double modulus_sq() const { return w * w + x * x + y * y + z * z; }

    constexpr bool is_zero() const { return w == 0.0 && x == 0.0 && y == 0.0 && z == 0.0; }

    constexpr Quaternion operator+(const Quaternion& o) const {
        return {w + o.w, x + o.x, y + o.y, z + o.z};
    }
    constexpr Quaternion operator-(const Quaternion& o) const {
        return {w - o.w, x - o.x, y - o.y, z - o.z};
    }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    /// Hamilton product, left-to-right order.
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    /// Scaling by a real commutes with everything.
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }

    constexpr bool operator==(const Quaternion& o) const = default;
};

constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

} // namespace qhosvd
