#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <iosfwd>

#include "sfcalc/errors.hpp"

namespace sfcalc {

using cd = std::complex<double>;

/// Componentwise tolerance used by approx_equal when none is given.
/// Chosen above quadrature noise of the contour integrals downstream.
inline constexpr double kDefaultEqTol = 1e-12;

/// Element of the quaternion algebra H with respect to the fixed basis
/// 1, I, J, K where K = IJ and I^2 = J^2 = K^2 = -1.
struct Quaternion {
    double w = 0.0; ///< real part
    double x = 0.0; ///< I component
    double y = 0.0; ///< J component
    double z = 0.0; ///< K component

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}
    /// Real number embedded into H.
    constexpr explicit Quaternion(double real) : w(real) {}

    [[nodiscard]] constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    [[nodiscard]] constexpr double re() const { return w; }
    [[nodiscard]] constexpr Quaternion vec() const { return {0.0, x, y, z}; }
    [[nodiscard]] constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
    [[nodiscard]] double norm() const { return std::sqrt(norm_sq()); }
    [[nodiscard]] double vec_norm() const { return std::sqrt(x * x + y * y + z * z); }

    constexpr Quaternion& operator+=(const Quaternion& r) {
        w += r.w; x += r.x; y += r.y; z += r.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& r) {
        w -= r.w; x -= r.x; y -= r.y; z -= r.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        w *= s; x *= s; y *= s; z *= s;
        return *this;
    }

    static constexpr Quaternion zero() { return {}; }
    static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
};

static_assert(sizeof(Quaternion) == 4 * sizeof(double));

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

/// Hamilton product for the basis convention IJ = K, JI = -K.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quaternion inverse(const Quaternion& q) {
    const double n2 = q.norm_sq();
    if (n2 <= 0.0)
        throw SingularityError("inverse of zero quaternion", 0.0, 0.0);
    return q.conj() * (1.0 / n2);
}

inline Quaternion operator/(const Quaternion& a, const Quaternion& b) { return a * inverse(b); }

inline bool approx_equal(const Quaternion& a, const Quaternion& b, double tol = kDefaultEqTol) {
    return std::abs(a.w - b.w) <= tol && std::abs(a.x - b.x) <= tol &&
           std::abs(a.y - b.y) <= tol && std::abs(a.z - b.z) <= tol;
}

/// Purely imaginary quaternion of modulus one, stored as coordinates
/// (a, b, c) with respect to I, J, K.  Squares to -1 as a Quaternion.
struct ImaginaryUnit {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;

    constexpr ImaginaryUnit() = default;
    ImaginaryUnit(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
        const double n = std::sqrt(a * a + b * b + c * c);
        if (!(n > 0.0))
            throw DomainError("imaginary unit must have a nonzero direction");
        a /= n; b /= n; c /= n;
    }

    [[nodiscard]] constexpr Quaternion q() const { return {0.0, a, b, c}; }

    static constexpr ImaginaryUnit i() { return {}; }
    static ImaginaryUnit j() { return {0.0, 1.0, 0.0}; }
    static ImaginaryUnit k() { return {0.0, 0.0, 1.0}; }
};

/// The sphere [x] = { s0 + I s1 : I imaginary unit }, a point when s1 = 0.
struct Sphere {
    double s0 = 0.0; ///< real part
    double s1 = 0.0; ///< imaginary magnitude, >= 0

    constexpr Sphere() = default;
    constexpr Sphere(double s0_, double s1_) : s0(s0_), s1(s1_) {}

    [[nodiscard]] constexpr bool is_real() const { return s1 == 0.0; }
};

/// Euclidean distance between spheres as points of the closed half plane.
inline double sphere_dist(const Sphere& a, const Sphere& b) {
    return std::hypot(a.s0 - b.s0, a.s1 - b.s1);
}

/// The sphere [x] of a quaternion: (Re x, |vector part|).
inline Sphere sphere_of(const Quaternion& q) { return {q.w, q.vec_norm()}; }

/// The imaginary unit I_x of a quaternion.  For (numerically) real x the
/// global unit I is returned by convention; sphere-level semantics live in
/// Sphere instead.
inline ImaginaryUnit axis_of(const Quaternion& q, double tol = 0.0) {
    const double vn = q.vec_norm();
    if (vn <= tol || vn == 0.0)
        return ImaginaryUnit::i();
    return {q.x / vn, q.y / vn, q.z / vn};
}

/// Embeds the sphere point into the complex plane C_u: s0 + u s1.
inline Quaternion slice_embed(const Sphere& s, const ImaginaryUnit& u) {
    return Quaternion{s.s0} + u.q() * s.s1;
}

/// Embeds a complex number z into C_u.
inline Quaternion embed_complex(cd z, const ImaginaryUnit& u) {
    return Quaternion{z.real()} + u.q() * z.imag();
}

/// Coordinates of q with respect to the plane C_u, ignoring any component
/// orthogonal to the plane.  Use in_plane() to test membership first.
inline cd plane_coords(const Quaternion& q, const ImaginaryUnit& u) {
    return {q.w, q.x * u.a + q.y * u.b + q.z * u.c};
}

/// Distance from q to the plane C_u.
inline double plane_residual(const Quaternion& q, const ImaginaryUnit& u) {
    const Quaternion p = embed_complex(plane_coords(q, u), u);
    return (q - p).norm();
}

inline bool in_plane(const Quaternion& q, const ImaginaryUnit& u, double tol = kDefaultEqTol) {
    return plane_residual(q, u) <= tol;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);
std::ostream& operator<<(std::ostream& os, const Sphere& s);

} // namespace sfcalc
