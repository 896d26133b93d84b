#pragma once

// Projective chart u_i = x_i / x_4 on the upper sheet of Q_n(x) = -1.  The
// sheet maps onto the open ball of radius sqrt(n); in these coordinates the
// perpendicular bisector between the base point (0,0,0,n^{-1/2}) and its
// image under g is the integer-coefficient plane
//
//     a14*u1 + a24*u2 + a34*u3  <=  n*(a44 - 1),
//
// read directly off g's right column.  Distances are compared through
// cosh^2 = n / (n - |u|^2), always as exact rationals.

#include <stdexcept>

#include "lorentz/arith.hpp"
#include "lorentz/isometry.hpp"

namespace lorentz {

struct ChartPoint {
    Vec3R u{Rat(0), Rat(0), Rat(0)};

    friend bool operator==(const ChartPoint& a, const ChartPoint& b) { return a.u == b.u; }
    friend bool operator<(const ChartPoint& a, const ChartPoint& b) { return a.u < b.u; }
};

/// Closed affine half-space { u : normal . u <= rhs } with integer data.
struct HalfSpace {
    Vec3 normal{};
    Int rhs = 0;

    friend bool operator==(const HalfSpace& a, const HalfSpace& b) {
        return a.normal == b.normal && a.rhs == b.rhs;
    }
    friend bool operator<(const HalfSpace& a, const HalfSpace& b) {
        return std::tie(a.normal, a.rhs) < std::tie(b.normal, b.rhs);
    }

    /// Same half-space with coefficients divided by their gcd.  Two
    /// half-spaces describe the same region iff their reduced forms match.
    HalfSpace reduced() const {
        Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(normal[0]), abs(normal[1])),
                                           boost::multiprecision::gcd(abs(normal[2]), abs(rhs)));
        if (g <= 1) return *this;
        return HalfSpace{{normal[0] / g, normal[1] / g, normal[2] / g}, rhs / g};
    }
};

inline Rat dot(const Vec3& h, const Vec3R& u) {
    return Rat(h[0]) * u[0] + Rat(h[1]) * u[1] + Rat(h[2]) * u[2];
}

inline Rat norm_sq(const Vec3R& u) { return u[0] * u[0] + u[1] * u[1] + u[2] * u[2]; }

/// Signed slack rhs - normal . u: positive inside, zero on the boundary.
inline Rat halfspace_margin(const HalfSpace& h, const ChartPoint& p) {
    return Rat(h.rhs) - dot(h.normal, p.u);
}

/// Projective action: lift u to (u, 1), apply g, divide by the fourth
/// coordinate.  Maps the chart ball to itself for g in SO+(Q_n, Z).
inline ChartPoint apply_isometry_chart(const Isometry& g, const ChartPoint& p) {
    const Mat4& m = g.matrix();
    std::array<Rat, 4> x;
    for (int i = 0; i < 4; ++i)
        x[static_cast<size_t>(i)] = Rat(m.at(i, 0)) * p.u[0] + Rat(m.at(i, 1)) * p.u[1] +
                                    Rat(m.at(i, 2)) * p.u[2] + Rat(m.at(i, 3));
    if (x[3] <= 0)
        throw std::domain_error("apply_isometry_chart: image leaves the upper sheet");
    return ChartPoint{{x[0] / x[3], x[1] / x[3], x[2] / x[3]}};
}

/// cosh^2 of the hyperbolic distance from the base point to the point with
/// chart image u:  n / (n - |u|^2).
inline Rat cosh_sq_distance_from_origin(const ChartPoint& p, const Int& n) {
    const Rat d = Rat(n) - norm_sq(p.u);
    if (d <= 0)
        throw std::domain_error("cosh_sq_distance_from_origin: point not inside the chart ball");
    return Rat(n) / d;
}

/// Half-space of chart points at least as close to the base point as to
/// g * (base point).  Requires g to move the base point.
inline HalfSpace bisector_halfspace(const Isometry& g) {
    if (g.fixes_basepoint())
        throw std::invalid_argument("bisector_halfspace: element fixes the base point");
    const Mat4& m = g.matrix();
    return HalfSpace{{m.at(0, 3), m.at(1, 3), m.at(2, 3)},
                     g.form_n() * (m.at(3, 3) - 1)};
}

}  // namespace lorentz
