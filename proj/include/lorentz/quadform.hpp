#pragma once

// The family of diagonal quadratic forms  Q_n(x) = x1^2 + x2^2 + x3^2 - n*x4^2
// of signature (3,1), together with the mod-8 anisotropy certificate that
// guarantees a compact quotient for n = 7 (mod 8).

#include <optional>
#include <stdexcept>

#include "lorentz/arith.hpp"

namespace lorentz {

class Form {
public:
    explicit Form(Int n) : n_(std::move(n)) {
        if (n_ < 1) throw std::invalid_argument("Form: n must be >= 1");
    }

    const Int& n() const { return n_; }

    /// Gram matrix diag(1, 1, 1, -n).
    Mat4 gram() const {
        Mat4 g;
        g.at(0, 0) = 1;
        g.at(1, 1) = 1;
        g.at(2, 2) = 1;
        g.at(3, 3) = -n_;
        return g;
    }

private:
    Int n_;
};

/// Q_n(v) = v1^2 + v2^2 + v3^2 - n*v4^2.  May be negative.
inline Int pseudolength(const Form& f, const Vec4& v) {
    return v[0] * v[0] + v[1] * v[1] + v[2] * v[2] - f.n() * v[3] * v[3];
}

/// Polarization of Q_n: bilinear(v, v) == pseudolength(v).
inline Int bilinear(const Form& f, const Vec4& v, const Vec4& w) {
    return v[0] * w[0] + v[1] * w[1] + v[2] * w[2] - f.n() * v[3] * w[3];
}

/// True certifies that Q_n(x) = 0 has no nonzero integral solution (squares
/// are 0, 1, 4 mod 8, and x^2+y^2+z^2+w^2 = 0 mod 8 forces all even).
/// False means "not certified by this test", not "isotropic".
inline bool anisotropy_certificate_mod8(const Int& n) {
    return n >= 1 && n % 8 == 7;
}

/// Search the box |v_i| <= bound for a nonzero v with Q_n(v) = 0.  Complete
/// within the box: returns a witness or nullopt if none exists there.
/// Iterates v4 outermost; v4 = 0 forces v = 0, so only v4 >= 1 is scanned,
/// and the first three coordinates solve v1^2+v2^2+v3^2 = n*v4^2.
inline std::optional<Vec4> isotropy_witness_search(const Int& n, const Int& bound) {
    if (n < 1) throw std::invalid_argument("isotropy_witness_search: n must be >= 1");
    if (bound < 1) throw std::invalid_argument("isotropy_witness_search: bound must be >= 1");
    for (Int v4 = 1; v4 <= bound; ++v4) {
        const Int target = n * v4 * v4;
        Int b1 = isqrt(target);
        if (b1 > bound) b1 = bound;
        for (Int v1 = b1; v1 >= 0; --v1) {
            const Int r1 = target - v1 * v1;
            Int b2 = isqrt(r1);
            if (b2 > bound) b2 = bound;
            for (Int v2 = b2; v2 >= 0; --v2) {
                Int v3;
                if (is_perfect_square(r1 - v2 * v2, v3) && v3 <= bound)
                    return Vec4{v1, v2, v3, v4};
            }
        }
    }
    return std::nullopt;
}

}  // namespace lorentz
