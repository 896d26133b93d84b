#pragma once

// Deliberately naive reference implementations used as differential-test
// oracles.  Nothing here shares search logic with the fast enumeration: the
// vector search is a plain box scan, membership evaluates the defining
// equation directly, and the assembly tries every ordered triple.  Slow and
// single-threaded on purpose; reachable from the CLI via --self-check.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "lorentz/arith.hpp"
#include "lorentz/isometry.hpp"

namespace lorentz {
namespace oracle {

/// Box scan for Q_n(v) = 1 with n*v4^2 <= T^2: |v1|,|v2|,|v3| run to
/// isqrt(T^2 + 1), v4 over the exact admissible range.
inline std::vector<Vec4> naive_unit_vectors(const Int& n, const Int& T) {
    if (T < 1) throw std::invalid_argument("naive_unit_vectors: T must be >= 1");
    std::vector<Vec4> out;
    const Int b = isqrt(T * T + 1);
    Int b4 = 0;
    while (n * (b4 + 1) * (b4 + 1) <= T * T) ++b4;
    for (Int v1 = -b; v1 <= b; ++v1)
        for (Int v2 = -b; v2 <= b; ++v2)
            for (Int v3 = -b; v3 <= b; ++v3)
                for (Int v4 = -b4; v4 <= b4; ++v4)
                    if (v1 * v1 + v2 * v2 + v3 * v3 - n * v4 * v4 == 1)
                        out.push_back({v1, v2, v3, v4});
    std::sort(out.begin(), out.end());
    return out;
}

/// Direct evaluation of the membership conditions: A^t Q A = Q, a44 > 0,
/// det = +1 by cofactor expansion.
inline bool naive_membership(const Mat4& m, const Int& n) {
    Mat4 q;
    q.at(0, 0) = 1;
    q.at(1, 1) = 1;
    q.at(2, 2) = 1;
    q.at(3, 3) = -n;
    const Mat4 lhs = m.transposed() * q * m;
    if (lhs != q) return false;
    if (m.at(3, 3) <= 0) return false;
    return det4(m) == 1;
}

/// Slow independent assembly: every ordered triple of box-scan vectors
/// against every right column found by box scan, no pair graph.  Guarded to
/// T <= 8 (cubic blowup).
inline std::vector<Isometry> exhaustive_small_assembly(const Int& n, const Int& T) {
    if (T < 1) throw std::invalid_argument("exhaustive_small_assembly: T must be >= 1");
    if (T > 8) throw std::invalid_argument("exhaustive_small_assembly: T > 8 refused");
    const std::vector<Vec4> units = naive_unit_vectors(n, T);

    std::vector<Vec4> columns;
    const Int ba = isqrt(n * (T * T - 1)) / n;  // entries are multiples of n
    for (Int m = 1; m <= T; ++m)
        for (Int a1 = -ba; a1 <= ba; ++a1)
            for (Int a2 = -ba; a2 <= ba; ++a2)
                for (Int a3 = -ba; a3 <= ba; ++a3)
                    if (n * n * (a1 * a1 + a2 * a2 + a3 * a3) - n * m * m == -n)
                        columns.push_back({n * a1, n * a2, n * a3, m});

    auto dot = [&n](const Vec4& v, const Vec4& w) {
        return v[0] * w[0] + v[1] * w[1] + v[2] * w[2] - n * v[3] * w[3];
    };
    std::vector<Isometry> out;
    for (const Vec4& col : columns)
        for (const Vec4& u : units) {
            if (dot(u, col) != 0) continue;
            for (const Vec4& v : units) {
                if (dot(v, col) != 0 || dot(u, v) != 0) continue;
                for (const Vec4& w : units) {
                    if (dot(w, col) != 0 || dot(u, w) != 0 || dot(v, w) != 0) continue;
                    Mat4 m;
                    for (int r = 0; r < 4; ++r) {
                        auto ru = static_cast<size_t>(r);
                        m.at(r, 0) = u[ru];
                        m.at(r, 1) = v[ru];
                        m.at(r, 2) = w[ru];
                        m.at(r, 3) = col[ru];
                    }
                    if (det4(m) != 1) continue;
                    if (!naive_membership(m, n)) continue;
                    out.push_back(Isometry::from_matrix(m, n));
                }
            }
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace oracle
}  // namespace lorentz
