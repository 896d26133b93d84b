#pragma once

// The stabilizer of the base point: signed 3x3 permutation matrices of
// determinant +1 acting on the first three coordinates (order 24, isomorphic
// to S4), its published two-generator set, and the open cone
// u1 > u2 > u3 > 0 that is a fundamental domain for its chart action.

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "lorentz/chart.hpp"
#include "lorentz/isometry.hpp"

namespace lorentz {

struct StabilizerGroup {
    std::vector<Isometry> elements;  // sorted, 24 entries
    Isometry gen_s;                  // "(12)"
    Isometry gen_r;                  // "(1234)"
};

/// Enumerates the 24 signed permutations directly, then cross-checks that the
/// closure of the two printed generators reproduces the same set.
inline StabilizerGroup build_stabilizer(const Int& n = 7) {
    std::vector<Isometry> elements;
    int perm[3] = {0, 1, 2};
    std::sort(perm, perm + 3);
    do {
        for (int signs = 0; signs < 8; ++signs) {
            Mat4 m;
            for (int i = 0; i < 3; ++i) m.at(i, perm[i]) = (signs >> i) & 1 ? -1 : 1;
            m.at(3, 3) = 1;
            if (det4(m) != 1) continue;
            elements.push_back(Isometry::from_matrix(m, n));
        }
    } while (std::next_permutation(perm, perm + 3));
    std::sort(elements.begin(), elements.end());
    if (elements.size() != 24)
        throw std::logic_error("build_stabilizer: expected 24 elements");

    const Isometry s = Isometry::from_matrix(
        detail::mat4_from_rows({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}}), n);
    const Isometry r = Isometry::from_matrix(
        detail::mat4_from_rows({{0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}}), n);

    // closure of {s, r} under multiplication must give the same 24 elements
    std::set<Isometry> closure{Isometry::identity(n)};
    std::vector<Isometry> frontier{Isometry::identity(n)};
    while (!frontier.empty()) {
        std::vector<Isometry> next;
        for (const Isometry& f : frontier)
            for (const Isometry* g : {&s, &r}) {
                Isometry p = multiply(f, *g);
                if (closure.insert(p).second) next.push_back(std::move(p));
            }
        frontier = std::move(next);
    }
    if (closure.size() != elements.size() ||
        !std::equal(closure.begin(), closure.end(), elements.begin()))
        throw std::logic_error("build_stabilizer: generator closure mismatch");

    return StabilizerGroup{std::move(elements), s, r};
}

/// Open cone u1 > u2 > u3 > 0; boundary points are excluded (wall overlaps
/// are resolved by the closed polytope cut instead).
inline bool cone_contains(const ChartPoint& p) {
    return p.u[0] > p.u[1] && p.u[1] > p.u[2] && p.u[2] > 0;
}

/// The three cone walls as closed half-spaces u1 >= u2 >= u3 >= 0.
inline std::vector<HalfSpace> cone_walls() {
    return {HalfSpace{{-1, 1, 0}, 0}, HalfSpace{{0, -1, 1}, 0}, HalfSpace{{0, 0, -1}, 0}};
}

/// Lexicographically least element of the double coset { s1 * g * s2 }.
/// Idempotent, constant on double cosets, preserves a44.
inline Isometry canonicalize_by_stabilizer(const Isometry& g, const StabilizerGroup& stab) {
    if (g.form_n() != stab.elements.front().form_n())
        throw std::invalid_argument("canonicalize_by_stabilizer: mismatched form");
    const Isometry* best = nullptr;
    Isometry best_val = g;
    for (const Isometry& s1 : stab.elements) {
        const Isometry left = multiply(s1, g);
        for (const Isometry& s2 : stab.elements) {
            Isometry cand = multiply(left, s2);
            if (best == nullptr || cand < best_val) {
                best_val = std::move(cand);
                best = &best_val;
            }
        }
    }
    return best_val;
}

}  // namespace lorentz
