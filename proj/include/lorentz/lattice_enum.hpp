#pragma once

// Bounded enumeration of SO+(Q_n, Z): every element with a44 <= T is produced
// by listing candidate columns and assembling orthogonal triples.
//
//   step 1: pseudolength-1 vectors with n*v4^2 <= T^2 (candidate columns 1-3);
//   step 2: right columns (n*a, n*b, n*c, m) of pseudolength -n with
//           1 <= m <= T and m^2 = 1 (mod n);
//   step 3: per right column, vectors orthogonal to it form a compatibility
//           graph (edges = orthogonal pairs); triangles give the column
//           triples, and the det = +1 filter keeps proper isometries.
//
// Step 3's triangle enumeration over the filtered set is the hot loop.

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

#include "lorentz/arith.hpp"
#include "lorentz/isometry.hpp"
#include "lorentz/quadform.hpp"

namespace lorentz {

struct UnitVectorList {
    Int bound_T;
    std::vector<Vec4> vectors;  // sorted, duplicate-free, complete in bound
};

struct RightColumn {
    Vec4 column;  // (n*a, n*b, n*c, m), pseudolength -n, m >= 1, m^2 = 1 (mod n)
};

namespace detail {

/// All ordered signed triples (v1, v2, v3) with v1^2 + v2^2 + v3^2 = s,
/// by two nested loops with the third coordinate resolved exactly.
inline std::vector<Vec3> three_square_representations(const Int& s) {
    std::vector<Vec3> out;
    if (s < 0) return out;
    const Int b1 = isqrt(s);
    for (Int v1 = -b1; v1 <= b1; ++v1) {
        const Int r1 = s - v1 * v1;
        const Int b2 = isqrt(r1);
        for (Int v2 = -b2; v2 <= b2; ++v2) {
            Int v3;
            if (!is_perfect_square(r1 - v2 * v2, v3)) continue;
            out.push_back({v1, v2, v3});
            if (v3 != 0) out.push_back({v1, v2, -v3});
        }
    }
    return out;
}

}  // namespace detail

/// Exactly the v with Q_n(v) = 1 and n*v4^2 <= T^2 (the exact form of
/// |v4| <= T/sqrt(n)).
inline UnitVectorList enumerate_unit_vectors(const Int& n, const Int& T) {
    Form f(n);
    if (T < 1) throw std::invalid_argument("enumerate_unit_vectors: T must be >= 1");
    std::vector<Vec4> vectors;
    for (Int v4 = 0; n * v4 * v4 <= T * T; ++v4) {
        const auto reps = detail::three_square_representations(1 + n * v4 * v4);
        for (const Vec3& r : reps) {
            vectors.push_back({r[0], r[1], r[2], v4});
            if (v4 != 0) vectors.push_back({r[0], r[1], r[2], -v4});
        }
    }
    std::sort(vectors.begin(), vectors.end());
    return UnitVectorList{T, std::move(vectors)};
}

/// Right columns (n*a, n*b, n*c, m) solving a^2 + b^2 + c^2 = (m^2 - 1)/n for
/// 1 <= m <= T with m^2 = 1 (mod n).  For composite n the residue condition
/// admits more classes than m = +-1 (mod n).
inline std::vector<RightColumn> enumerate_right_columns(const Int& n, const Int& T) {
    if (T < 1) throw std::invalid_argument("enumerate_right_columns: T must be >= 1");
    std::vector<RightColumn> out;
    for (Int m = 1; m <= T; ++m) {
        if ((m * m - 1) % n != 0) continue;
        const auto reps = detail::three_square_representations((m * m - 1) / n);
        for (const Vec3& r : reps) out.push_back(RightColumn{{n * r[0], n * r[1], n * r[2], m}});
    }
    std::sort(out.begin(), out.end(),
              [](const RightColumn& a, const RightColumn& b) { return a.column < b.column; });
    return out;
}

namespace detail {

inline void assemble_for_column(const Form& f, const RightColumn& rc,
                                const std::vector<Vec4>& units, std::vector<Isometry>& out) {
    std::vector<const Vec4*> orth;
    for (const Vec4& u : units)
        if (bilinear(f, u, rc.column) == 0) orth.push_back(&u);
    const size_t k = orth.size();
    std::vector<char> adj(k * k, 0);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j)
            if (bilinear(f, *orth[i], *orth[j]) == 0) adj[i * k + j] = adj[j * k + i] = 1;

    std::array<size_t, 3> t{};
    auto emit = [&](size_t x, size_t y, size_t z) {
        Mat4 m;
        for (int r = 0; r < 4; ++r) {
            m.at(r, 0) = (*orth[x])[static_cast<size_t>(r)];
            m.at(r, 1) = (*orth[y])[static_cast<size_t>(r)];
            m.at(r, 2) = (*orth[z])[static_cast<size_t>(r)];
            m.at(r, 3) = rc.column[static_cast<size_t>(r)];
        }
        if (det4(m) == 1) out.push_back(Isometry::from_matrix(m, f.n()));
    };
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            if (!adj[i * k + j]) continue;
            for (size_t l = j + 1; l < k; ++l) {
                if (!adj[i * k + l] || !adj[j * k + l]) continue;
                // all 6 orderings of the triangle; det filter keeps half
                t = {i, j, l};
                do {
                    emit(t[0], t[1], t[2]);
                } while (std::next_permutation(t.begin(), t.end()));
            }
        }
}

}  // namespace detail

/// Every element of SO+(Q_n, Z) with a44 <= T, sorted lexicographically by
/// entries.  Strata (right columns) are independent, so the work is sharded
/// across threads and merged deterministically.
inline std::vector<Isometry> assemble_isometries(const Int& n, const Int& T,
                                                 unsigned threads = 0) {
    const Form f(n);
    const UnitVectorList units = enumerate_unit_vectors(n, T);
    const std::vector<RightColumn> columns = enumerate_right_columns(n, T);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(columns.size()) + 1);

    std::vector<std::vector<Isometry>> shard(columns.size());
    if (threads <= 1) {
        for (size_t c = 0; c < columns.size(); ++c)
            detail::assemble_for_column(f, columns[c], units.vectors, shard[c]);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (size_t c = next.fetch_add(1); c < columns.size(); c = next.fetch_add(1))
                    detail::assemble_for_column(f, columns[c], units.vectors, shard[c]);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<Isometry> out;
    for (auto& s : shard)
        for (auto& g : s) out.push_back(std::move(g));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace lorentz
