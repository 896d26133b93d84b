#pragma once

// Exact rational convex-polytope engine and the certification loop for the
// Voronoi cell of the base-point orbit.
//
// A polytope is held as exact rational vertices plus, per vertex, the exact
// set of defining planes it lies on.  Cutting by a half-space drops negative
// vertices, keeps the zero/positive ones, and introduces one new vertex per
// strictly crossed edge (edges are recovered from plane incidences: two
// vertices sharing two independent planes bound an edge).  Everything starts
// from a bounding box wide enough to contain the chart ball; a box plane
// still supporting a 2-face at the end means the actual intersection is
// unbounded in that direction.
//
// The certification loop doubles the displacement bound T until the cell is
// compact inside the chart ball and every vertex satisfies the exact
// circumradius test 2n/(n - |v|^2) - 1 < T, i.e. cosh(2M) < cosh(L); all
// later bisectors are then redundant and the truncated cell is the true
// Voronoi cell.

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lorentz/chart.hpp"
#include "lorentz/isometry.hpp"
#include "lorentz/lattice_enum.hpp"
#include "lorentz/stabilizer.hpp"

namespace lorentz {

struct EmptyInteriorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IterationCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Facet {
    int halfspace_id = -1;
    std::vector<int> cycle;  // vertex ids, counterclockwise seen from outside
};

struct Polytope {
    std::vector<ChartPoint> vertices;       // sorted lexicographically
    std::vector<std::vector<int>> active;   // per vertex: sorted ids of planes with margin 0
    std::vector<HalfSpace> defining;        // plane id = index; box planes first
    std::vector<Facet> facets;              // only planes supporting a 2-face
    Int ball_n = 0;                         // chart parameter the box was sized for
    int box_plane_count = 0;
    bool bounded = false;

    bool has_facet(int halfspace_id) const {
        for (const Facet& f : facets)
            if (f.halfspace_id == halfspace_id) return true;
        return false;
    }
};

namespace detail {

inline std::array<Rat, 3> sub(const Vec3R& a, const Vec3R& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline std::array<Rat, 3> cross(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline bool is_zero(const std::array<Rat, 3>& a) {
    return a[0] == 0 && a[1] == 0 && a[2] == 0;
}

inline Rat dot3(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

class PolytopeBuilder {
public:
    PolytopeBuilder(const Int& n, std::span<const HalfSpace> halfspaces) : n_(n) {
        // box half-width: smallest integer W with W^2 >= 4n, i.e. W >= 2*sqrt(n)
        Int w = isqrt(4 * n);
        if (w * w < 4 * n) ++w;
        for (int axis = 0; axis < 3; ++axis)
            for (int sign : {1, -1}) {
                HalfSpace h;
                h.normal[static_cast<size_t>(axis)] = sign;
                h.rhs = w;
                planes_.push_back(h);
            }
        for (int sx : {0, 1})
            for (int sy : {0, 1})
                for (int sz : {0, 1}) {
                    ChartPoint v{{Rat(sx ? w : -w), Rat(sy ? w : -w), Rat(sz ? w : -w)}};
                    verts_.push_back(v);
                    active_.push_back({sx ? 0 : 1, sy ? 2 : 3, sz ? 4 : 5});
                }
        for (const HalfSpace& h : halfspaces) cut(h);
    }

    void cut(const HalfSpace& h) {
        const int pid = static_cast<int>(planes_.size());
        planes_.push_back(h);
        std::vector<Rat> margin(verts_.size());
        bool any_neg = false, any_pos = false;
        for (size_t i = 0; i < verts_.size(); ++i) {
            margin[i] = halfspace_margin(h, verts_[i]);
            if (margin[i] < 0) any_neg = true;
            if (margin[i] > 0) any_pos = true;
        }
        if (!any_neg) {
            for (size_t i = 0; i < verts_.size(); ++i)
                if (margin[i] == 0) insert_sorted(active_[i], pid);
            return;
        }

        std::vector<ChartPoint> new_verts;
        std::vector<std::vector<int>> new_active;
        if (any_pos) {
            for (const auto& [i, j] : edges()) {
                const Rat &mi = margin[i], &mj = margin[j];
                if (!((mi > 0 && mj < 0) || (mi < 0 && mj > 0))) continue;
                const Rat t = mi / (mi - mj);
                ChartPoint w;
                for (int k = 0; k < 3; ++k) {
                    auto ku = static_cast<size_t>(k);
                    w.u[ku] = verts_[i].u[ku] + t * (verts_[j].u[ku] - verts_[i].u[ku]);
                }
                if (std::find(new_verts.begin(), new_verts.end(), w) != new_verts.end()) continue;
                new_verts.push_back(w);
                new_active.push_back(exact_active(w));
            }
        }
        std::vector<ChartPoint> verts;
        std::vector<std::vector<int>> active;
        for (size_t i = 0; i < verts_.size(); ++i) {
            if (margin[i] < 0) continue;
            verts.push_back(verts_[i]);
            active.push_back(active_[i]);
            if (margin[i] == 0) insert_sorted(active.back(), pid);
        }
        for (size_t k = 0; k < new_verts.size(); ++k) {
            verts.push_back(new_verts[k]);
            active.push_back(new_active[k]);
        }
        verts_ = std::move(verts);
        active_ = std::move(active);
    }

    /// Vertex pairs lying on two defining planes with independent normals.
    std::vector<std::pair<size_t, size_t>> edges() const {
        std::vector<std::pair<size_t, size_t>> out;
        std::vector<int> common;
        for (size_t i = 0; i < verts_.size(); ++i)
            for (size_t j = i + 1; j < verts_.size(); ++j) {
                common.clear();
                std::set_intersection(active_[i].begin(), active_[i].end(), active_[j].begin(),
                                      active_[j].end(), std::back_inserter(common));
                if (common.size() < 2) continue;
                if (rank2(common)) out.emplace_back(i, j);
            }
        return out;
    }

    Polytope finalize() const {
        Polytope p;
        if (verts_.empty()) throw EmptyInteriorError("half-space intersection is empty");
        if (affine_rank() < 3)
            throw EmptyInteriorError("half-space intersection has empty interior");
        p.defining = planes_;
        p.ball_n = n_;
        p.box_plane_count = 6;

        std::vector<size_t> order(verts_.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return verts_[a] < verts_[b]; });
        std::vector<int> rank_of(verts_.size());
        for (size_t r = 0; r < order.size(); ++r) {
            rank_of[order[r]] = static_cast<int>(r);
            p.vertices.push_back(verts_[order[r]]);
            p.active.push_back(active_[order[r]]);
        }

        p.bounded = true;
        for (int pid = 0; pid < static_cast<int>(planes_.size()); ++pid) {
            std::optional<Facet> f = facet_for(pid, rank_of);
            if (!f) continue;
            if (pid < p.box_plane_count)
                p.bounded = false;  // a surviving box face means the true region escapes
            p.facets.push_back(std::move(*f));
        }
        return p;
    }

private:
    static void insert_sorted(std::vector<int>& v, int x) {
        v.insert(std::lower_bound(v.begin(), v.end(), x), x);
    }

    std::vector<int> exact_active(const ChartPoint& v) const {
        std::vector<int> out;
        for (int pid = 0; pid < static_cast<int>(planes_.size()); ++pid)
            if (halfspace_margin(planes_[static_cast<size_t>(pid)], v) == 0) out.push_back(pid);
        return out;
    }

    bool rank2(const std::vector<int>& plane_ids) const {
        for (size_t a = 0; a < plane_ids.size(); ++a)
            for (size_t b = a + 1; b < plane_ids.size(); ++b) {
                const Vec3& u = planes_[static_cast<size_t>(plane_ids[a])].normal;
                const Vec3& v = planes_[static_cast<size_t>(plane_ids[b])].normal;
                if (u[1] * v[2] != u[2] * v[1] || u[2] * v[0] != u[0] * v[2] ||
                    u[0] * v[1] != u[1] * v[0])
                    return true;
            }
        return false;
    }

    int affine_rank() const {
        if (verts_.empty()) return -1;
        const Vec3R& o = verts_[0].u;
        std::array<Rat, 3> d1{};
        size_t i1 = 0;
        for (size_t i = 1; i < verts_.size(); ++i) {
            d1 = sub(verts_[i].u, o);
            if (!is_zero(d1)) {
                i1 = i;
                break;
            }
        }
        if (i1 == 0) return 0;
        std::array<Rat, 3> c{};
        size_t i2 = 0;
        for (size_t i = i1 + 1; i < verts_.size(); ++i) {
            c = cross(d1, sub(verts_[i].u, o));
            if (!is_zero(c)) {
                i2 = i;
                break;
            }
        }
        if (i2 == 0) return 1;
        for (size_t i = i2 + 1; i < verts_.size(); ++i)
            if (dot3(c, sub(verts_[i].u, o)) != 0) return 3;
        return 2;
    }

    /// Builds the facet on plane pid if its incident vertices span 2 affine
    /// dimensions; cycle ordered counterclockwise around the outward normal,
    /// rotated to start at the smallest vertex id.
    std::optional<Facet> facet_for(int pid, const std::vector<int>& rank_of) const {
        std::vector<size_t> ids;
        for (size_t i = 0; i < verts_.size(); ++i)
            if (std::binary_search(active_[i].begin(), active_[i].end(), pid)) ids.push_back(i);
        if (ids.size() < 3) return std::nullopt;

        bool spans2 = false;
        for (size_t a = 1; a < ids.size() && !spans2; ++a) {
            const auto d1 = sub(verts_[ids[a]].u, verts_[ids[0]].u);
            for (size_t b = a + 1; b < ids.size() && !spans2; ++b)
                if (!is_zero(cross(d1, sub(verts_[ids[b]].u, verts_[ids[0]].u)))) spans2 = true;
        }
        if (!spans2) return std::nullopt;

        const HalfSpace& h = planes_[static_cast<size_t>(pid)];
        const std::array<Rat, 3> n{Rat(h.normal[0]), Rat(h.normal[1]), Rat(h.normal[2])};
        Vec3R centroid{Rat(0), Rat(0), Rat(0)};
        for (size_t i : ids)
            for (size_t k = 0; k < 3; ++k) centroid[k] += verts_[i].u[k];
        for (size_t k = 0; k < 3; ++k) centroid[k] /= Rat(static_cast<long>(ids.size()));

        const auto ref = sub(verts_[ids[0]].u, centroid);
        auto half = [&](const std::array<Rat, 3>& w) {
            const Rat c = dot3(cross(ref, w), n);
            if (c > 0) return 0;
            if (c < 0) return 1;
            return dot3(ref, w) > 0 ? 0 : 1;
        };
        std::sort(ids.begin(), ids.end(), [&](size_t a, size_t b) {
            const auto da = sub(verts_[a].u, centroid);
            const auto db = sub(verts_[b].u, centroid);
            const int ha = half(da), hb = half(db);
            if (ha != hb) return ha < hb;
            return dot3(cross(da, db), n) > 0;
        });

        Facet f;
        f.halfspace_id = pid;
        for (size_t i : ids) f.cycle.push_back(rank_of[i]);
        size_t start = static_cast<size_t>(
            std::min_element(f.cycle.begin(), f.cycle.end()) - f.cycle.begin());
        std::rotate(f.cycle.begin(), f.cycle.begin() + static_cast<long>(start), f.cycle.end());
        return f;
    }

    Int n_;
    std::vector<ChartPoint> verts_;
    std::vector<std::vector<int>> active_;
    std::vector<HalfSpace> planes_;
};

}  // namespace detail

/// Intersection of the given half-spaces, clipped to a bounding box of
/// half-width ceil(2*sqrt(n)).  The regions of interest all live inside the
/// radius-sqrt(n) chart ball, so the clip is neutral for them; `bounded`
/// reports whether any box face survived.  Throws EmptyInteriorError when the
/// result has no interior point (reported distinctly from unboundedness).
inline Polytope intersect_halfspaces(std::span<const HalfSpace> halfspaces, const Int& n) {
    if (halfspaces.empty())
        throw std::invalid_argument("intersect_halfspaces: empty half-space list");
    detail::PolytopeBuilder b(n, halfspaces);
    return b.finalize();
}

/// Chart criterion for compactness of the hyperbolic polytope: bounded and
/// every vertex strictly inside the radius-sqrt(n) ball.
inline bool is_compact_in_ball(const Polytope& p, const Int& n) {
    if (!p.bounded) return false;
    for (const ChartPoint& v : p.vertices)
        if (norm_sq(v.u) >= Rat(n)) return false;
    return true;
}

/// Exact form of the termination test cosh(2M) < cosh(L) = T: for every
/// vertex, 2n/(n - |v|^2) - 1 < T, using cosh(2M) = 2 cosh^2(M) - 1.
inline bool circumradius_criterion(const Polytope& p, const Int& n, const Int& T) {
    for (const ChartPoint& v : p.vertices) {
        const Rat d = Rat(n) - norm_sq(v.u);
        if (d <= 0)
            throw std::domain_error("circumradius_criterion: vertex on or outside chart ball");
        if (2 * Rat(n) / d - 1 >= Rat(T)) return false;
    }
    return true;
}

/// Cuts the cell by the closed cone walls u1 >= u2 >= u3 >= 0, producing the
/// fundamental domain for the full group.
inline Polytope intersect_with_cone(const Polytope& p) {
    std::vector<HalfSpace> hs(p.defining.begin() + p.box_plane_count, p.defining.end());
    for (const HalfSpace& w : cone_walls()) hs.push_back(w);
    return intersect_halfspaces(hs, p.ball_n);
}

struct WallInfo {
    HalfSpace wall;               // gcd-reduced bisector plane
    Vec4 orbit_column;            // the shared right column of its elements
    std::vector<int> element_ids; // indices into DomainResult::elements
    bool facet_support = false;   // supports a 2-face of the certified cell
    Rat min_margin{0};            // min over cell vertices; 0 = touches the cell
};

struct DomainResult {
    Int n;
    Int bound_T;
    bool certified = false;
    int doublings = 0;
    std::vector<Isometry> elements;     // full ball a44 <= bound_T, sorted
    std::vector<int> nonstabilizer_ids; // elements moving the base point
    std::vector<WallInfo> walls;        // one per distinct bisector, sorted
    std::vector<int> face_pairing_ids;  // elements whose wall supports a facet
    Polytope voronoi;                   // cell cut by bisectors alone
    Polytope domain;                    // voronoi ∩ stabilizer cone
};

/// Elements whose bisector supports a 2-dimensional face of the cell.
inline std::vector<Isometry> face_pairings(const DomainResult& r) {
    std::vector<Isometry> out;
    out.reserve(r.face_pairing_ids.size());
    for (int id : r.face_pairing_ids) out.push_back(r.elements[static_cast<size_t>(id)]);
    return out;
}

struct DomainOptions {
    int max_doublings = 8;
    unsigned threads = 0;
};

/// Enumerate-cut-certify loop: enumerate the ball a44 <= T, drop the
/// stabilizer, intersect the bisector half-spaces, and accept once the cell
/// is compact in the chart ball and passes the circumradius test; otherwise
/// double T.  Requires the mod-8 anisotropy certificate so that compactness
/// is guaranteed to arrive.
inline DomainResult compute_dirichlet_domain(const Int& n, const Int& T_initial,
                                             const DomainOptions& opt = {}) {
    if (!anisotropy_certificate_mod8(n))
        throw std::invalid_argument("compute_dirichlet_domain: n is not certified anisotropic");
    if (T_initial < 2)
        throw std::invalid_argument("compute_dirichlet_domain: T_initial must be >= 2");

    Int T = T_initial;
    for (int round = 0; round <= opt.max_doublings; ++round, T *= 2) {
        DomainResult r;
        r.n = n;
        r.bound_T = T;
        r.doublings = round;
        r.elements = assemble_isometries(n, T, opt.threads);

        std::map<HalfSpace, WallInfo> by_wall;
        for (size_t i = 0; i < r.elements.size(); ++i) {
            if (r.elements[i].fixes_basepoint()) continue;
            r.nonstabilizer_ids.push_back(static_cast<int>(i));
            const HalfSpace wall = bisector_halfspace(r.elements[i]).reduced();
            auto [it, fresh] = by_wall.try_emplace(wall);
            if (fresh) {
                it->second.wall = wall;
                it->second.orbit_column = r.elements[i].matrix().column(3);
            }
            it->second.element_ids.push_back(static_cast<int>(i));
        }
        std::vector<HalfSpace> hs;
        hs.reserve(by_wall.size());
        for (const auto& [wall, info] : by_wall) hs.push_back(wall);

        r.voronoi = intersect_halfspaces(hs, n);
        if (!is_compact_in_ball(r.voronoi, n)) continue;
        if (!circumradius_criterion(r.voronoi, n, T)) continue;

        // plane ids follow insertion order: box planes 0..5, then hs in map order
        int pid = r.voronoi.box_plane_count;
        for (auto& [wall, info] : by_wall) {
            bool first = true;
            for (const ChartPoint& v : r.voronoi.vertices) {
                Rat m = halfspace_margin(wall, v);
                if (first || m < info.min_margin) info.min_margin = std::move(m);
                first = false;
            }
            info.facet_support = r.voronoi.has_facet(pid);
            r.walls.push_back(info);
            ++pid;
        }
        for (const WallInfo& w : r.walls)
            if (w.facet_support)
                for (int id : w.element_ids) r.face_pairing_ids.push_back(id);
        std::sort(r.face_pairing_ids.begin(), r.face_pairing_ids.end());

        r.domain = intersect_with_cone(r.voronoi);
        r.certified = true;
        return r;
    }
    throw IterationCapError("compute_dirichlet_domain: no certified cell for n = " + n.str() +
                            " within " + std::to_string(opt.max_doublings) +
                            " doublings from T = " + T_initial.str() +
                            " (last bound " + Int(T / 2).str() + ")");
}

}  // namespace lorentz
