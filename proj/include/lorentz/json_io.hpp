#pragma once

// JSON forms of the core types.  Every document carries
// "schema": "lorentz-genset/1".  Matrices are arrays of 4 integer rows plus
// the form parameter "n"; exact rationals travel as "p/q" strings with q >= 1
// and the fraction fully reduced.

#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>

#include <json.hpp>

#include "lorentz/chart.hpp"
#include "lorentz/dirichlet.hpp"
#include "lorentz/genset.hpp"
#include "lorentz/isometry.hpp"

namespace lorentz {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "lorentz-genset/1";

inline std::int64_t to_i64(const Int& v) {
    if (v < std::numeric_limits<std::int64_t>::min() ||
        v > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("json_io: integer too large for JSON number");
    return static_cast<std::int64_t>(v);
}

inline std::string rat_to_string(const Rat& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline Rat rat_from_string(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

inline json to_json(const Isometry& g) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int j = 0; j < 4; ++j) row.push_back(to_i64(g.matrix().at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"n", to_i64(g.form_n())}, {"matrix", std::move(rows)}};
}

inline Isometry isometry_from_json(const json& j) {
    Mat4 m;
    const auto& rows = j.at("matrix");
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            m.at(i, k) = Int(rows.at(static_cast<size_t>(i)).at(static_cast<size_t>(k))
                                 .get<std::int64_t>());
    return Isometry::from_matrix(m, Int(j.at("n").get<std::int64_t>()));
}

inline json to_json(const ChartPoint& p) {
    return json::array({rat_to_string(p.u[0]), rat_to_string(p.u[1]), rat_to_string(p.u[2])});
}

inline ChartPoint chartpoint_from_json(const json& j) {
    return ChartPoint{{rat_from_string(j.at(0).get<std::string>()),
                       rat_from_string(j.at(1).get<std::string>()),
                       rat_from_string(j.at(2).get<std::string>())}};
}

inline json to_json(const HalfSpace& h) {
    return json{{"normal", {to_i64(h.normal[0]), to_i64(h.normal[1]), to_i64(h.normal[2])}},
                {"rhs", to_i64(h.rhs)}};
}

inline HalfSpace halfspace_from_json(const json& j) {
    const auto& n = j.at("normal");
    return HalfSpace{{Int(n.at(0).get<std::int64_t>()), Int(n.at(1).get<std::int64_t>()),
                      Int(n.at(2).get<std::int64_t>())},
                     Int(j.at("rhs").get<std::int64_t>())};
}

inline json to_json(const Polytope& p) {
    json verts = json::array();
    for (const ChartPoint& v : p.vertices) verts.push_back(to_json(v));
    json halfspaces = json::array();
    for (size_t i = 0; i < p.defining.size(); ++i) {
        json h = to_json(p.defining[i]);
        h["box"] = static_cast<int>(i) < p.box_plane_count;
        halfspaces.push_back(std::move(h));
    }
    json facets = json::array();
    for (const Facet& f : p.facets)
        facets.push_back(json{{"halfspace", f.halfspace_id}, {"cycle", f.cycle}});
    return json{{"vertices", std::move(verts)},
                {"halfspaces", std::move(halfspaces)},
                {"facets", std::move(facets)},
                {"bounded", p.bounded},
                {"ball_n", to_i64(p.ball_n)}};
}

inline Polytope polytope_from_json(const json& j) {
    Polytope p;
    for (const auto& v : j.at("vertices")) p.vertices.push_back(chartpoint_from_json(v));
    for (const auto& h : j.at("halfspaces")) {
        p.defining.push_back(halfspace_from_json(h));
        if (h.value("box", false)) ++p.box_plane_count;
    }
    for (const auto& f : j.at("facets")) {
        Facet facet;
        facet.halfspace_id = f.at("halfspace").get<int>();
        facet.cycle = f.at("cycle").get<std::vector<int>>();
        p.facets.push_back(std::move(facet));
    }
    p.bounded = j.at("bounded").get<bool>();
    p.ball_n = Int(j.at("ball_n").get<std::int64_t>());
    // vertex plane incidences are derivable; recompute for completeness
    for (const ChartPoint& v : p.vertices) {
        std::vector<int> act;
        for (size_t i = 0; i < p.defining.size(); ++i)
            if (halfspace_margin(p.defining[i], v) == 0) act.push_back(static_cast<int>(i));
        p.active.push_back(std::move(act));
    }
    return p;
}

inline json to_json(const Word& w) {
    json out = json::array();
    for (const WordTerm& t : w) out.push_back(json::array({t.name, t.exponent}));
    return out;
}

inline Word word_from_json(const json& j) {
    Word w;
    for (const auto& t : j)
        w.push_back(WordTerm{t.at(0).get<std::string>(), t.at(1).get<long>()});
    return w;
}

inline json to_json(const DomainResult& r) {
    json elements = json::array();
    for (const Isometry& g : r.elements) elements.push_back(to_json(g));
    json walls = json::array();
    for (const WallInfo& w : r.walls) {
        json jw = json::object();
        jw["halfspace"] = to_json(w.wall);
        json col = json::array();
        for (const Int& c : w.orbit_column) col.push_back(to_i64(c));
        jw["orbit_column"] = std::move(col);
        jw["element_ids"] = w.element_ids;
        jw["facet_support"] = w.facet_support;
        jw["min_margin"] = rat_to_string(w.min_margin);
        walls.push_back(std::move(jw));
    }
    return json{{"schema", kSchemaTag},
                {"n", to_i64(r.n)},
                {"bound_T", to_i64(r.bound_T)},
                {"certified", r.certified},
                {"doublings", r.doublings},
                {"elements", std::move(elements)},
                {"nonstabilizer_ids", r.nonstabilizer_ids},
                {"walls", std::move(walls)},
                {"face_pairing_ids", r.face_pairing_ids},
                {"voronoi", to_json(r.voronoi)},
                {"domain", to_json(r.domain)}};
}

inline DomainResult domain_from_json(const json& j) {
    if (j.value("schema", "") != kSchemaTag)
        throw std::invalid_argument("domain_from_json: unrecognized schema");
    DomainResult r;
    r.n = Int(j.at("n").get<std::int64_t>());
    r.bound_T = Int(j.at("bound_T").get<std::int64_t>());
    r.certified = j.at("certified").get<bool>();
    r.doublings = j.at("doublings").get<int>();
    for (const auto& e : j.at("elements")) r.elements.push_back(isometry_from_json(e));
    r.nonstabilizer_ids = j.at("nonstabilizer_ids").get<std::vector<int>>();
    for (const auto& w : j.at("walls")) {
        WallInfo info;
        info.wall = halfspace_from_json(w.at("halfspace"));
        const auto& col = w.at("orbit_column");
        for (int k = 0; k < 4; ++k)
            info.orbit_column[static_cast<size_t>(k)] =
                Int(col.at(static_cast<size_t>(k)).get<std::int64_t>());
        info.element_ids = w.at("element_ids").get<std::vector<int>>();
        info.facet_support = w.at("facet_support").get<bool>();
        info.min_margin = rat_from_string(w.at("min_margin").get<std::string>());
        r.walls.push_back(std::move(info));
    }
    r.face_pairing_ids = j.at("face_pairing_ids").get<std::vector<int>>();
    r.voronoi = polytope_from_json(j.at("voronoi"));
    r.domain = polytope_from_json(j.at("domain"));
    return r;
}

/// OBJ mesh: vertices at 17 significant digits, faces fan-triangulated from
/// each facet cycle's first vertex, counterclockwise from outside.
/// `index_offset` shifts face indices when several objects share one file.
inline std::string polytope_to_obj(const Polytope& p, const std::string& name,
                                   int index_offset = 0) {
    std::string out = "o " + name + "\n";
    char buf[96];
    for (const ChartPoint& v : p.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.u[0].convert_to<double>(),
                      v.u[1].convert_to<double>(), v.u[2].convert_to<double>());
        out += buf;
    }
    const int base = index_offset + 1;
    for (const Facet& f : p.facets)
        for (size_t k = 1; k + 1 < f.cycle.size(); ++k) {
            std::snprintf(buf, sizeof buf, "f %d %d %d\n", base + f.cycle[0],
                          base + f.cycle[k], base + f.cycle[k + 1]);
            out += buf;
        }
    return out;
}

}  // namespace lorentz
