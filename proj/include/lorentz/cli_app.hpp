#pragma once

// Command implementations behind the CLI: enumerate / domain / generators /
// verify-paper / export.  All artifacts are JSON documents (plus OBJ meshes
// on request) with fully deterministic byte content: element lists, walls,
// vertices and report entries are canonically sorted, so runs with different
// thread counts serialize identically.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
// 3 iteration cap exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "lorentz/dirichlet.hpp"
#include "lorentz/genset.hpp"
#include "lorentz/json_io.hpp"
#include "lorentz/oracle.hpp"

namespace lorentz {

enum class Command { enumerate, domain, generators, verify_paper, export_obj };

enum class OutputFormat { json, obj };

struct RunConfig {
    Command command = Command::enumerate;
    Int n = 7;
    Int bound_T = 21;
    std::optional<std::string> input_path;   // export: stored domain JSON
    std::optional<std::string> output_path;  // default: stdout
    OutputFormat format = OutputFormat::json;
    bool self_check = false;
    int max_doublings = 8;
    int bfs_radius = 12;
    unsigned threads = 0;  // 0 = hardware concurrency
};

namespace cli_detail {

inline void write_artifact(const RunConfig& cfg, const std::string& text,
                           const std::optional<std::string>& explicit_path = std::nullopt) {
    const auto& path = explicit_path ? explicit_path : cfg.output_path;
    if (!path) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + *path);
    out << text;
}

inline std::string obj_sibling_path(const std::string& json_path) {
    const auto dot = json_path.find_last_of('.');
    const auto slash = json_path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return json_path + ".obj";
    return json_path.substr(0, dot) + ".obj";
}

inline std::string domain_obj(const DomainResult& r) {
    std::string obj = polytope_to_obj(r.voronoi, "voronoi_cell");
    obj += polytope_to_obj(r.domain, "fundamental_domain",
                           static_cast<int>(r.voronoi.vertices.size()));
    return obj;
}

/// Euclidean volume at double precision via the divergence theorem over the
/// outward-oriented facet fans.  Diagnostic only; the exact core never
/// consumes this.
inline double polytope_volume_approx(const Polytope& p) {
    double six_v = 0;
    auto coord = [&](int vid, int k) {
        return p.vertices[static_cast<size_t>(vid)].u[static_cast<size_t>(k)].convert_to<double>();
    };
    for (const Facet& f : p.facets)
        for (size_t k = 1; k + 1 < f.cycle.size(); ++k) {
            const int a = f.cycle[0], b = f.cycle[k], c = f.cycle[k + 1];
            six_v += coord(a, 0) * (coord(b, 1) * coord(c, 2) - coord(b, 2) * coord(c, 1)) -
                     coord(a, 1) * (coord(b, 0) * coord(c, 2) - coord(b, 2) * coord(c, 0)) +
                     coord(a, 2) * (coord(b, 0) * coord(c, 1) - coord(b, 1) * coord(c, 0));
        }
    return six_v / 6.0;
}

inline json self_check_report(const RunConfig& cfg) {
    json out = json::object();
    const Int vec_T = cfg.bound_T > 20 ? Int(20) : cfg.bound_T;
    const auto naive = oracle::naive_unit_vectors(cfg.n, vec_T);
    const auto fast = enumerate_unit_vectors(cfg.n, vec_T);
    const bool vectors_ok = naive == fast.vectors;
    out["unit_vectors"] = json{{"bound_T", to_i64(vec_T)},
                               {"count", naive.size()},
                               {"agree", vectors_ok}};
    const Int asm_T = cfg.bound_T > 8 ? Int(8) : cfg.bound_T;
    const auto slow = oracle::exhaustive_small_assembly(cfg.n, asm_T);
    const auto quick = assemble_isometries(cfg.n, asm_T, cfg.threads);
    const bool assembly_ok = slow == quick;
    out["assembly"] = json{{"bound_T", to_i64(asm_T)},
                           {"count", slow.size()},
                           {"agree", assembly_ok}};
    out["pass"] = vectors_ok && assembly_ok;
    return out;
}

inline int run_enumerate(const RunConfig& cfg) {
    json doc;
    doc["schema"] = kSchemaTag;
    doc["command"] = "enumerate";
    doc["n"] = to_i64(cfg.n);
    doc["bound_T"] = to_i64(cfg.bound_T);
    const bool certified = anisotropy_certificate_mod8(cfg.n);
    doc["certified_anisotropic"] = certified;
    if (!certified) {
        doc["warning"] = "form not certified anisotropic; enumeration may meet an "
                         "isotropic form's infinite strata";
        std::cerr << "warning: n = " << cfg.n << " carries no anisotropy certificate\n";
    }
    bool checks_pass = true;
    if (cfg.self_check) {
        doc["self_check"] = self_check_report(cfg);
        checks_pass = doc["self_check"]["pass"].get<bool>();
    }
    const auto elements = assemble_isometries(cfg.n, cfg.bound_T, cfg.threads);
    doc["count"] = elements.size();
    json strata = json::array();
    {
        std::map<Int, long> hist;
        for (const Isometry& g : elements) ++hist[g.displacement_cosh()];
        for (const auto& [a44, count] : hist)
            strata.push_back(json{{"a44", to_i64(a44)}, {"count", count}});
    }
    doc["strata"] = std::move(strata);
    json els = json::array();
    for (const Isometry& g : elements) els.push_back(to_json(g));
    doc["elements"] = std::move(els);
    write_artifact(cfg, doc.dump(2) + "\n");
    return checks_pass ? 0 : 1;
}

inline int run_domain(const RunConfig& cfg) {
    DomainOptions opt;
    opt.max_doublings = cfg.max_doublings;
    opt.threads = cfg.threads;
    const DomainResult r = compute_dirichlet_domain(cfg.n, cfg.bound_T, opt);
    json doc = to_json(r);
    doc["command"] = "domain";
    {
        const double vol_v = polytope_volume_approx(r.voronoi);
        const double vol_d = polytope_volume_approx(r.domain);
        doc["diagnostics"] = json{{"note", "approximate, double precision"},
                                  {"volume_voronoi", vol_v},
                                  {"volume_domain", vol_d},
                                  {"stabilizer_order_times_domain_over_voronoi",
                                   vol_v > 0 ? 24.0 * vol_d / vol_v : 0.0}};
    }
    write_artifact(cfg, doc.dump(2) + "\n");
    if (cfg.format == OutputFormat::obj) {
        if (!cfg.output_path)
            throw std::invalid_argument("domain: OBJ output requires --output");
        write_artifact(cfg, domain_obj(r), obj_sibling_path(*cfg.output_path));
    }
    return 0;
}

inline int run_generators(const RunConfig& cfg) {
    DomainOptions opt;
    opt.max_doublings = cfg.max_doublings;
    opt.threads = cfg.threads;
    const DomainResult r = compute_dirichlet_domain(cfg.n, cfg.bound_T, opt);
    const StabilizerGroup stab = build_stabilizer(cfg.n);

    std::vector<Isometry> moving;
    for (int id : r.nonstabilizer_ids) moving.push_back(r.elements[static_cast<size_t>(id)]);
    const std::vector<CosetClass> classes = reduce_face_pairings(moving, stab);

    // which classes own a wall that supports a facet of the cell
    std::map<Isometry, bool> facet_by_canon;
    for (const WallInfo& w : r.walls) {
        const Isometry& rep = r.elements[static_cast<size_t>(w.element_ids.front())];
        const Isometry canon = canonicalize_by_stabilizer(rep, stab);
        facet_by_canon[canon] = facet_by_canon[canon] || w.facet_support;
    }

    std::map<Isometry, std::vector<std::string>> catalog_class;
    if (cfg.n == 7)
        for (const auto& [name, g] : paper_catalog())
            catalog_class[canonicalize_by_stabilizer(g, stab)].push_back(name);

    std::map<std::string, Isometry> gens;
    if (cfg.n == 7) {
        const auto& cat = paper_catalog();
        for (const char* name : {"(12)", "(1234)", "A", "C"}) gens.emplace(name, cat.at(name));
    } else {
        gens.emplace("s", stab.gen_s);
        gens.emplace("r", stab.gen_r);
        for (size_t i = 0; i < classes.size(); ++i)
            gens.emplace("g" + std::to_string(i), classes[i].canonical);
    }
    const GenerationReport gen = verify_generation(r.elements, gens, cfg.bfs_radius, cfg.threads);

    json doc;
    doc["schema"] = kSchemaTag;
    doc["command"] = "generators";
    doc["n"] = to_i64(cfg.n);
    doc["bound_T"] = to_i64(r.bound_T);
    doc["certified"] = r.certified;
    json jclasses = json::array();
    for (size_t i = 0; i < classes.size(); ++i) {
        const CosetClass& c = classes[i];
        json jc;
        jc["id"] = i;
        jc["canonical"] = to_json(c.canonical);
        jc["a44"] = to_i64(c.canonical.displacement_cosh());
        jc["member_count"] = c.member_ids.size();
        jc["inverse_class"] = c.inverse_class;
        auto itf = facet_by_canon.find(c.canonical);
        jc["facet_support"] = itf != facet_by_canon.end() && itf->second;
        if (cfg.n == 7) {
            auto itc = catalog_class.find(c.canonical);
            jc["catalog_matches"] =
                itc == catalog_class.end() ? std::vector<std::string>{} : itc->second;
        }
        jclasses.push_back(std::move(jc));
    }
    doc["classes"] = std::move(jclasses);

    json jgen;
    jgen["generators"] = [&] {
        std::vector<std::string> names;
        for (const auto& [name, g] : gens) names.push_back(name);
        return names;
    }();
    jgen["radius"] = gen.radius;
    jgen["targets"] = r.elements.size();
    jgen["reached"] = gen.reached_count;
    jgen["all_reached"] = gen.all_reached;
    long max_len = 0;
    json entries = json::array();
    json unreached = json::array();
    for (size_t i = 0; i < gen.entries.size(); ++i) {
        const GenerationEntry& e = gen.entries[i];
        json je;
        je["id"] = i;
        je["reached"] = e.reached;
        if (e.reached) {
            je["length"] = e.length;
            je["word"] = to_json(e.word);
            max_len = std::max(max_len, e.length);
        } else {
            unreached.push_back(i);
        }
        entries.push_back(std::move(je));
    }
    jgen["max_witness_length"] = max_len;
    jgen["unreached_ids"] = std::move(unreached);
    jgen["entries"] = std::move(entries);
    doc["generation"] = std::move(jgen);

    write_artifact(cfg, doc.dump(2) + "\n");
    return gen.all_reached ? 0 : 1;
}

inline int run_verify_paper(const RunConfig& cfg) {
    bool all_pass = true;
    json doc;
    doc["schema"] = kSchemaTag;
    doc["command"] = "verify-paper";

    // catalog validation: construction revalidates every printed matrix
    json jcat = json::array();
    const Form f7(7);
    for (const auto& [name, g] : paper_catalog()) {
        bool ok = true;
        std::string diag;
        try {
            Isometry::from_matrix(g.matrix(), 7);
        } catch (const std::exception& e) {
            ok = false;
            diag = e.what();
            all_pass = false;
        }
        json jc{{"name", name}, {"valid", ok}};
        if (!ok) jc["diagnostic"] = diag;
        jcat.push_back(std::move(jc));
    }
    doc["catalog"] = std::move(jcat);

    // structural facts on the catalog
    json jfacts = json::array();
    for (const auto& [name, g] : paper_catalog()) {
        const Mat4& m = g.matrix();
        const Int& a44 = m.at(3, 3);
        const bool divisibility =
            m.at(0, 3) % 7 == 0 && m.at(1, 3) % 7 == 0 && m.at(2, 3) % 7 == 0;
        const bool residue = a44 % 7 == 1 || a44 % 7 == 6;
        const Int bottom =
            m.at(3, 0) * m.at(3, 0) + m.at(3, 1) * m.at(3, 1) + m.at(3, 2) * m.at(3, 2);
        const bool bottom_identity = 7 * bottom == a44 * a44 - 1;
        Int max_sq = 0;
        for (int j = 0; j < 3; ++j) {
            Int sq = m.at(3, j) * m.at(3, j);
            if (sq > max_sq) max_sq = std::move(sq);
        }
        const bool entry_bound = 7 * max_sq <= a44 * a44;
        const bool ok = divisibility && residue && bottom_identity && entry_bound;
        all_pass = all_pass && ok;
        jfacts.push_back(json{{"name", name},
                              {"right_column_divisible", divisibility},
                              {"a44_residue", residue},
                              {"bottom_row_identity", bottom_identity},
                              {"bottom_row_bound", entry_bound}});
    }
    doc["facts"] = std::move(jfacts);

    // printed inverse pairs
    json jinv = json::array();
    for (const char* name : {"A", "B", "D", "F"}) {
        const auto& cat = paper_catalog();
        const bool ok = cat.at(name).inverse() == cat.at(std::string(name) + "^-1");
        all_pass = all_pass && ok;
        jinv.push_back(json{{"name", name}, {"inverse_matches_printed", ok}});
    }
    doc["inverse_pairs"] = std::move(jinv);

    // relation table
    json jrel = json::array();
    for (const RelationCheck& rc : verify_paper_relations()) {
        json jr{{"name", rc.name}, {"word", to_json(rc.word)}, {"pass", rc.pass}};
        if (!rc.pass) {
            json rows = json::array();
            for (int i = 0; i < 4; ++i) {
                json row = json::array();
                for (int j = 0; j < 4; ++j) row.push_back(to_i64(rc.difference.at(i, j)));
                rows.push_back(std::move(row));
            }
            jr["difference"] = std::move(rows);
            all_pass = false;
        }
        jrel.push_back(std::move(jr));
    }
    doc["relations"] = std::move(jrel);

    // negative control: corrupting an exponent must break the relation
    {
        Word bad = paper_relation_words().at("B");
        bad[2].exponent = -bad[2].exponent;
        const RelationCheck rc = check_relation("B", bad, paper_catalog());
        const bool control_ok = !rc.pass;
        all_pass = all_pass && control_ok;
        doc["negative_control"] =
            json{{"word", to_json(bad)}, {"expected", "mismatch"}, {"pass", control_ok}};
    }

    doc["all_pass"] = all_pass;
    write_artifact(cfg, doc.dump(2) + "\n");
    return all_pass ? 0 : 1;
}

inline int run_export(const RunConfig& cfg) {
    if (!cfg.input_path) throw std::invalid_argument("export: missing input path");
    std::ifstream in(*cfg.input_path);
    if (!in) throw std::runtime_error("cannot open input file: " + *cfg.input_path);
    json doc = json::parse(in);
    const DomainResult r = domain_from_json(doc);
    write_artifact(cfg, domain_obj(r));
    return 0;
}

}  // namespace cli_detail

/// Dispatches a validated configuration.  Exceptions map to exit codes:
/// invalid arguments 2, iteration cap 3.
inline int run(const RunConfig& cfg) {
    try {
        if (cfg.n < 1) throw std::invalid_argument("n must be >= 1");
        if (cfg.bound_T < 1) throw std::invalid_argument("bound must be >= 1");
        switch (cfg.command) {
            case Command::enumerate:
                return cli_detail::run_enumerate(cfg);
            case Command::domain:
                if (!anisotropy_certificate_mod8(cfg.n))
                    throw std::invalid_argument(
                        "domain requires n = 7 (mod 8): compactness is only certified there");
                return cli_detail::run_domain(cfg);
            case Command::generators:
                if (!anisotropy_certificate_mod8(cfg.n))
                    throw std::invalid_argument(
                        "generators requires n = 7 (mod 8): compactness is only certified there");
                return cli_detail::run_generators(cfg);
            case Command::verify_paper:
                return cli_detail::run_verify_paper(cfg);
            case Command::export_obj:
                return cli_detail::run_export(cfg);
        }
        return 2;
    } catch (const IterationCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace lorentz
