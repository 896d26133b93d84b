// Acceptance suite: one line per criterion, exact tolerances, nonzero exit
// when any criterion fails.  Criteria 2 and 11 assert the bundled catalog's
// published claims verbatim; the suite reports the computed truth and does
// not soften the check when the claim itself is wrong.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lorentz/lorentz.hpp"

using namespace lorentz;

namespace {

struct Outcome {
    bool pass = false;
    std::vector<std::string> notes;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit_s;  // 0 = unenforced
    std::function<Outcome()> fn;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------- criteria

Outcome catalog_validation() {
    Outcome o;
    o.pass = true;
    for (const auto& [name, g] : paper_catalog()) {
        try {
            Isometry::from_matrix(g.matrix(), 7);
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(name + ": " + e.what());
        }
    }
    if (paper_catalog().size() != 12) {
        o.pass = false;
        o.notes.push_back("catalog size != 12");
    }
    return o;
}

Outcome relation_verification() {
    Outcome o;
    o.pass = true;
    for (const RelationCheck& rc : verify_paper_relations()) {
        if (!rc.pass) {
            o.pass = false;
            const Isometry v = evaluate_word(rc.word, paper_catalog());
            o.notes.push_back("relation for " + rc.name + " fails entrywise: word [" +
                              to_string(rc.word) + "] evaluates to displacement " +
                              v.displacement_cosh().str() + ", target has " +
                              paper_catalog().at(rc.name).displacement_cosh().str());
        }
    }
    Word bad = paper_relation_words().at("B");
    bad[2].exponent = -bad[2].exponent;
    if (check_relation("B", bad, paper_catalog()).pass) {
        o.pass = false;
        o.notes.push_back("negative control unexpectedly passed");
    }
    return o;
}

Outcome inverse_pairing() {
    Outcome o;
    o.pass = true;
    const auto& cat = paper_catalog();
    for (const char* name : {"A", "B", "D", "F"})
        if (cat.at(name).inverse() != cat.at(std::string(name) + "^-1")) {
            o.pass = false;
            o.notes.push_back(std::string("inverse(") + name + ") differs from the printed matrix");
        }
    return o;
}

Outcome facts_suite() {
    Outcome o;
    o.pass = true;
    long violations = 0;
    const auto ball = assemble_isometries(7, 21);
    for (const Isometry& g : ball) {
        const Mat4& m = g.matrix();
        const Int& a44 = m.at(3, 3);
        const bool divis = m.at(0, 3) % 7 == 0 && m.at(1, 3) % 7 == 0 && m.at(2, 3) % 7 == 0;
        const bool residue = a44 % 7 == 1 || a44 % 7 == 6;
        const bool bottom =
            7 * (m.at(3, 0) * m.at(3, 0) + m.at(3, 1) * m.at(3, 1) + m.at(3, 2) * m.at(3, 2)) ==
            a44 * a44 - 1;
        if (!(divis && residue && bottom)) ++violations;
    }
    if (violations != 0) {
        o.pass = false;
        o.notes.push_back(std::to_string(violations) + " violations over " +
                          std::to_string(ball.size()) + " elements");
    }
    o.notes.push_back("checked " + std::to_string(ball.size()) + " elements, zero violations");
    return o;
}

Outcome stabilizer_order() {
    Outcome o;
    const auto ball1 = assemble_isometries(7, 1);
    const StabilizerGroup stab = build_stabilizer();
    std::set<Isometry> closure{Isometry::identity(7)};
    std::vector<Isometry> frontier{Isometry::identity(7)};
    while (!frontier.empty()) {
        std::vector<Isometry> next;
        for (const Isometry& f : frontier)
            for (const Isometry* g : {&stab.gen_s, &stab.gen_r}) {
                Isometry p = multiply(f, *g);
                if (closure.insert(p).second) next.push_back(std::move(p));
            }
        frontier = std::move(next);
    }
    const std::set<Isometry> enumerated(ball1.begin(), ball1.end());
    const std::set<Isometry> direct(stab.elements.begin(), stab.elements.end());
    o.pass = ball1.size() == 24 && enumerated == direct && closure == direct;
    if (!o.pass)
        o.notes.push_back("sizes: ball " + std::to_string(ball1.size()) + ", direct " +
                          std::to_string(direct.size()) + ", closure " +
                          std::to_string(closure.size()));
    return o;
}

Outcome stratum_membership() {
    Outcome o;
    o.pass = true;
    const auto& cat = paper_catalog();
    const std::vector<std::pair<const char*, int>> expect{
        {"A", 6}, {"B", 8}, {"C", 8}, {"D", 13}, {"E", 15}, {"F", 20}};
    for (const auto& [name, T] : expect) {
        const auto ball = assemble_isometries(7, T);
        if (!std::binary_search(ball.begin(), ball.end(), cat.at(name))) {
            o.pass = false;
            o.notes.push_back(std::string(name) + " missing from the T = " + std::to_string(T) +
                              " enumeration");
        }
    }
    return o;
}

Outcome distance_identity() {
    Outcome o;
    long violations = 0;
    const auto ball = assemble_isometries(7, 21);
    const ChartPoint origin{};
    for (const Isometry& g : ball) {
        const ChartPoint img = apply_isometry_chart(g, origin);
        const Int& a44 = g.displacement_cosh();
        if (cosh_sq_distance_from_origin(img, 7) != Rat(a44 * a44)) ++violations;
    }
    o.pass = violations == 0;
    o.notes.push_back("checked " + std::to_string(ball.size()) + " elements");
    if (violations) o.notes.push_back(std::to_string(violations) + " violations");
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    o.pass = true;
    for (const int n : {7, 15})
        for (int T = 1; T <= 20; ++T)
            if (oracle::naive_unit_vectors(n, T) != enumerate_unit_vectors(n, T).vectors) {
                o.pass = false;
                o.notes.push_back("unit vector mismatch at n = " + std::to_string(n) +
                                  ", T = " + std::to_string(T));
            }
    for (int T = 1; T <= 8; ++T)
        if (oracle::exhaustive_small_assembly(7, T) != assemble_isometries(7, T)) {
            o.pass = false;
            o.notes.push_back("assembly mismatch at T = " + std::to_string(T));
        }
    return o;
}

Outcome domain_certification() {
    Outcome o;
    const DomainResult r = compute_dirichlet_domain(7, 21);
    bool inside = true;
    for (const ChartPoint& v : r.voronoi.vertices)
        if (norm_sq(v.u) >= 7) inside = false;
    o.pass = r.certified && r.voronoi.bounded && inside &&
             circumradius_criterion(r.voronoi, 7, r.bound_T);
    o.notes.push_back("bound_T = " + r.bound_T.str() + ", doublings = " +
                      std::to_string(r.doublings) + ", cell: " +
                      std::to_string(r.voronoi.vertices.size()) + " vertices / " +
                      std::to_string(r.voronoi.facets.size()) + " facets");
    return o;
}

Outcome generator_recovery() {
    Outcome o;
    const DomainResult r = compute_dirichlet_domain(7, 21);
    const StabilizerGroup stab = build_stabilizer();
    std::vector<Isometry> moving;
    for (int id : r.nonstabilizer_ids) moving.push_back(r.elements[static_cast<size_t>(id)]);
    const auto classes = reduce_face_pairings(moving, stab);

    std::set<Isometry> recovered;
    for (const CosetClass& c : classes) recovered.insert(c.canonical);
    std::set<Isometry> printed;
    for (const auto& [name, g] : paper_catalog()) {
        if (g.fixes_basepoint()) continue;
        printed.insert(canonicalize_by_stabilizer(g, stab));
        printed.insert(canonicalize_by_stabilizer(g.inverse(), stab));
    }
    o.pass = recovered == printed;
    o.notes.push_back(std::to_string(classes.size()) + " double cosets recovered, " +
                      std::to_string(printed.size()) + " printed (inverse-closed)");
    if (!o.pass) o.notes.push_back("coset sets differ");
    return o;
}

Outcome four_generator_sufficiency() {
    Outcome o;
    const auto ball = assemble_isometries(7, 21);
    std::map<std::string, Isometry> gens;
    for (const char* n : {"(12)", "(1234)", "A", "C"}) gens.emplace(n, paper_catalog().at(n));

    const GenerationReport rep = verify_generation(ball, gens, 12);
    long max_len = 0;
    for (const auto& e : rep.entries)
        if (e.reached) max_len = std::max(max_len, e.length);
    o.pass = rep.all_reached;
    o.notes.push_back("radius 12 reaches " + std::to_string(rep.reached_count) + " of " +
                      std::to_string(ball.size()) + " elements (longest witness " +
                      std::to_string(max_len) + ")");

    // witness soundness: every emitted word evaluates to its target
    for (size_t i = 0; i < rep.entries.size(); ++i)
        if (rep.entries[i].reached && evaluate_word(rep.entries[i].word, gens) != ball[i]) {
            o.pass = false;
            o.notes.push_back("witness word mismatch at element " + std::to_string(i));
        }

    if (!rep.all_reached) {
        const GenerationReport wider = verify_generation(ball, gens, 14);
        long widest = 0;
        for (const auto& e : wider.entries)
            if (e.reached) widest = std::max(widest, e.length);
        o.notes.push_back("radius 14 reaches " + std::to_string(wider.reached_count) + " of " +
                          std::to_string(ball.size()) +
                          (wider.all_reached ? " (all; minimal covering radius is " +
                                                   std::to_string(widest) + ")"
                                             : " (still incomplete)"));
    }
    return o;
}

Outcome anisotropy_suite() {
    Outcome o;
    o.pass = true;
    for (const int n : {7, 15, 23})
        if (!anisotropy_certificate_mod8(n)) {
            o.pass = false;
            o.notes.push_back("certificate false for n = " + std::to_string(n));
        }
    for (int n = 1; n <= 5; ++n) {
        const auto w = isotropy_witness_search(n, 3);
        bool ok = w.has_value();
        if (ok) {
            const Vec4& v = *w;
            ok = pseudolength(Form(n), v) == 0 &&
                 (v[0] != 0 || v[1] != 0 || v[2] != 0 || v[3] != 0);
            for (const Int& c : v) ok = ok && abs(c) <= 3;
        }
        if (!ok) {
            o.pass = false;
            o.notes.push_back("no valid witness for n = " + std::to_string(n));
        }
    }
    const auto w5 = isotropy_witness_search(5, 2);
    if (!w5 || pseudolength(Form(5), *w5) != 0) {
        o.pass = false;
        o.notes.push_back("Q_5 witness missing at bound 2");
    }
    if (isotropy_witness_search(7, 10).has_value()) {
        o.pass = false;
        o.notes.push_back("spurious witness for n = 7");
    }
    return o;
}

Outcome determinism() {
    Outcome o;
    o.pass = true;
    const auto dir = std::filesystem::temp_directory_path();
    for (const Command cmd : {Command::enumerate, Command::domain}) {
        RunConfig cfg;
        cfg.command = cmd;
        cfg.bound_T = 21;
        cfg.threads = 1;
        const auto a = dir / "lorentz_acc_a.json";
        const auto b = dir / "lorentz_acc_b.json";
        cfg.output_path = a.string();
        if (run(cfg) != 0) {
            o.pass = false;
            o.notes.push_back("single-thread run failed");
            continue;
        }
        cfg.threads = 0;  // hardware default
        cfg.output_path = b.string();
        if (run(cfg) != 0) {
            o.pass = false;
            o.notes.push_back("parallel run failed");
            continue;
        }
        if (slurp(a) != slurp(b)) {
            o.pass = false;
            o.notes.push_back("byte mismatch between thread counts");
        }
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "catalog-validation", 1.0, catalog_validation},
        {2, "relation-verification", 1.0, relation_verification},
        {3, "inverse-pairing", 0, inverse_pairing},
        {4, "facts-suite", 60.0, facts_suite},
        {5, "stabilizer-order", 0, stabilizer_order},
        {6, "stratum-membership", 0, stratum_membership},
        {7, "distance-identity", 0, distance_identity},
        {8, "oracle-equivalence", 0, oracle_equivalence},
        {9, "domain-certification", 600.0, domain_certification},
        {10, "generator-recovery", 0, generator_recovery},
        {11, "four-generator-sufficiency", 0, four_generator_sufficiency},
        {12, "anisotropy-suite", 0, anisotropy_suite},
        {13, "determinism", 0, determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit_s > 0 && secs > c.time_limit_s) {
            o.pass = false;
            o.notes.push_back("time limit exceeded: " + std::to_string(secs) + " s > " +
                              std::to_string(c.time_limit_s) + " s");
        }
        std::printf("[%2d] %-28s %s  (%.2f s)\n", c.id, c.name.c_str(),
                    o.pass ? "PASS" : "FAIL", secs);
        for (const std::string& n : o.notes) std::printf("     - %s\n", n.c_str());
        if (!o.pass) ++failures;
    }
    std::printf("summary: %zu/%zu criteria passed\n", criteria.size() - failures,
                criteria.size());
    return failures;
}
