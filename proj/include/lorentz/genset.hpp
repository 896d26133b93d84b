#pragma once

// Generator bookkeeping: evaluation of words in named generators, the
// published relation table with an exact pass/fail verdict per relation,
// reduction of element lists to stabilizer double-coset representatives, and
// a word search certifying which elements a generator set reaches.
//
// The word search is breadth-first in substance but runs on two half-radius
// balls: every word of length <= r splits as u * v with |u| <= ceil(r/2) and
// |v| <= floor(r/2), so target t is reached iff u^{-1} t lands in the second
// ball for some u.  This keeps memory at the half-radius ball size.

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "lorentz/arith.hpp"
#include "lorentz/isometry.hpp"
#include "lorentz/stabilizer.hpp"

namespace lorentz {

struct WordTerm {
    std::string name;
    long exponent = 1;
};

using Word = std::vector<WordTerm>;

inline std::string to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (const WordTerm& t : w) {
        if (!s.empty()) s += " ";
        s += t.name;
        if (t.exponent != 1) s += "^" + std::to_string(t.exponent);
    }
    return s;
}

inline long word_length(const Word& w) {
    long n = 0;
    for (const WordTerm& t : w) n += std::abs(t.exponent);
    return n;
}

/// Product of the named powers, left to right.  Empty word = identity.
inline Isometry evaluate_word(const Word& w, const std::map<std::string, Isometry>& alphabet) {
    if (alphabet.empty()) throw std::invalid_argument("evaluate_word: empty alphabet");
    Isometry acc = Isometry::identity(alphabet.begin()->second.form_n());
    for (const WordTerm& t : w) {
        auto it = alphabet.find(t.name);
        if (it == alphabet.end())
            throw std::invalid_argument("evaluate_word: unknown generator '" + t.name + "'");
        if (t.exponent == 0) throw std::invalid_argument("evaluate_word: zero exponent");
        const Isometry base = t.exponent > 0 ? it->second : it->second.inverse();
        for (long k = 0; k < std::abs(t.exponent); ++k) acc = multiply(acc, base);
    }
    return acc;
}

struct RelationCheck {
    std::string name;    // target label in the catalog
    Word word;
    bool pass = false;
    Mat4 difference{};   // evaluate(word) - target; zero iff pass
};

inline RelationCheck check_relation(const std::string& target_name, const Word& word,
                                    const std::map<std::string, Isometry>& alphabet) {
    const auto& catalog = paper_catalog();
    auto it = catalog.find(target_name);
    if (it == catalog.end())
        throw std::invalid_argument("check_relation: unknown target '" + target_name + "'");
    const Isometry value = evaluate_word(word, alphabet);
    RelationCheck r;
    r.name = target_name;
    r.word = word;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            r.difference.at(i, j) = value.matrix().at(i, j) - it->second.matrix().at(i, j);
    r.pass = r.difference == Mat4{};
    return r;
}

/// The four published relation words expressing B, D, E, F through (12),
/// (1234), A and C.
inline const std::map<std::string, Word>& paper_relation_words() {
    static const std::map<std::string, Word> words = {
        {"B", {{"(1234)", 2}, {"(12)", 1}, {"A", -2}, {"(12)", 1}}},
        {"D", {{"(1234)", 3}, {"(12)", 1}, {"C", 1}, {"(1234)", 3}}},
        {"E", {{"A", -1}, {"(1234)", 2}, {"(12)", 1}, {"A", -1}, {"(12)", 1}}},
        {"F", {{"C", 1}, {"(12)", 1}, {"(1234)", 2}, {"A", -1}, {"(12)", 1}}},
    };
    return words;
}

/// Checks each published relation entrywise; failures carry the nonzero
/// difference matrix.  No exceptions: the verdicts are the report.
inline std::vector<RelationCheck> verify_paper_relations() {
    const auto& catalog = paper_catalog();
    std::vector<RelationCheck> out;
    for (const auto& [name, word] : paper_relation_words())
        out.push_back(check_relation(name, word, catalog));
    return out;
}

struct CosetClass {
    Isometry canonical;           // lex-least element of the double coset
    std::vector<int> member_ids;  // input indices landing in this class
    int inverse_class = -1;       // class index of the inverses

    explicit CosetClass(Isometry canon) : canonical(std::move(canon)) {}
};

/// Partitions the inputs and their inverses into stabilizer double cosets and
/// returns one canonical representative per coset, ordered by (a44, entries).
/// Invariant under input permutation and under replacing g by s1 * g * s2.
inline std::vector<CosetClass> reduce_face_pairings(std::span<const Isometry> fp,
                                                    const StabilizerGroup& stab) {
    std::map<Isometry, CosetClass> classes;
    for (size_t i = 0; i < fp.size(); ++i) {
        const Isometry canon = canonicalize_by_stabilizer(fp[i], stab);
        auto it = classes.try_emplace(canon, canon).first;
        it->second.member_ids.push_back(static_cast<int>(i));
        const Isometry canon_inv = canonicalize_by_stabilizer(fp[i].inverse(), stab);
        classes.try_emplace(canon_inv, canon_inv);
    }
    std::vector<CosetClass> out;
    for (auto& [canon, cls] : classes) out.push_back(std::move(cls));
    std::sort(out.begin(), out.end(), [](const CosetClass& a, const CosetClass& b) {
        const Int& da = a.canonical.displacement_cosh();
        const Int& db = b.canonical.displacement_cosh();
        if (da != db) return da < db;
        return a.canonical < b.canonical;
    });
    for (size_t i = 0; i < out.size(); ++i) {
        const Isometry inv_canon = canonicalize_by_stabilizer(out[i].canonical.inverse(), stab);
        for (size_t j = 0; j < out.size(); ++j)
            if (out[j].canonical == inv_canon) {
                out[i].inverse_class = static_cast<int>(j);
                break;
            }
    }
    return out;
}

struct GenerationEntry {
    bool reached = false;
    Word word;        // witness, length <= radius, empty for the identity
    long length = 0;  // minimal over the searched split
};

struct GenerationReport {
    int radius = 0;
    bool all_reached = false;
    size_t reached_count = 0;
    std::vector<GenerationEntry> entries;  // parallel to the target list
};

namespace detail {

struct BallEntry {
    Mat4 m;
    int parent = -1;  // index into the ball
    int letter = -1;  // index into the letter table
    int depth = 0;
};

struct LetterTable {
    std::vector<std::string> names;
    std::vector<long> exps;
    std::vector<Isometry> values;
};

inline LetterTable expand_letters(const std::map<std::string, Isometry>& gens) {
    LetterTable t;
    for (const auto& [name, g] : gens) {
        t.names.push_back(name);
        t.exps.push_back(1);
        t.values.push_back(g);
        Isometry inv = g.inverse();
        if (inv != g) {
            t.names.push_back(name);
            t.exps.push_back(-1);
            t.values.push_back(std::move(inv));
        }
    }
    return t;
}

/// Breadth-first ball of the given word radius; deterministic order.
inline std::pair<std::vector<BallEntry>, std::unordered_map<Mat4, int, Mat4Hash>>
grow_ball(const LetterTable& letters, int radius) {
    std::vector<BallEntry> ball;
    std::unordered_map<Mat4, int, Mat4Hash> index;
    ball.push_back(BallEntry{Mat4::identity(), -1, -1, 0});
    index.emplace(Mat4::identity(), 0);
    size_t level_begin = 0;
    for (int depth = 1; depth <= radius; ++depth) {
        const size_t level_end = ball.size();
        for (size_t i = level_begin; i < level_end; ++i)
            for (size_t l = 0; l < letters.values.size(); ++l) {
                Mat4 p = ball[i].m * letters.values[l].matrix();
                if (index.contains(p)) continue;
                index.emplace(p, static_cast<int>(ball.size()));
                ball.push_back(BallEntry{std::move(p), static_cast<int>(i),
                                         static_cast<int>(l), depth});
            }
        level_begin = level_end;
    }
    return {std::move(ball), std::move(index)};
}

inline Word word_of(const std::vector<BallEntry>& ball, const LetterTable& letters, int id) {
    std::vector<int> seq;
    for (int cur = id; cur > 0; cur = ball[static_cast<size_t>(cur)].parent)
        seq.push_back(ball[static_cast<size_t>(cur)].letter);
    std::reverse(seq.begin(), seq.end());
    Word w;
    for (int l : seq) {
        const long e = letters.exps[static_cast<size_t>(l)];
        if (!w.empty() && w.back().name == letters.names[static_cast<size_t>(l)] &&
            (w.back().exponent > 0) == (e > 0))
            w.back().exponent += e;
        else
            w.push_back(WordTerm{letters.names[static_cast<size_t>(l)], e});
    }
    return w;
}

}  // namespace detail

/// For each target, finds a word of length <= radius in the generators and
/// their inverses, or reports it unreached.  Identical reports for any thread
/// count: per-target minima are independent of the sharding.
inline GenerationReport verify_generation(std::span<const Isometry> targets,
                                          const std::map<std::string, Isometry>& gens,
                                          int radius, unsigned threads = 0) {
    if (radius < 1) throw std::invalid_argument("verify_generation: radius must be >= 1");
    if (gens.empty()) throw std::invalid_argument("verify_generation: no generators");
    const Int n = gens.begin()->second.form_n();
    const detail::LetterTable letters = detail::expand_letters(gens);

    const int a = (radius + 1) / 2;  // |u| <= a, |v| <= radius - a
    const int b = radius - a;
    auto [ball, index] = detail::grow_ball(letters, a);

    // u^{-1} as matrices, in ball order, with the cheap a44-of-product filter
    std::vector<Mat4> inv;
    inv.reserve(ball.size());
    for (const auto& e : ball) inv.push_back(Isometry::from_matrix(e.m, n).inverse().matrix());
    Int max_a44 = 1;
    for (const auto& e : ball)
        if (e.depth <= b && e.m.at(3, 3) > max_a44) max_a44 = e.m.at(3, 3);

    GenerationReport report;
    report.radius = radius;
    report.entries.resize(targets.size());

    auto solve_one = [&](size_t ti) {
        const Mat4& t = targets[ti].matrix();
        GenerationEntry& entry = report.entries[ti];
        long best = -1;
        int best_u = -1, best_v = -1;
        for (size_t ui = 0; ui < ball.size(); ++ui) {
            const detail::BallEntry& u = ball[ui];
            if (best >= 0 && u.depth >= best) break;  // ball is depth-sorted
            // a44 of u^{-1} t without the full product
            Int c44 = 0;
            for (int k = 0; k < 4; ++k) c44 += inv[ui].at(3, k) * t.at(k, 3);
            if (c44 < 1 || c44 > max_a44) continue;
            Mat4 v = inv[ui] * t;
            auto it = index.find(v);
            if (it == index.end()) continue;
            const detail::BallEntry& ve = ball[static_cast<size_t>(it->second)];
            if (ve.depth > b) continue;
            const long total = u.depth + ve.depth;
            if (best < 0 || total < best) {
                best = total;
                best_u = static_cast<int>(ui);
                best_v = it->second;
            }
        }
        if (best < 0) return;
        entry.reached = true;
        entry.length = best;
        Word w = detail::word_of(ball, letters, best_u);
        const Word tail = detail::word_of(ball, letters, best_v);
        // merge adjacent powers across the seam
        for (const WordTerm& term : tail) {
            if (!w.empty() && w.back().name == term.name &&
                (w.back().exponent > 0) == (term.exponent > 0))
                w.back().exponent += term.exponent;
            else
                w.push_back(term);
        }
        entry.word = std::move(w);
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads <= 1 || targets.size() < 2) {
        for (size_t i = 0; i < targets.size(); ++i) solve_one(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < targets.size(); i = next.fetch_add(1))
                    solve_one(i);
            });
        for (auto& th : pool) th.join();
    }

    for (const auto& e : report.entries)
        if (e.reached) ++report.reached_count;
    report.all_reached = report.reached_count == targets.size();
    return report;
}

}  // namespace lorentz
