#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "lorentz/stabilizer.hpp"

using namespace lorentz;

TEST_CASE("stabilizer has order 24 and the printed generators") {
    const StabilizerGroup stab = build_stabilizer();
    REQUIRE(stab.elements.size() == 24);
    const auto& cat = paper_catalog();
    CHECK(stab.gen_s == cat.at("(12)"));
    CHECK(stab.gen_r == cat.at("(1234)"));
    CHECK(std::binary_search(stab.elements.begin(), stab.elements.end(), cat.at("(12)")));
    CHECK(std::binary_search(stab.elements.begin(), stab.elements.end(), cat.at("(1234)")));
    CHECK(std::binary_search(stab.elements.begin(), stab.elements.end(), Isometry::identity(7)));
}

TEST_CASE("every element fixes the base point from both sides") {
    const StabilizerGroup stab = build_stabilizer();
    for (const Isometry& s : stab.elements) {
        CHECK(s.fixes_basepoint());
        const Mat4& m = s.matrix();
        CHECK((m.at(3, 0) == 0 && m.at(3, 1) == 0 && m.at(3, 2) == 0 && m.at(3, 3) == 1));
        CHECK(s.displacement_cosh() == 1);
    }
}

TEST_CASE("closed under product and inverse") {
    const StabilizerGroup stab = build_stabilizer();
    std::set<Isometry> all(stab.elements.begin(), stab.elements.end());
    for (const Isometry& a : stab.elements) {
        CHECK(all.contains(a.inverse()));
        for (const Isometry& b : stab.elements) CHECK(all.contains(multiply(a, b)));
    }
}

TEST_CASE("cone membership is strict") {
    CHECK(cone_contains(ChartPoint{{Rat(3, 10), Rat(2, 10), Rat(1, 10)}}));
    CHECK_FALSE(cone_contains(ChartPoint{{Rat(0), Rat(0), Rat(0)}}));
    CHECK_FALSE(cone_contains(ChartPoint{{Rat(2, 10), Rat(3, 10), Rat(1, 10)}}));
    CHECK_FALSE(cone_contains(ChartPoint{{Rat(3, 10), Rat(2, 10), Rat(0)}}));
    CHECK_FALSE(cone_contains(ChartPoint{{Rat(2, 10), Rat(2, 10), Rat(1, 10)}}));
}

TEST_CASE("canonical form of the identity's double coset") {
    const StabilizerGroup stab = build_stabilizer();
    const Isometry canon = canonicalize_by_stabilizer(Isometry::identity(7), stab);
    Mat4 expected;
    expected.at(0, 0) = -1;
    expected.at(1, 1) = -1;
    expected.at(2, 2) = 1;
    expected.at(3, 3) = 1;
    CHECK(canon.matrix() == expected);
    // same canonical form from any stabilizer element
    for (size_t i = 0; i < stab.elements.size(); i += 5)
        CHECK(canonicalize_by_stabilizer(stab.elements[i], stab) == canon);
}

TEST_CASE("canonicalization is constant on double cosets and idempotent") {
    const StabilizerGroup stab = build_stabilizer();
    const auto& cat = paper_catalog();
    const Isometry a = cat.at("A");
    const Isometry moved = multiply(multiply(cat.at("(12)"), a), cat.at("(1234)"));
    CHECK(canonicalize_by_stabilizer(a, stab) == canonicalize_by_stabilizer(moved, stab));
    const Isometry canon = canonicalize_by_stabilizer(a, stab);
    CHECK(canonicalize_by_stabilizer(canon, stab) == canon);
    CHECK(canon.displacement_cosh() == a.displacement_cosh());
    CHECK(canonicalize_by_stabilizer(a, stab) != canonicalize_by_stabilizer(cat.at("C"), stab));
}

TEST_CASE("orbit structure of the cone under the chart action") {
    // The printed cone u1 > u2 > u3 > 0 is one of 48 reflection chambers,
    // while the stabilizer holds only the 24 rotations: a generic orbit
    // visits 24 chambers of one parity, so the cone catches exactly one
    // image when the seed's chamber has even parity and none otherwise.
    // The parity-free fundamental domain is the double chamber
    // u1 > u2 > |u3| > 0.
    const StabilizerGroup stab = build_stabilizer();
    std::mt19937 rng(99173);
    std::uniform_int_distribution<int> num(1, 40);
    auto in_double_chamber = [](const ChartPoint& q) {
        return q.u[0] > q.u[1] && q.u[1] > abs(q.u[2]) && q.u[2] != 0;
    };
    for (int trial = 0; trial < 25; ++trial) {
        std::set<Rat> coords;
        while (coords.size() < 3) coords.insert(Rat(num(rng), 100));
        std::vector<Rat> c(coords.begin(), coords.end());
        const ChartPoint descending{{c[2], c[1], c[0]}};  // even parity: inside the cone
        const ChartPoint ascending{{c[0], c[1], c[2]}};   // odd parity (swap of 1 and 3)
        for (const auto& [p, cone_hits] :
             {std::pair{descending, 1}, std::pair{ascending, 0}}) {
            std::set<ChartPoint> images;
            int inside = 0, in_double = 0;
            for (const Isometry& s : stab.elements) {
                const ChartPoint q = apply_isometry_chart(s, p);
                images.insert(q);
                if (cone_contains(q)) ++inside;
                if (in_double_chamber(q)) ++in_double;
            }
            CHECK(images.size() == 24);
            CHECK(inside == cone_hits);
            CHECK(in_double == 1);
        }
    }
}
