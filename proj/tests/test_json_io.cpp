#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lorentz/json_io.hpp"

using namespace lorentz;

TEST_CASE("isometry serialization") {
    const Isometry a = paper_catalog().at("A");
    const json j = to_json(a);
    CHECK(j.at("n") == 7);
    CHECK(j.at("matrix").size() == 4);
    CHECK(j.at("matrix").at(0) == json::array({-2, -2, 0, 7}));
    CHECK(isometry_from_json(j) == a);
}

TEST_CASE("rationals travel as reduced p/q strings") {
    CHECK(rat_to_string(Rat(7, 6)) == "7/6");
    CHECK(rat_to_string(Rat(0)) == "0/1");
    CHECK(rat_to_string(Rat(-35, 6)) == "-35/6");
    CHECK(rat_to_string(Rat(4, 2)) == "2/1");
    CHECK(rat_from_string("7/6") == Rat(7, 6));
    CHECK(rat_from_string("-35/6") == Rat(-35, 6));

    std::mt19937 rng(808);
    std::uniform_int_distribution<int> num(-300, 300);
    std::uniform_int_distribution<int> den(1, 300);
    for (int i = 0; i < 200; ++i) {
        const Rat r(num(rng), den(rng));
        CHECK(rat_from_string(rat_to_string(r)) == r);
    }
}

TEST_CASE("chart points") {
    const ChartPoint p{{Rat(7, 6), Rat(7, 3), Rat(0)}};
    const json j = to_json(p);
    CHECK(j == json::array({"7/6", "7/3", "0/1"}));
    CHECK(chartpoint_from_json(j) == p);
}

TEST_CASE("word round trip") {
    const Word w{{"(1234)", 2}, {"A", -2}, {"(12)", 1}};
    CHECK(word_from_json(to_json(w)).size() == 3);
    CHECK(to_string(word_from_json(to_json(w))) == to_string(w));
}

TEST_CASE("polytope and domain round trip") {
    const DomainResult r = compute_dirichlet_domain(7, 21);
    const json j = to_json(r);
    CHECK(j.at("schema") == kSchemaTag);
    const DomainResult back = domain_from_json(j);
    CHECK(back.n == r.n);
    CHECK(back.bound_T == r.bound_T);
    CHECK(back.certified == r.certified);
    CHECK(back.elements == r.elements);
    CHECK(back.voronoi.vertices == r.voronoi.vertices);
    CHECK(back.voronoi.bounded == r.voronoi.bounded);
    CHECK(back.domain.vertices == r.domain.vertices);
    REQUIRE(back.walls.size() == r.walls.size());
    for (size_t i = 0; i < r.walls.size(); ++i) {
        CHECK(back.walls[i].wall == r.walls[i].wall);
        CHECK(back.walls[i].element_ids == r.walls[i].element_ids);
        CHECK(back.walls[i].facet_support == r.walls[i].facet_support);
        CHECK(back.walls[i].min_margin == r.walls[i].min_margin);
    }
    // byte determinism of the serialized form
    CHECK(to_json(r).dump(2) == j.dump(2));
    CHECK(to_json(domain_from_json(j)).dump(2) == j.dump(2));
}

TEST_CASE("obj export shape") {
    const Polytope cube = intersect_halfspaces(
        std::vector<HalfSpace>{HalfSpace{{1, 0, 0}, 1}, HalfSpace{{-1, 0, 0}, 1},
                               HalfSpace{{0, 1, 0}, 1}, HalfSpace{{0, -1, 0}, 1},
                               HalfSpace{{0, 0, 1}, 1}, HalfSpace{{0, 0, -1}, 1}},
        7);
    const std::string obj = polytope_to_obj(cube, "cube");
    CHECK(obj.rfind("o cube\n", 0) == 0);
    long vlines = 0, flines = 0;
    for (size_t pos = 0; pos < obj.size();) {
        const size_t eol = obj.find('\n', pos);
        const std::string line = obj.substr(pos, eol - pos);
        if (line.rfind("v ", 0) == 0) ++vlines;
        if (line.rfind("f ", 0) == 0) ++flines;
        pos = eol + 1;
    }
    CHECK(vlines == 8);
    CHECK(flines == 12);  // 6 quads fan into 2 triangles each

    // offset shifts face indices for multi-object files
    const std::string shifted = polytope_to_obj(cube, "second", 8);
    CHECK(shifted.find("f 9 ") != std::string::npos);
}
