#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>

#include "doctest.h"
#include "gemkit/pi1.hpp"
#include "support.hpp"

using namespace gemkit;

TEST_CASE("presentation syntax") {
    Presentation p = parse_presentation("<a,b | abAB>");
    CHECK(p.gens == 2);
    REQUIRE(p.rels.size() == 1);
    CHECK(p.rels[0] == Word{1, 2, -1, -2});
    CHECK(parse_presentation("<a,b | aba^-1b^-1>").rels == p.rels);
    CHECK(parse_presentation(to_string(p)).rels == p.rels);
    Presentation q = parse_presentation("<x,y | xy, y>");
    CHECK(q.rels.size() == 2);
    CHECK_THROWS(parse_presentation("a,b | ab"));
    CHECK_THROWS(parse_presentation("<a | ab>"));
    CHECK_THROWS(parse_presentation("<ab | a>"));
}

TEST_CASE("smith normal form") {
    CHECK(smith_cokernel({{2}}, 1).torsion == std::vector<long long>{2});
    auto a = smith_cokernel({{2, 4}, {6, 8}}, 2);
    CHECK(a.betti == 0);
    CHECK(a.torsion == std::vector<long long>{2, 4});
    auto b = smith_cokernel({{0, 0, 0}}, 3);
    CHECK(b.betti == 3);
    CHECK(smith_cokernel({{1, 1}, {1, -1}}, 2).torsion == std::vector<long long>{2});
    CHECK(smith_cokernel({}, 2).betti == 2);
}

TEST_CASE("abelianization") {
    CHECK(abelianization(parse_presentation("<a,b | abAB>")).betti == 2);
    auto t = abelianization(parse_presentation("<a | aaa>"));
    CHECK(t.betti == 0);
    CHECK(t.torsion == std::vector<long long>{3});
    CHECK(abelianization(parse_presentation("<a,b | ab, aab>")).trivial());
}

TEST_CASE("gem presentations") {
    SUBCASE("simply connected fixtures") {
        for (auto name : {"s4.gem", "cp2.gem", "s2xs2.gem", "links/trefoil_p1.gem"}) {
            Graph g = testing::load(name);
            for (int i = 0; i < 5; ++i) CHECK(abelianization(presentation(g, i)).trivial());
        }
    }
    SUBCASE("handlebodies") {
        for (int h = 1; h <= 3; ++h) {
            Graph g = testing::load("y4_" + std::to_string(h) + ".gem");
            auto ab = abelianization(presentation(g, 0));
            CHECK(ab.betti == h);
            CHECK(ab.torsion.empty());
        }
    }
    SUBCASE("provenance") {
        Graph g = testing::load("cp2.gem");
        Presentation p = presentation(g, 4);
        CHECK(p.color == 4);
        CHECK(int(p.gen_vertex.size()) == p.gens);
        CHECK(p.gens == g.order() / 2);
        CHECK(p.rel_color.size() == p.rels.size());
        CHECK(to_json(p)["generators"] == p.gens);
    }
}

TEST_CASE("collapse search") {
    SUBCASE("commutator has no free move") {
        auto t = collapse_search(parse_presentation("<a,b | abAB>"));
        CHECK(t.outcome == CollapseTrace::stuck);
        CHECK(t.steps.empty());
        CHECK_FALSE(t.greedy);
    }
    SUBCASE("a chain collapses and replays") {
        Presentation p = parse_presentation("<a,b,c | ab, bcB, cA>");
        auto t = collapse_search(p);
        CHECK(t.outcome == CollapseTrace::trivialized);
        CHECK(t.steps.size() == 3);
        CHECK(replay(p, t.steps) == 0);
        CHECK(replay(p, {{0, 0}, {0, 0}}) == -1);
        CHECK(to_json(t)["outcome"] == "trivialized");
    }
    SUBCASE("squares block the move") {
        auto t = collapse_search(parse_presentation("<a | aa>"));
        CHECK(t.outcome == CollapseTrace::stuck);
        CHECK(t.square_seen);
    }
    SUBCASE("gem presentations collapse") {
        for (auto name : {"s4.gem", "cp2.gem", "y4_2.gem", "links/hopf_00.gem"}) {
            Presentation p = presentation(testing::load(name), 4);
            auto t = collapse_search(p);
            CHECK(t.outcome == CollapseTrace::trivialized);
            CHECK(replay(p, t.steps) == 0);
        }
    }
}

TEST_CASE("budget from the environment") {
    ::unsetenv("GEMKIT_BUDGET");
    CHECK(default_budget() == 1000000);
    ::setenv("GEMKIT_BUDGET", "1234", 1);
    CHECK(default_budget() == 1234);
    ::setenv("GEMKIT_BUDGET", "lots", 1);
    CHECK(default_budget(99) == 99);
    ::unsetenv("GEMKIT_BUDGET");
}
