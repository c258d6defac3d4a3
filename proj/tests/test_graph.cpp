#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace gemkit;

TEST_CASE("order-two graph") {
    Graph g = Graph::order_two(5);
    CHECK(g.order() == 2);
    CHECK(g.colors() == 5);
    CHECK(g.bipartite());
    CHECK(g.connected());
    for (ColorSet s = 1; s < all_colors(5); ++s) CHECK(count(g, s) == 1);
}

TEST_CASE("text parse with comments and blank lines") {
    Graph g = parse_gem("# leading comment\n\ngem 4 2\n0 0 1   # trailing\n1 1 0\n2 0 1\n3 0 1\n");
    CHECK(g == Graph::order_two(4));
}

TEST_CASE("parse errors carry their kind and position") {
    SUBCASE("missing edge") {
        try {
            parse_gem("gem 4 2\n0 0 1\n1 0 1\n2 0 1\n");
            FAIL("accepted");
        } catch (const ParseError& e) {
            CHECK(e.kind == ParseError::Degree);
            CHECK(e.color == 3);
        }
    }
    SUBCASE("loop") {
        try {
            parse_gem("gem 4 2\n0 0 1\n1 1 1\n");
            FAIL("accepted");
        } catch (const ParseError& e) {
            CHECK(e.kind == ParseError::Loop);
            CHECK(e.line == 3);
        }
    }
    SUBCASE("duplicate color at a vertex") {
        try {
            parse_gem("gem 3 4\n0 0 1\n0 0 2\n");
            FAIL("accepted");
        } catch (const ParseError& e) {
            CHECK(e.kind == ParseError::Duplicate);
            CHECK(e.vertex == 0);
        }
    }
    SUBCASE("syntax") {
        try {
            parse_gem("gem 4 2\n0 0 x\n");
            FAIL("accepted");
        } catch (const ParseError& e) {
            CHECK(e.kind == ParseError::Syntax);
            CHECK(e.line == 2);
            CHECK(e.col == 5);
        }
        CHECK_THROWS_AS(parse_gem("graph 4 2\n"), ParseError);
        CHECK_THROWS_AS(parse_gem("gem 4 3\n"), ParseError);
        CHECK_THROWS_AS(parse_gem("gem 4 2\n7 0 1\n"), ParseError);
        CHECK_THROWS_AS(parse_gem(""), ParseError);
    }
}

TEST_CASE("json twin parses to the same graph") {
    for (auto name : {"s3.gem", "s4.gem", "cp2.gem", "y4_1.gem", "links/trefoil_p1.gem"}) {
        Graph g = testing::load(name);
        std::string j = to_json(g).dump();
        CHECK(parse_gem_json(j) == g);
        CHECK(parse_any(j) == g);
        CHECK(parse_gem(to_text(g)) == g);
    }
    CHECK_THROWS_AS(parse_gem_json("{\"colors\":4,\"vertices\":2,\"edges\":[[0,0,1]]}"), ParseError);
    CHECK_THROWS_AS(parse_gem_json("{nope"), ParseError);
}

TEST_CASE("json edges are sorted by color then endpoint") {
    auto edges = to_json(testing::load("cp2.gem"))["edges"];
    for (std::size_t i = 1; i < edges.size(); ++i) {
        auto a = edges[i - 1], b = edges[i];
        CHECK(std::pair(a[0].get<int>(), a[1].get<int>()) < std::pair(b[0].get<int>(), b[1].get<int>()));
        CHECK(a[1].get<int>() < a[2].get<int>());
    }
}

TEST_CASE("make rejects malformed adjacency") {
    CHECK_THROWS(Graph::make(2, {{1, 0}, {0, 0}}));
    CHECK_THROWS(Graph::make(1, {{1, 2, 0, 3}}));
    CHECK_THROWS(Graph::make(1, {{0, 1}}));
}

TEST_CASE("residues and bicolored cycles") {
    Graph g = testing::load("cp2.gem");
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            auto cyc = cycles(g, i, j);
            CHECK(int(cyc.size()) == count(g, bit(i) | bit(j)));
            std::size_t total = 0;
            for (auto& c : cyc) {
                total += c.size();
                CHECK(c.size() % 2 == 0);
                CHECK(c.front() == *std::min_element(c.begin(), c.end()));
            }
            CHECK(total == std::size_t(g.order()));
        }
    Residues r = residues(g, hat(5, 4));
    CHECK(r.count == 1);
    Graph sub = restrict(g, hat(5, 4), r.components()[0]);
    CHECK(sub.colors() == 4);
    CHECK(sub.order() == g.order());
}

TEST_CASE("odd cycle is not bipartite") {
    // colors 0 and 1 form a square, color 2 joins its diagonals
    std::vector<std::vector<int>> adj{{1, 0, 3, 2}, {3, 2, 1, 0}, {2, 3, 0, 1}};
    Graph g = Graph::make(3, adj);
    CHECK_FALSE(g.bipartite());
    CHECK(g.connected());
}

TEST_CASE("classify") {
    SUBCASE("S4 is a crystallization in the normal class") {
        ClassTag t = classify(Graph::order_two(5));
        CHECK(t.bipartite);
        CHECK(t.crystallization);
        CHECK(t.in_gs4);
        for (auto s : t.singular) CHECK(s == Tri::no);
    }
    SUBCASE("handlebody has singular color 4 only") {
        ClassTag t = classify(testing::load("y4_1.gem"));
        CHECK(t.crystallization);
        for (int c = 0; c < 4; ++c) CHECK(t.singular[c] == Tri::no);
        CHECK(t.singular[4] == Tri::yes);
        CHECK(t.in_gs4);
    }
    SUBCASE("a singular color below 4 keeps a graph out of the normal class") {
        ClassTag t = classify(testing::load("stuck.gem"));
        CHECK(count(testing::load("stuck.gem"), hat(5, 4)) == 1);
        CHECK_FALSE(t.in_gs4);
    }
    SUBCASE("a 1-dipole breaks crystallization") {
        Graph g = add_dipole_at(Graph::order_two(5), 0, bit(2));
        ClassTag t = classify(g);
        CHECK_FALSE(t.crystallization);
        CHECK(g.order() == 4);
    }
}
