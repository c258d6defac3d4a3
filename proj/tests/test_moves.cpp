#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "gemkit/linkforge.hpp"
#include "support.hpp"

using namespace gemkit;

namespace {

bool consecutive(const Perm& eps, ColorSet d) {
    for (int i = 0; i < 5; ++i)
        if ((bit(eps[i]) | bit(eps[i + 1])) == d) return true;
    return false;
}

}  // namespace

TEST_CASE("insert then eliminate is the identity") {
    std::mt19937 rng(7);
    for (int round = 0; round < 200; ++round) {
        Graph g = testing::random_gem(rng, Graph::order_two(5), 16);
        int x = std::uniform_int_distribution<int>(0, g.order() - 1)(rng);
        ColorSet cs = std::uniform_int_distribution<unsigned>(1, 30)(rng);
        Graph h = add_dipole_at(g, x, cs);
        REQUIRE(h.order() == g.order() + 2);
        CHECK(h.bipartite());
        CHECK(is_dipole(h, g.order(), g.order() + 1, cs));
        CHECK(eliminate_dipole(h, {g.order(), g.order() + 1, cs, Tri::yes}) == g);
    }
}

TEST_CASE("2-dipoles change the regular genus by the consecutivity rule") {
    std::mt19937 rng(11);
    int checked = 0;
    for (int round = 0; round < 100; ++round) {
        Graph g = testing::random_gem(rng, Graph::order_two(5), 14);
        int x = std::uniform_int_distribution<int>(0, g.order() - 1)(rng);
        int a = std::uniform_int_distribution<int>(0, 4)(rng), b = (a + 1 + round % 4) % 5;
        ColorSet d = bit(a) | bit(b);
        Graph h = add_dipole_at(g, x, d);
        for (auto& eps : canonical_perms(5)) {
            // eliminating the dipole keeps rho when its colors are adjacent in eps, drops it by one otherwise
            int drop = consecutive(eps, d) ? 0 : 1;
            CHECK(testing::traced_genus(h, eps) - testing::traced_genus(g, eps) == drop);
            CHECK(regular_genus(h, eps) - regular_genus(g, eps) == drop);
            ++checked;
        }
    }
    CHECK(checked == 1200);
}

TEST_CASE("find and eliminate dipoles") {
    Graph g = add_dipole_at(add_dipole_at(Graph::order_two(5), 0, bit(0) | bit(1)), 2, bit(3));
    auto ds = find_dipoles(g);
    REQUIRE_FALSE(ds.empty());
    for (std::size_t i = 1; i < ds.size(); ++i) CHECK(ds[i - 1].order() >= ds[i].order());
    for (auto& d : ds) {
        CHECK(is_dipole(g, d.u, d.v, d.colors));
        if (d.proper == Tri::yes) CHECK(eliminate_dipole(g, d).order() == g.order() - 2);
    }
    CHECK_FALSE(is_dipole(g, 0, 0, bit(1)));
    CHECK(reduce_dipoles(g, 1000) == Graph::order_two(5));
}

TEST_CASE("random S4 gems reduce to order two") {
    std::mt19937 rng(3);
    for (int round = 0; round < 50; ++round) {
        Graph g = testing::random_gem(rng, Graph::order_two(5), 20);
        std::vector<Move> trace;
        Graph r = reduce_dipoles(g, 10000, &trace);
        CHECK(r.order() == 2);
        CHECK(int(trace.size()) == (g.order() - 2) / 2);
    }
}

TEST_CASE("sphere recognition") {
    CHECK(sphere_reduce(Graph::order_two(4)).sphere == Tri::yes);
    std::mt19937 rng(5);
    for (int i = 0; i < 20; ++i) CHECK(sphere_reduce(testing::random_gem(rng, Graph::order_two(4), 20)).sphere == Tri::yes);
    SUBCASE("surfaces") {
        Graph g = testing::load("s2xs2.gem");
        for (auto& comp : residues(g, bit(0) | bit(1) | bit(2)).components()) {
            auto v = sphere_reduce(restrict(g, bit(0) | bit(1) | bit(2), comp));
            CHECK(v.sphere == Tri::yes);
            CHECK(v.genus == 0);
        }
    }
    SUBCASE("the handlebody boundary is not a sphere") {
        Graph g = testing::load("y4_1.gem");
        auto v = sphere_reduce(restrict(g, hat(5, 4), residues(g, hat(5, 4)).components()[0]));
        CHECK(v.sphere == Tri::no);
        CHECK(v.betti == 1);
    }
    SUBCASE("lens space from +2 surgery on the unknot") {
        auto s = self_frame(parse_link("PD[] framings: 2"));
        auto v = sphere_reduce(reduce_lambda(s));
        CHECK(v.sphere == Tri::no);
        CHECK(v.betti == 0);
        CHECK(v.torsion == std::vector<long long>{2});
    }
    CHECK_THROWS(sphere_reduce(Graph::order_two(5)));
}

TEST_CASE("normalize keeps one 4-hat residue") {
    // a 1-dipole of color 4 splits the 4-hat residue
    Graph g = add_dipole_at(testing::load("cp2.gem"), 1, bit(4));
    REQUIRE(count(g, hat(5, 4)) == 2);
    std::vector<Move> trace;
    Graph n = normalize_to_gs4(g, &trace);
    CHECK(count(n, hat(5, 4)) == 1);
    CHECK(trace.size() == 1);
    CHECK(n.order() == 8);
    CHECK(trace_json(trace).size() == 1);
}

TEST_CASE("capping off") {
    Graph g = testing::load("cp2.gem");
    auto cyc = cycles(g, 0, 4);
    auto adj = g.adjacency();
    std::vector<char> boundary(g.order(), 0);
    for (int v : cyc[0]) adj[4][v] = -1, boundary[v] = 1;
    Graph h = capping_off(adj, 0);
    CHECK(h.bipartite());
    for (auto& c : cycles(h, 0, 4)) {
        int inside = 0;
        for (int v : c) inside += boundary[v];
        CHECK((inside == 0 || inside == int(c.size())));
    }
    CHECK_THROWS(capping_off(adj, 4));
}

TEST_CASE("connected sum") {
    Graph a = testing::load("cp2.gem"), b = testing::load("y4_1.gem");
    Graph s = connected_sum(a, 3, b, 0);
    CHECK(s.order() == a.order() + b.order() - 2);
    CHECK(s.bipartite());
    for (ColorSet c = 1; c < all_colors(5); ++c) CHECK(count(s, c) == count(a, c) + count(b, c) - 1);
    // the order-two graph is neutral
    CHECK(connected_sum(a, 5, Graph::order_two(5), 0) == a);
    CHECK(connected_sum(a, 5, Graph::order_two(5), 1) == a);
    CHECK_THROWS(connected_sum(a, 0, Graph::order_two(4), 0));
}
