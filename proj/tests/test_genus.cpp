#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace gemkit;

TEST_CASE("permutations") {
    CHECK(canonical_perms(5).size() == 12);
    CHECK(canonical_perms(4).size() == 3);
    CHECK(canonical_perms(3).size() == 1);
    CHECK(parse_perm("(0,2,1,3,4)").str() == "02134");
    CHECK_THROWS(parse_perm("01134"));
    CHECK_THROWS(parse_perm("0a"));
    // a cyclic shift and the reversal land on the same class
    CHECK(parse_perm("23401").canonical().str() == "01234");
    CHECK(parse_perm("32104").canonical().str() == "01234");
    CHECK(parse_perm("01234").associated().str() == "02413");
    CHECK(parse_perm("01234").without(4).str() == "0123");
    Perm p = parse_perm("01234");
    CHECK(p[-1] == 4);
    CHECK(p[6] == 1);
}

TEST_CASE("regular genus matches face tracing") {
    for (auto name : {"s4.gem", "cp2.gem", "s2xs2.gem", "y4_1.gem", "y4_3.gem", "links/unknot_0.gem", "links/trefoil_p1.gem"}) {
        Graph g = testing::load(name);
        for (auto& eps : canonical_perms(5)) {
            INFO(name, " ", eps.str());
            CHECK(regular_genus(g, eps) == testing::traced_genus(g, eps));
        }
    }
    Graph s3 = testing::load("s3.gem");
    for (auto& eps : canonical_perms(4)) CHECK(regular_genus(s3, eps) == 0);
}

TEST_CASE("order-two graph has genus zero everywhere") {
    Graph g = Graph::order_two(5);
    for (auto& eps : canonical_perms(5)) {
        auto pr = genus_profile(g, eps, Context{});
        CHECK(pr.rho == 0);
        for (int h : pr.rho_hat) CHECK(h == 0);
        CHECK(pr.q == 0);
        CHECK(euler_char(g, eps).value() == 2);
    }
}

TEST_CASE("CP2 crystallization") {
    Graph g = testing::load("cp2.gem");
    REQUIRE(g.order() == 8);
    REQUIRE(is_crystallization(g));
    Context ctx{0, 0, true};
    for (auto& eps : canonical_perms(5)) {
        INFO(eps.str());
        CHECK(regular_genus(g, eps) == 2);
        CHECK(is_weak_semi_simple(g, eps, ctx));
        auto chi = euler_char(g, eps);
        CHECK(chi.agree);
        CHECK(chi.value() == 3);
        auto d = check_rho_difference(g, eps, ctx);
        CHECK(d.difference_ok);
        CHECK(d.bound_ok);
        CHECK(d.rho_chi_ok);
    }
    CHECK(is_semi_simple(g, ctx));
}

TEST_CASE("Euler characteristics of fixtures") {
    struct Case {
        const char* file;
        int chi;
    };
    // closed: 2 + b2; handlebodies with the boundary coned off: 2 - h
    for (auto c : {Case{"s4.gem", 2}, Case{"cp2.gem", 3}, Case{"s2xs2.gem", 4}, Case{"y4_1.gem", 1}, Case{"y4_2.gem", 0},
                   Case{"y4_4.gem", -2}, Case{"links/hopf_00.gem", 4}}) {
        Graph g = testing::load(c.file);
        for (auto& eps : canonical_perms(5)) {
            auto r = euler_char(g, eps);
            CHECK(r.agree);
            CHECK(r.value() == c.chi);
        }
    }
}

TEST_CASE("defects and the residue-count relation") {
    Graph g = testing::load("y4_1.gem");
    Context ctx{1, 0, true};
    auto t = defects(g, ctx);
    CHECK(t.size() == 10);
    for (auto& [s, v] : t) CHECK(v >= 0);
    for (auto& eps : canonical_perms(5)) {
        auto pr = genus_profile(g, eps, ctx);
        CHECK(eq_subgenera(g, eps, pr));
        CHECK(is_weak_semi_simple(g, eps, ctx));
    }
    // a rank that is too large drives some defect negative
    CHECK_THROWS_AS(genus_profile(g, canonical_perms(5)[0], Context{3, 0, true}), IdentityError);
}

TEST_CASE("regular genus rejects bad input") {
    Graph g = Graph::order_two(5);
    CHECK_THROWS(regular_genus(g, parse_perm("0123")));
    std::vector<std::vector<int>> adj{{1, 0, 3, 2}, {3, 2, 1, 0}, {2, 3, 0, 1}};
    CHECK_THROWS(regular_genus(Graph::make(3, adj), parse_perm("012")));
}

TEST_CASE("profile row") {
    auto row = profile_row("cp2", testing::load("cp2.gem"), parse_perm("01234"), Context{});
    CHECK(row["rho"] == 2);
    CHECK(row["chi"] == 3);
    CHECK(row["checks"]["subgenera"] == true);
    CHECK(row["checks"]["rho_difference"] == true);
    CHECK(row["defects"].size() == 10);
}
