#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "gemkit/trisection.hpp"
#include "support.hpp"

using namespace gemkit;
namespace fs = std::filesystem;

TEST_CASE("tricolorings") {
    auto t = tricolorings(4);
    REQUIRE(t.size() == 3);
    CHECK(t[0].pairing() == "01|23");
    CHECK(t[1].pairing() == "02|13");
    CHECK(t[2].pairing() == "03|12");
    CHECK(tricolorings(0)[0].pairing() == "12|34");
    for (int a = 0; a < 5; ++a)
        for (auto& tc : tricolorings(a)) {
            auto back = tricoloring_of(tc.perm());
            CHECK(back.pairing() == tc.pairing());
            CHECK(back.apex == a);
        }
}

TEST_CASE("relabel apex swaps two colors") {
    Graph g = testing::load("cp2.gem");
    Graph h = relabel_apex(g, 1);
    for (int v = 0; v < g.order(); ++v) {
        CHECK(h(4, v) == g(1, v));
        CHECK(h(1, v) == g(4, v));
        CHECK(h(0, v) == g(0, v));
    }
    CHECK(relabel_apex(g, 4) == g);
}

TEST_CASE("S4 order-two graph") {
    Graph g = Graph::order_two(5);
    for (int a = 0; a < 5; ++a)
        for (auto& tc : tricolorings(a)) {
            auto r = trisect(g, tc, 1000);
            CHECK(r.verdict == Verdict::gem_induced);
            CHECK(r.genus_central == 0);
            CHECK(r.chi == 2);
            CHECK(r.checks_ok());
            CHECK(r.closed == Tri::yes);
        }
}

TEST_CASE("CP2 central surface is a torus") {
    Graph g = testing::load("cp2.gem");
    Context ctx{0, 0, true};
    std::vector<TrisectionReport> reps;
    for (auto& tc : tricolorings(4)) {
        auto r = trisect(g, tc, 100000, &ctx);
        CHECK(r.verdict == Verdict::gem_induced);
        CHECK(r.genus_central == 1);
        CHECK(r.chi == 3);
        CHECK(r.euler_split_ok);
        CHECK(r.weak_semi_simple == Tri::yes);
        reps.push_back(r);
    }
    auto b = gtg_bounds(reps, ctx, 0, 1);
    CHECK(b.lower == 1);
    CHECK(b.upper == 1);
    CHECK(b.tight);
    CHECK(b.weak_semi_simple_witness);
    CHECK(gtg_bounds(reps, ctx, 0, 1, 3).lower == 3);
    auto j = to_json(reps[0], true);
    CHECK(j["verdict"] == "gem_induced");
    CHECK(j["checks"]["routes_agree"] == true);
    CHECK(j.contains("presentation_trace"));
    CHECK(j.contains("spine_order"));
}

TEST_CASE("stuck graph is not collapsible through either route") {
    Graph g = testing::load("stuck.gem");
    auto r = trisect(g, tricolorings(4)[1], 100000);
    CHECK(r.verdict == Verdict::not_collapsible);
    CHECK(r.presentation_trace.outcome == CollapseTrace::stuck);
    CHECK(r.spine_trace.outcome == CollapseTrace::stuck);
    CHECK(r.routes_agree);
    // its residues are not all spheres, so the manifold identities need not hold
    CHECK_FALSE(r.checks_ok());
    CHECK_THROWS(gtg_bounds({r}, Context{}, 0, 0));
}

TEST_CASE("commutator complex") {
    Presentation p = parse_presentation("<a,b | abAB>");
    Spine sp = spine_of(p);
    CHECK(sp.label.size() == 1);
    CHECK(sp.edges == std::vector<std::vector<int>>{{0, 0}, {0, 0}});
    auto s = spine_collapse(sp, 1000);
    CHECK(s.outcome == CollapseTrace::stuck);
    CHECK(collapse_search(p, 1000).outcome == CollapseTrace::stuck);
    // a disk collapses
    CHECK(spine_collapse(spine_of(parse_presentation("<a | a>")), 10).outcome == CollapseTrace::trivialized);
}

TEST_CASE("spine and presentation routes agree on random gems") {
    std::mt19937 rng(19);
    for (int round = 0; round < 100; ++round) {
        Graph seed = round % 2 ? testing::load("cp2.gem") : Graph::order_two(5);
        Graph g = normalize_to_gs4(testing::random_gem(rng, seed, 20));
        auto a = collapse_search(presentation(g, 4), 100000).outcome;
        auto b = spine_collapse(g, 100000).outcome;
        CHECK(a == b);
    }
}

TEST_CASE("quasi-trisection preconditions") {
    CHECK_THROWS(quasi_trisection(Graph::order_two(4), parse_perm("0123")));
    Graph split = add_dipole_at(Graph::order_two(5), 0, bit(4));
    CHECK_THROWS(quasi_trisection(split, parse_perm("01234")));
}

TEST_CASE("collapse vertex") {
    Graph g = testing::load("y4_1.gem");
    int first = collapse_vertex(g, false, 1000), last = collapse_vertex(g, true, 1000);
    CHECK(first >= 0);
    CHECK(last < g.order());
    CHECK(g.bipartition()[first] == 0);
    CHECK(g.bipartition()[last] == 0);
    CHECK_THROWS(collapse_vertex(testing::load("stuck.gem"), true, 1000));
}

namespace {

fs::path scratch_catalog(const std::string& body) {
    fs::path dir = fs::temp_directory_path() / "gemkit_test_catalog";
    fs::create_directories(dir);
    fs::copy_file(testing::fixture("cp2.gem"), dir / "cp2.gem", fs::copy_options::overwrite_existing);
    fs::copy_file(testing::fixture("y4_1.gem"), dir / "y4_1.gem", fs::copy_options::overwrite_existing);
    std::ofstream(dir / "catalog.json") << body;
    return dir / "catalog.json";
}

}  // namespace

TEST_CASE("census flags bad rows and expectation mismatches") {
    auto path = scratch_catalog(R"({"entries":[
        {"path":"cp2.gem","label":"CP2","m":0,"m_prime":0,"beta1":0,"beta2":1,"expect":{"chi":3,"genus_central_min":1}},
        {"path":"missing.gem","label":"gone"},
        {"path":"y4_1.gem","label":"Y","m":1,"m_prime":0,"beta1":1,"beta2":0,"expect":{"chi":5}}]})");
    auto entries = load_catalog(path.string());
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].ctx->m == 0);
    auto res = census(entries, CensusMode::all_apices, 100000, 2);
    // CP2 is closed so all five apices run; the handlebody runs apex 4 only
    CHECK(res.rows.size() == 15 + 1 + 3);
    CHECK(res.rows[15].error.find("missing") != std::string::npos);
    REQUIRE(res.summary.size() == 3);
    CHECK(res.summary[0]["apices_all_induced"] == 5);
    CHECK(res.summary[0]["expect_mismatch"].empty());
    CHECK(res.summary[0]["gtg"]["tight"] == true);
    CHECK(res.summary[1].contains("error"));
    CHECK(res.summary[2]["closed"] == false);
    CHECK(res.summary[2]["expect_mismatch"] == nlohmann::json::array({"chi"}));
    std::string csv = census_csv(res);
    CHECK(csv.rfind("graph,apex,pairing,verdict,genus_central,genus_H1,genus_H2,chi,checks_ok\n", 0) == 0);
    CHECK(csv.find("gone,,,error,,,,,false\n") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 20);
}

TEST_CASE("census is independent of the job count") {
    auto entries = load_catalog(testing::fixture("catalog.json"));
    auto a = census(entries, CensusMode::all_apices, 100000, 1);
    auto b = census(entries, CensusMode::all_apices, 100000, 4);
    CHECK(census_ndjson(a) == census_ndjson(b));
    CHECK(census_csv(a) == census_csv(b));
    CHECK(a.summary == b.summary);
}

TEST_CASE("empty catalog") {
    auto path = scratch_catalog(R"({"entries":[]})");
    auto res = census(load_catalog(path.string()), CensusMode::fixed_apex, 1000, 4);
    CHECK(res.rows.empty());
    CHECK(census_ndjson(res).empty());
    CHECK(census_csv(res) == "graph,apex,pairing,verdict,genus_central,genus_H1,genus_H2,chi,checks_ok\n");
}
