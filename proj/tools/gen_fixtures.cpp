// Regenerates the shipped fixtures into a directory.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>

#include "CLI11.hpp"
#include "gemkit/genus.hpp"
#include "gemkit/linkforge.hpp"
#include "gemkit/moves.hpp"
#include "gemkit/pi1.hpp"
#include "gemkit/trisection.hpp"

using namespace gemkit;
namespace fs = std::filesystem;

namespace {

void write(const fs::path& p, const std::string& s) {
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << s;
}

std::vector<int> iota_n(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

struct Search {
    std::optional<Graph> y41, stuck;
};

// All bipartite 5-colored graphs on 8 vertices with color 0 matching i to 4+i.
Search small_search() {
    std::vector<std::array<int, 4>> perms;
    std::array<int, 4> p{0, 1, 2, 3};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    Search out;
    auto all = iota_n(8);
    for (auto& a : perms)
        for (auto& b : perms)
            for (auto& c : perms)
                for (auto& d : perms) {
                    if (out.y41 && out.stuck) return out;
                    const std::array<int, 4>* s[5] = {&perms[0], &a, &b, &c, &d};
                    std::vector<std::vector<int>> adj(5, std::vector<int>(8));
                    for (int col = 0; col < 5; ++col)
                        for (int v = 0; v < 4; ++v) {
                            int w = 4 + (*s[col])[v];
                            adj[col][v] = w;
                            adj[col][w] = v;
                        }
                    Graph g = Graph::make(5, adj);
                    if (!g.connected() || count(g, hat(5, 4)) != 1) continue;
                    if (!out.stuck) {
                        auto t = collapse_search(presentation(g, 4));
                        if (t.outcome == CollapseTrace::stuck) out.stuck = g;
                    }
                    if (out.y41 || !is_crystallization(g)) continue;
                    if (euler_char(g, Perm{{0, 1, 2, 3, 4}}).value() != 1) continue;
                    Graph h4 = restrict(g, hat(5, 4), all);
                    auto ab = abelianization(presentation(h4, 0));
                    if (ab.betti != 1 || !ab.torsion.empty()) continue;
                    int mn = 1 << 20;
                    for (auto& q : canonical_perms(4)) mn = std::min(mn, regular_genus(h4, q));
                    if (mn != 1) continue;
                    bool ok = true;
                    for (int i = 0; i < 4 && ok; ++i) ok = sphere_reduce(restrict(g, hat(5, i), all)).sphere == Tri::yes;
                    if (ok) out.y41 = g;
                }
    return out;
}

struct LinkCase {
    std::string name, pd;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"regenerate gemkit fixtures"};
    std::string out = "fixtures";
    app.add_option("--out", out, "output directory");
    CLI11_PARSE(app, argc, argv);
    fs::path dir(out);

    write(dir / "s3.gem", to_text(Graph::order_two(4)));
    write(dir / "s4.gem", to_text(Graph::order_two(5)));

    std::vector<LinkCase> links = {
        {"unknot_m2", "PD[] framings: -2"},
        {"unknot_m1", "PD[] framings: -1"},
        {"unknot_0", "PD[] framings: 0"},
        {"unknot_p1", "PD[] framings: 1"},
        {"unknot_p2", "PD[] framings: 2"},
        {"trefoil_p1", "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)] framings: 1"},
        {"hopf_00", "PD[X(1,3,2,4),X(3,1,4,2)] framings: 0,0"},
    };
    std::map<std::string, Graph> built;
    for (auto& lc : links) {
        auto d = parse_link(lc.pd);
        auto b = forge(d);
        auto cert = certify(b, default_budget());
        write(dir / "links" / (lc.name + ".pd"), lc.pd + "\n");
        write(dir / "links" / (lc.name + ".gem"), to_text(b.gamma));
        write(dir / "links" / (lc.name + ".cert.json"), cert.json().dump(2) + "\n");
        built.emplace(lc.name, b.gamma);
        std::cerr << lc.name << ": " << b.gamma.order() << " vertices, certificate " << (cert.ok() ? "ok" : "FAILED") << "\n";
    }

    Graph cp2 = reduce_dipoles(built.at("unknot_m1"), 2000);
    write(dir / "cp2.gem", "# CP^2, 8-vertex crystallization (linkforge, -1-framed unknot)\n" + to_text(cp2));
    write(dir / "cp2.json", to_json(cp2).dump() + "\n");
    Graph s2s2 = reduce_dipoles(built.at("hopf_00"), 5000);
    write(dir / "s2xs2.gem", "# S^2 x S^2, crystallization (linkforge, Hopf link (0,0), dipole-reduced)\n" + to_text(s2s2));

    auto found = small_search();
    if (!found.y41 || !found.stuck) {
        std::cerr << "search failed\n";
        return 1;
    }
    write(dir / "y4_1.gem", "# Y^4_1 = S^1 x B^3, 8-vertex crystallization found by exhaustive search\n" + to_text(*found.y41));
    write(dir / "stuck.gem", "# not a manifold gem (some residues are not spheres): apex-4 presentation and spine admit no collapse\n" + to_text(*found.stuck));
    Graph y = *found.y41;
    for (int h = 2; h <= 4; ++h) {
        int v1 = collapse_vertex(y, true, default_budget());
        int v2 = collapse_vertex(*found.y41, false, default_budget());
        y = connected_sum(y, v1, *found.y41, v2);
        write(dir / ("y4_" + std::to_string(h) + ".gem"),
              "# Y^4_" + std::to_string(h) + ", " + std::to_string(h) + "-fold graph connected sum of Y^4_1\n" + to_text(y));
    }

    using J = nlohmann::json;
    J entries = J::array();
    auto entry = [&](std::string path, std::string label, int m, int mp, int b1, int b2, J expect) {
        entries.push_back({{"path", path}, {"label", label}, {"m", m}, {"m_prime", mp}, {"beta1", b1}, {"beta2", b2}, {"expect", expect}});
    };
    entry("s4.gem", "S4", 0, 0, 0, 0, {{"chi", 2}, {"genus_central_min", 0}});
    entry("cp2.gem", "CP2", 0, 0, 0, 1, {{"chi", 3}, {"genus_central_min", 1}});
    entry("s2xs2.gem", "S2xS2", 0, 0, 0, 2, {{"chi", 4}, {"genus_central_min", 2}});
    for (int h = 1; h <= 4; ++h)
        entry("y4_" + std::to_string(h) + ".gem", "Y4_" + std::to_string(h), h, 0, h, 0,
              {{"chi", 2 - h}, {"genus_central_min", h}});
    for (auto& lc : links) {
        bool unknot = lc.name.rfind("unknot", 0) == 0;
        int b2 = lc.name == "hopf_00" ? 2 : 1;
        J expect{{"chi", 2 + b2}};
        if (unknot) expect["genus_central_min"] = 1;
        if (lc.name == "hopf_00") expect["genus_central_min"] = 2;
        entry("links/" + lc.name + ".gem", lc.name, 0, 0, 0, b2, expect);
    }
    write(dir / "catalog.json", J{{"entries", entries}}.dump(2) + "\n");
    return 0;
}
