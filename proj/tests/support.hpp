#pragma once

#include <random>
#include <string>

#include "gemkit/genus.hpp"
#include "gemkit/graph.hpp"
#include "gemkit/moves.hpp"

#ifndef GEMKIT_FIXTURES
#error "GEMKIT_FIXTURES must point at the fixture directory"
#endif

namespace testing {

inline std::string fixture(const std::string& rel) { return std::string(GEMKIT_FIXTURES) + "/" + rel; }
inline gemkit::Graph load(const std::string& rel) { return gemkit::load_gem(fixture(rel)); }

// Genus of the regular embedding by tracing faces of the rotation system:
// even vertices rotate along eps, odd ones against it.
inline int traced_genus(const gemkit::Graph& g, const gemkit::Perm& eps) {
    int k = g.colors(), n = g.order();
    std::vector<int> pos(32, -1);
    for (int i = 0; i < k; ++i) pos[eps.seq[i]] = i;
    const auto& side = g.bipartition();
    auto rot = [&](int v, int c) { return side[v] == 0 ? eps[pos[c] + 1] : eps[pos[c] - 1]; };
    std::vector<char> seen(std::size_t(n) * k, 0);
    int faces = 0;
    for (int v = 0; v < n; ++v)
        for (int c = 0; c < k; ++c) {
            if (seen[v * k + c]) continue;
            ++faces;
            int x = v, y = c;
            while (!seen[x * k + y]) {
                seen[x * k + y] = 1;
                int w = g(y, x);
                y = rot(w, y);
                x = w;
            }
        }
    int edges = k * n / 2;
    return (2 - n + edges - faces) / 2;
}

// Proper dipole insertions on a seed graph until at most max_order vertices.
inline gemkit::Graph random_gem(std::mt19937& rng, gemkit::Graph g, int max_order) {
    int k = g.colors();
    std::uniform_int_distribution<int> steps(0, (max_order - g.order()) / 2);
    for (int s = steps(rng); s > 0; --s) {
        int x = std::uniform_int_distribution<int>(0, g.order() - 1)(rng);
        gemkit::ColorSet cs = 0;
        while (cs == 0 || cs == gemkit::all_colors(k)) cs = std::uniform_int_distribution<unsigned>(1, gemkit::all_colors(k) - 1)(rng);
        g = gemkit::add_dipole_at(g, x, cs);
    }
    return g;
}

}  // namespace testing
