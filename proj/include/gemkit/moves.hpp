#pragma once

#include <vector>

#include "gemkit/graph.hpp"

namespace gemkit {

struct Dipole {
    int u = -1, v = -1;
    ColorSet colors = 0;
    Tri proper = Tri::unknown;
    int order() const { return std::popcount(colors); }
};

struct Move {
    int u, v;
    ColorSet colors;
};

nlohmann::json trace_json(const std::vector<Move>& trace);

// Sorted by (r desc, u, v). Properness is resolved with the sphere tests;
// budget bounds the 4-colored residue checks.
std::vector<Dipole> find_dipoles(const Graph& g, int budget = 10000);

// Checks the dipole condition only (not properness).
bool is_dipole(const Graph& g, int u, int v, ColorSet colors);

// Removes u and v and welds the hanging edges. New vertex ids keep the
// relative order of the survivors.
Graph eliminate_dipole(const Graph& g, const Dipole& d);

// site[i] is the endpoint, for the i-th color outside `colors` (ascending),
// of the edge to re-route; the new vertices get ids order and order+1,
// with order+1 attached to the site endpoints.
Graph add_dipole(const Graph& g, const std::vector<int>& site, ColorSet colors);
// Always proper: re-routes all complementary edges at vertex x.
Graph add_dipole_at(const Graph& g, int x, ColorSet colors);

Graph normalize_to_gs4(const Graph& g, std::vector<Move>* trace = nullptr);

// adj may hold -1 for missing edges of the last color.
Graph capping_off(std::vector<std::vector<int>> adj, int c);

// Removes va and vb and welds. Vertices of a keep their ids, the first
// survivor of b takes the id of va, the rest follow in order.
Graph connected_sum(const Graph& a, int va, const Graph& b, int vb);

struct SphereVerdict {
    Tri sphere = Tri::unknown;
    std::vector<Move> trace;
    int genus = -1;                // 3-colored case
    std::vector<long long> torsion; // 4-colored witness
    int betti = 0;
};

// Non-trivial H1 answers no directly; otherwise dipole reduction to order
// two answers yes, and anything else is unknown.
SphereVerdict sphere_reduce(const Graph& g, int budget = 10000);

// Dipole elimination to a local minimum, backtracking over choices
// (up to budget states) when the greedy path gets stuck above order 2.
Graph reduce_dipoles(const Graph& g, int budget, std::vector<Move>* trace = nullptr);

}  // namespace gemkit
