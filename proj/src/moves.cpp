#include "gemkit/moves.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "gemkit/genus.hpp"
#include "gemkit/pi1.hpp"

namespace gemkit {

nlohmann::json trace_json(const std::vector<Move>& trace) {
    nlohmann::json out = nlohmann::json::array();
    for (auto& m : trace) out.push_back({{"op", "elim_dipole"}, {"u", m.u}, {"v", m.v}, {"colors", members(m.colors)}});
    return out;
}

namespace {

// Is the residue component through v (colors `cs`) a sphere?
Tri residue_sphere(const Graph& g, ColorSet cs, const Residues& r, int v, int budget) {
    int h = std::popcount(cs);
    if (h <= 2) return Tri::yes;
    std::vector<int> verts;
    for (int x = 0; x < g.order(); ++x)
        if (r.comp[x] == r.comp[v]) verts.push_back(x);
    Graph sub = restrict(g, cs, verts);
    if (h > 4) return Tri::unknown;
    return sphere_reduce(sub, budget).sphere;
}

}  // namespace

bool is_dipole(const Graph& g, int u, int v, ColorSet colors) {
    if (u == v || colors == 0) return false;
    ColorSet joined = 0;
    for (int c = 0; c < g.colors(); ++c)
        if (g(c, u) == v) joined |= bit(c);
    if (joined != colors || colors == all_colors(g.colors())) return false;
    Residues r = residues(g, all_colors(g.colors()) & ~colors);
    return r.comp[u] != r.comp[v];
}

std::vector<Dipole> find_dipoles(const Graph& g, int budget) {
    int k = g.colors();
    std::map<ColorSet, Residues> cache;
    auto res = [&](ColorSet s) -> const Residues& {
        auto it = cache.find(s);
        if (it == cache.end()) it = cache.emplace(s, residues(g, s)).first;
        return it->second;
    };
    std::vector<Dipole> out;
    for (int u = 0; u < g.order(); ++u) {
        for (int c = 0; c < k; ++c) {
            int v = g(c, u);
            if (v < u) continue;
            ColorSet joined = 0;
            for (int d = 0; d < k; ++d)
                if (g(d, u) == v) joined |= bit(d);
            if (std::countr_zero(joined) != c) continue;  // visit each pair once
            if (joined == all_colors(k)) continue;
            ColorSet rest = all_colors(k) & ~joined;
            const Residues& r = res(rest);
            if (r.comp[u] == r.comp[v]) continue;
            Dipole d{u, v, joined, Tri::unknown};
            Tri a = residue_sphere(g, rest, r, u, budget);
            Tri b = a == Tri::yes ? Tri::yes : residue_sphere(g, rest, r, v, budget);
            if (a == Tri::yes || b == Tri::yes)
                d.proper = Tri::yes;
            else if (a == Tri::no && b == Tri::no)
                d.proper = Tri::no;
            out.push_back(d);
        }
    }
    std::sort(out.begin(), out.end(), [](const Dipole& a, const Dipole& b) {
        if (a.order() != b.order()) return a.order() > b.order();
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    return out;
}

Graph eliminate_dipole(const Graph& g, const Dipole& d) {
    if (!is_dipole(g, d.u, d.v, d.colors)) throw std::invalid_argument("not a dipole");
    int n = g.order(), k = g.colors();
    std::vector<int> idx(n, -1);
    int m = 0;
    for (int x = 0; x < n; ++x)
        if (x != d.u && x != d.v) idx[x] = m++;
    std::vector<std::vector<int>> adj(k, std::vector<int>(m, -1));
    for (int c = 0; c < k; ++c) {
        for (int x = 0; x < n; ++x) {
            if (idx[x] < 0) continue;
            int y = g(c, x);
            if (y == d.u) y = g(c, d.v);
            else if (y == d.v) y = g(c, d.u);
            adj[c][idx[x]] = idx[y];
        }
    }
    Graph out = Graph::make(k, std::move(adj));
    if (g.connected() && !out.connected()) throw std::invalid_argument("elimination disconnects the graph");
    return out;
}

Graph add_dipole(const Graph& g, const std::vector<int>& site, ColorSet colors) {
    int n = g.order(), k = g.colors();
    if (colors == 0 || colors == all_colors(k)) throw std::invalid_argument("dipole order out of range");
    auto rest = members(all_colors(k) & ~colors);
    if (site.size() != rest.size()) throw std::invalid_argument("site needs one edge per complementary color");
    auto adj = g.adjacency();
    for (auto& row : adj) row.resize(n + 2, -1);
    int u = n, v = n + 1;
    for (int c : members(colors)) {
        adj[c][u] = v;
        adj[c][v] = u;
    }
    for (size_t i = 0; i < rest.size(); ++i) {
        int d = rest[i], a = site[i], b = g(d, a);
        adj[d][v] = a;
        adj[d][a] = v;
        adj[d][u] = b;
        adj[d][b] = u;
    }
    return Graph::make(k, std::move(adj));
}

Graph add_dipole_at(const Graph& g, int x, ColorSet colors) {
    auto rest = members(all_colors(g.colors()) & ~colors);
    return add_dipole(g, std::vector<int>(rest.size(), x), colors);
}

Graph normalize_to_gs4(const Graph& g, std::vector<Move>* trace) {
    if (g.colors() != 5) throw std::invalid_argument("normalize needs a 5-colored graph");
    Graph cur = g;
    while (count(cur, hat(5, 4)) > 1) {
        Residues r = residues(cur, hat(5, 4));
        bool done = false;
        for (int u = 0; u < cur.order() && !done; ++u) {
            int v = cur(4, u);
            if (v < u || r.comp[u] == r.comp[v]) continue;
            bool single = true;
            for (int c = 0; c < 4; ++c)
                if (cur(c, u) == v) single = false;
            if (!single) continue;
            if (trace) trace->push_back({u, v, bit(4)});
            cur = eliminate_dipole(cur, {u, v, bit(4), Tri::yes});
            done = true;
        }
        if (!done) throw std::runtime_error("no eliminable 1-dipole of color 4");
    }
    return cur;
}

Graph capping_off(std::vector<std::vector<int>> adj, int c) {
    int k = int(adj.size()), top = k - 1;
    if (c < 0 || c >= top) throw std::invalid_argument("capping color must differ from the last color");
    int n = int(adj[0].size());
    std::vector<int> add(n, -1);
    for (int v = 0; v < n; ++v) {
        if (adj[top][v] >= 0 || add[v] >= 0) continue;
        int x = v, w = -1;
        for (int steps = 0; steps <= n; ++steps) {
            int y = adj[c][x];
            if (y < 0) throw std::invalid_argument("missing edge of the capping color");
            if (adj[top][y] < 0) {
                w = y;
                break;
            }
            x = adj[top][y];
        }
        if (w < 0 || w == v || add[w] >= 0) throw std::invalid_argument("malformed boundary path");
        add[v] = w;
        add[w] = v;
    }
    for (int v = 0; v < n; ++v)
        if (add[v] >= 0) adj[top][v] = add[v];
    return Graph::make(k, std::move(adj));
}

Graph connected_sum(const Graph& a, int va, const Graph& b, int vb) {
    if (a.colors() != b.colors()) throw std::invalid_argument("color counts differ");
    int k = a.colors(), na = a.order(), nb = b.order();
    // a keeps its ids; the first survivor of b takes the slot of va
    auto ia = [&](int x) { return x; };
    auto ib = [&](int x) {
        int j = x < vb ? x : x - 1;
        return j == 0 ? va : na - 1 + j;
    };
    std::vector<std::vector<int>> adj(k, std::vector<int>(na + nb - 2, -1));
    for (int c = 0; c < k; ++c) {
        for (int x = 0; x < na; ++x)
            if (x != va) adj[c][ia(x)] = a(c, x) == va ? ib(b(c, vb)) : ia(a(c, x));
        for (int x = 0; x < nb; ++x)
            if (x != vb) adj[c][ib(x)] = b(c, x) == vb ? ia(a(c, va)) : ib(b(c, x));
    }
    return Graph::make(k, std::move(adj));
}

namespace {

struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ull;
        for (int x : v) h = (h ^ size_t(x + 1)) * 1099511628211ull;
        return h;
    }
};

std::vector<int> flat(const Graph& g) {
    std::vector<int> f;
    for (auto& row : g.adjacency()) f.insert(f.end(), row.begin(), row.end());
    return f;
}

struct Reducer {
    int budget;
    int inner;
    long states = 0;
    std::unordered_set<std::vector<int>, VecHash> seen;
    Graph best;
    std::vector<Move> best_trace, path;

    bool dfs(const Graph& g) {
        if (states >= budget) return false;
        ++states;
        if (g.order() < best.order()) {
            best = g;
            best_trace = path;
        }
        if (g.order() == 2) return true;
        for (auto& d : find_dipoles(g, inner)) {
            if (d.proper != Tri::yes) continue;
            Graph next = eliminate_dipole(g, d);
            if (!seen.insert(flat(next)).second) continue;
            path.push_back({d.u, d.v, d.colors});
            bool ok = dfs(next);
            path.pop_back();
            if (ok) return true;
            if (states >= budget) return false;
        }
        return false;
    }
};

}  // namespace

Graph reduce_dipoles(const Graph& g, int budget, std::vector<Move>* trace) {
    Reducer r{budget, std::max(1, budget / 10), 0, {}, g, {}, {}};
    r.best = g;
    r.dfs(g);
    if (trace) *trace = r.best_trace;
    return r.best;
}

SphereVerdict sphere_reduce(const Graph& g, int budget) {
    SphereVerdict out;
    if (!g.connected()) throw std::invalid_argument("sphere test needs a connected graph");
    int k = g.colors();
    if (k <= 2) {
        out.sphere = Tri::yes;
        return out;
    }
    if (k == 3) {
        out.genus = regular_genus(g, Perm{{0, 1, 2}});
        out.sphere = out.genus == 0 ? Tri::yes : Tri::no;
        return out;
    }
    if (k != 4) throw std::invalid_argument("sphere test supports 3 or 4 colors");
    // nontrivial homology settles it without searching
    Abelian ab = abelianization(presentation(g, 0));
    out.betti = ab.betti;
    out.torsion = ab.torsion;
    if (!ab.trivial()) {
        out.sphere = Tri::no;
        return out;
    }
    Graph red = reduce_dipoles(g, budget, &out.trace);
    out.sphere = red.order() == 2 ? Tri::yes : Tri::unknown;
    return out;
}

}  // namespace gemkit

namespace gemkit {

ClassTag classify(const Graph& g, int budget, bool assume_ordinary) {
    ClassTag t;
    t.bipartite = g.bipartite();
    t.connected = g.connected();
    t.crystallization = is_crystallization(g);
    int k = g.colors();
    for (int c = 0; c < k; ++c) {
        Tri s = Tri::no;
        if (k - 1 <= 4) {
            Residues r = residues(g, hat(k, c));
            for (auto& comp : r.components()) {
                Tri x = sphere_reduce(restrict(g, hat(k, c), comp), budget).sphere;
                if (x == Tri::no) {
                    s = Tri::yes;
                    break;
                }
                if (x == Tri::unknown) s = Tri::unknown;
            }
        } else {
            s = Tri::unknown;
        }
        t.singular.push_back(s);
    }
    t.in_gs4 = k == 5 && t.connected && count(g, hat(5, 4)) == 1;
    for (int c = 0; c < 4 && t.in_gs4; ++c)
        t.in_gs4 = t.singular[c] == Tri::no || (assume_ordinary && t.singular[c] == Tri::unknown);
    return t;
}

}  // namespace gemkit
