#include "gemkit/trisection.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "gemkit/moves.hpp"

namespace gemkit {

std::string Tricoloring::pairing() const {
    std::string s;
    s += char('0' + red[0]);
    s += char('0' + red[1]);
    s += '|';
    s += char('0' + green[0]);
    s += char('0' + green[1]);
    return s;
}

std::vector<Tricoloring> tricolorings(int apex) {
    std::vector<int> rest;
    for (int c = 0; c < 5; ++c)
        if (c != apex) rest.push_back(c);
    std::vector<Tricoloring> out;
    for (int partner = 1; partner < 4; ++partner) {
        Tricoloring t;
        t.apex = apex;
        t.red = {rest[0], rest[partner]};
        std::vector<int> g;
        for (int j = 1; j < 4; ++j)
            if (j != partner) g.push_back(rest[j]);
        t.green = {g[0], g[1]};
        out.push_back(t);
    }
    return out;
}

Tricoloring tricoloring_of(const Perm& eps) {
    Tricoloring t;
    t.apex = eps[4];
    t.red = {std::min(eps[0], eps[2]), std::max(eps[0], eps[2])};
    t.green = {std::min(eps[1], eps[3]), std::max(eps[1], eps[3])};
    if (t.green[0] < t.red[0]) std::swap(t.red, t.green);
    return t;
}

Graph relabel_apex(const Graph& g, int apex) {
    if (apex == 4) return g;
    auto adj = g.adjacency();
    std::swap(adj[apex], adj[4]);
    return Graph::make(5, std::move(adj));
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::gem_induced: return "gem_induced";
        case Verdict::not_collapsible: return "not_collapsible";
        case Verdict::unknown: return "unknown";
        default: return "pending";
    }
}

TrisectionReport quasi_trisection(const Graph& g, const Perm& eps, int sphere_budget) {
    if (g.colors() != 5 || eps.size() != 5 || eps[4] != 4) throw std::invalid_argument("need a 5-colored graph and eps_4 = 4");
    if (count(g, hat(5, 4)) != 1) throw std::invalid_argument("graph has more than one 4-hat residue");
    TrisectionReport r;
    r.tc = tricoloring_of(eps);
    r.genus_central = residue_genus(g, eps.without(4));
    int sum = 0;
    for (int j = 0; j < 4; ++j) sum += count(g, bit(eps[j]) | bit(eps[(j + 1) % 4]));
    r.central_ok = sum - g.order() == 2 - 2 * r.genus_central;
    auto h = [&](int pos) { return count(g, hat(5, eps[pos])); };
    r.genus_H1 = count(g, bit(eps[1]) | bit(eps[3]) | bit(4)) - h(0) - h(2) + 1;
    r.genus_H2 = count(g, bit(eps[0]) | bit(eps[2]) | bit(4)) - h(1) - h(3) + 1;
    auto chi = euler_char(g, eps);
    r.chi = chi.value();
    r.chi_ok = chi.agree;
    r.euler_split_ok = r.chi == 2 + r.genus_central - r.genus_H1 - r.genus_H2;
    std::vector<int> all(g.order());
    for (int v = 0; v < g.order(); ++v) all[v] = v;
    r.closed = sphere_reduce(restrict(g, hat(5, 4), all), sphere_budget).sphere;
    return r;
}

namespace {

// Collapse of a square/edge incidence structure: an edge with exactly one
// live incidence is free and lets its square go.
struct SpineSearch {
    std::vector<std::vector<int>> edge_squares;  // with multiplicity
    std::vector<std::vector<int>> square_edges;
    long budget;
    long states = 0;
    std::unordered_set<std::string> seen;
    std::vector<int> path;

    int free_square(int e, const std::vector<char>& live) const {
        int n = 0, s = -1;
        for (int x : edge_squares[e])
            if (live[x]) ++n, s = x;
        return n == 1 ? s : -1;
    }

    std::vector<int> moves(const std::vector<char>& live) const {
        std::vector<int> out;
        std::vector<char> taken(live.size(), 0);
        for (int e = 0; e < int(edge_squares.size()); ++e) {
            int s = free_square(e, live);
            if (s >= 0 && !taken[s]) out.push_back(s), taken[s] = 1;
        }
        return out;
    }

    bool dfs(std::vector<char>& live, int remaining) {
        if (remaining == 0) return true;
        if (states >= budget) return false;
        ++states;
        for (int s : moves(live)) {
            live[s] = 0;
            if (seen.insert(std::string(live.begin(), live.end())).second) {
                path.push_back(s);
                if (dfs(live, remaining - 1)) return true;
                path.pop_back();
            }
            live[s] = 1;
            if (states >= budget) return false;
        }
        return false;
    }
};

}  // namespace

Spine spine_of(const Graph& g) {
    const auto& side = g.bipartition();
    if (side.empty()) throw std::invalid_argument("spine needs a bipartite graph");
    Spine sp;
    std::vector<int> sq(g.order(), -1);
    for (int v = 0; v < g.order(); ++v)
        if (side[v] == 0) {
            sq[v] = sq[g(4, v)] = int(sp.label.size());
            sp.label.push_back(v);
        }
    for (int i = 0; i < 4; ++i)
        for (auto& cyc : cycles(g, 4, i)) {
            std::vector<int> inc;
            for (size_t t = 0; t < cyc.size(); t += 2) inc.push_back(sq[cyc[t]]);
            sp.edges.push_back(std::move(inc));
        }
    return sp;
}

Spine spine_of(const Presentation& p) {
    Spine sp;
    sp.edges.resize(p.gens);
    for (int r = 0; r < int(p.rels.size()); ++r) {
        sp.label.push_back(r);
        for (int x : p.rels[r]) sp.edges[std::abs(x) - 1].push_back(r);
    }
    return sp;
}

SpineTrace spine_collapse(const Graph& g, long budget) { return spine_collapse(spine_of(g), budget); }

SpineTrace spine_collapse(const Spine& sp, long budget) {
    SpineSearch s;
    s.budget = budget;
    s.edge_squares = sp.edges;
    s.square_edges.resize(sp.label.size());
    for (int e = 0; e < int(sp.edges.size()); ++e)
        for (int x : sp.edges[e]) s.square_edges[x].push_back(e);
    const auto& square_vertex = sp.label;
    int n = int(square_vertex.size());
    std::vector<char> live(n, 1);
    int remaining = n;
    SpineTrace out;
    // greedy with a work list of edges to recheck
    std::vector<int> work(s.edge_squares.size());
    for (int e = 0; e < int(work.size()); ++e) work[e] = e;
    std::reverse(work.begin(), work.end());
    while (!work.empty()) {
        int e = work.back();
        work.pop_back();
        int x = s.free_square(e, live);
        if (x < 0) continue;
        live[x] = 0;
        --remaining;
        ++s.states;
        s.path.push_back(x);
        for (int f : s.square_edges[x]) work.push_back(f);
    }
    if (remaining == 0) {
        out.outcome = CollapseTrace::trivialized;
        out.greedy = true;
    } else {
        s.path.clear();
        std::fill(live.begin(), live.end(), 1);
        s.seen.insert(std::string(live.begin(), live.end()));
        if (s.dfs(live, n))
            out.outcome = CollapseTrace::trivialized;
        else
            out.outcome = s.states >= budget ? CollapseTrace::budget_exhausted : CollapseTrace::stuck;
    }
    out.states = s.states;
    if (out.outcome == CollapseTrace::trivialized)
        for (int x : s.path) out.order.push_back(square_vertex[x]);
    return out;
}

void resolve_verdict(const Graph& g, TrisectionReport& r, long budget) {
    r.presentation_trace = collapse_search(presentation(g, 4), budget);
    r.spine_trace = spine_collapse(g, budget);
    auto a = r.presentation_trace.outcome, b = r.spine_trace.outcome;
    using O = CollapseTrace::Outcome;
    bool conclusive = a != O::budget_exhausted && b != O::budget_exhausted;
    r.routes_agree = !conclusive || a == b;
    if (!r.routes_agree) throw IdentityError("presentation and spine collapse disagree");
    if (a == O::trivialized || b == O::trivialized)
        r.verdict = Verdict::gem_induced;
    else if (a == O::stuck || b == O::stuck)
        r.verdict = Verdict::not_collapsible;
    else
        r.verdict = Verdict::unknown;
}

TrisectionReport trisect(const Graph& g, const Tricoloring& tc, long budget, const Context* ctx) {
    Graph h = normalize_to_gs4(relabel_apex(g, tc.apex));
    auto mapc = [&](int c) { return c == 4 ? tc.apex : c == tc.apex ? 4 : c; };
    Perm eps{{mapc(tc.red[0]), mapc(tc.green[0]), mapc(tc.red[1]), mapc(tc.green[1]), 4}};
    TrisectionReport r = quasi_trisection(h, eps);
    r.tc = tc;
    if (ctx && is_crystallization(h)) r.weak_semi_simple = is_weak_semi_simple(h, eps, *ctx) ? Tri::yes : Tri::no;
    resolve_verdict(h, r, budget);
    return r;
}

nlohmann::json to_json(const TrisectionReport& r, bool traces) {
    nlohmann::json j;
    if (!r.graph.empty()) j["graph"] = r.graph;
    j["apex"] = r.tc.apex;
    j["pairing"] = r.tc.pairing();
    j["perm"] = r.tc.perm().str();
    j["verdict"] = to_string(r.verdict);
    j["genus_central"] = r.genus_central;
    j["genus_H1"] = r.genus_H1;
    j["genus_H2"] = r.genus_H2;
    j["chi"] = r.chi;
    j["closed"] = to_string(r.closed);
    j["checks"] = {{"euler_split", r.euler_split_ok}, {"central", r.central_ok}, {"chi_agree", r.chi_ok}, {"routes_agree", r.routes_agree}};
    j["checks_ok"] = r.checks_ok();
    j["presentation_outcome"] = to_string(r.presentation_trace.outcome);
    j["spine_outcome"] = to_string(r.spine_trace.outcome);
    if (r.weak_semi_simple != Tri::unknown) j["weak_semi_simple"] = r.weak_semi_simple == Tri::yes;
    if (traces) {
        j["presentation_trace"] = to_json(r.presentation_trace);
        j["spine_order"] = r.spine_trace.order;
    }
    return j;
}

Bounds gtg_bounds(const std::vector<TrisectionReport>& reports, const Context& ctx, int beta1, int beta2,
                  std::optional<int> heegaard) {
    Bounds b;
    bool any = false;
    for (auto& r : reports) {
        if (r.verdict != Verdict::gem_induced) continue;
        if (!any || r.genus_central < b.upper) b.upper = r.genus_central;
        any = true;
    }
    if (!any) throw std::invalid_argument("no gem-induced report");
    b.lower = beta2 + beta1 + 2 * (ctx.m - beta1);
    if (heegaard) b.lower = std::max(b.lower, *heegaard);
    b.tight = b.lower == b.upper;
    for (auto& r : reports)
        if (r.verdict == Verdict::gem_induced && r.genus_central == b.upper && r.weak_semi_simple == Tri::yes)
            b.weak_semi_simple_witness = true;
    return b;
}

int collapse_vertex(const Graph& g, bool last, long budget) {
    auto t = spine_collapse(g, budget);
    if (t.outcome != CollapseTrace::trivialized || t.order.empty()) throw std::runtime_error("graph does not collapse");
    return last ? t.order.back() : t.order.front();
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open catalog " + path);
    nlohmann::json j = nlohmann::json::parse(f);
    auto base = std::filesystem::path(path).parent_path();
    std::vector<CatalogEntry> out;
    for (auto& e : j.at("entries")) {
        CatalogEntry c;
        std::filesystem::path p = e.at("path").get<std::string>();
        c.path = p.is_absolute() ? p.string() : (base / p).string();
        c.label = e.value("label", p.stem().string());
        if (e.contains("m") || e.contains("m_prime")) c.ctx = Context{e.value("m", 0), e.value("m_prime", 0), true};
        if (e.contains("beta1")) c.beta1 = e["beta1"].get<int>();
        if (e.contains("beta2")) c.beta2 = e["beta2"].get<int>();
        if (e.contains("heegaard")) c.heegaard = e["heegaard"].get<int>();
        if (e.contains("expect")) c.expect = e["expect"];
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

template <class F>
void parallel_for(int n, int jobs, F f) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i; (i = next++) < n;) f(i);
        });
    for (auto& th : pool) th.join();
}

bool closed_graph(const Graph& g, int budget) {
    for (int c = 0; c < 5; ++c) {
        Residues r = residues(g, hat(5, c));
        for (auto& comp : r.components())
            if (sphere_reduce(restrict(g, hat(5, c), comp), budget).sphere != Tri::yes) return false;
    }
    return true;
}

}  // namespace

CensusResult census(const std::vector<CatalogEntry>& entries, CensusMode mode, long budget, int jobs) {
    struct Loaded {
        std::optional<Graph> g;
        std::string error;
        bool closed = false;
    };
    std::vector<Loaded> loaded(entries.size());
    parallel_for(int(entries.size()), jobs, [&](int i) {
        try {
            Graph g = load_gem(entries[i].path);
            if (g.colors() != 5) throw std::invalid_argument("census needs 5-colored graphs");
            if (!g.bipartite() || !g.connected()) throw std::invalid_argument("graph must be connected and bipartite");
            loaded[i].closed = closed_graph(g, 10000);
            loaded[i].g = std::move(g);
        } catch (const std::exception& e) {
            loaded[i].error = e.what();
        }
    });
    struct Cell {
        int entry;
        Tricoloring tc;
    };
    CensusResult res;
    std::vector<Cell> cells;
    std::vector<int> row_of_cell;
    for (int i = 0; i < int(entries.size()); ++i) {
        if (!loaded[i].g) {
            res.rows.push_back({entries[i].label, -1, "", std::nullopt, loaded[i].error, false});
            continue;
        }
        std::vector<int> apices{4};
        if (mode == CensusMode::all_apices && loaded[i].closed) apices = {0, 1, 2, 3, 4};
        for (int a : apices)
            for (auto& tc : tricolorings(a)) {
                row_of_cell.push_back(int(res.rows.size()));
                res.rows.push_back({entries[i].label, a, tc.pairing(), std::nullopt, "", false});
                cells.push_back({i, tc});
            }
    }
    parallel_for(int(cells.size()), jobs, [&](int k) {
        auto& row = res.rows[row_of_cell[k]];
        const auto& e = entries[cells[k].entry];
        try {
            auto r = trisect(*loaded[cells[k].entry].g, cells[k].tc, budget, e.ctx ? &*e.ctx : nullptr);
            r.graph = e.label;
            row.report = std::move(r);
        } catch (const IdentityError& ex) {
            row.error = ex.what();
            row.identity_failure = true;
        } catch (const std::exception& ex) {
            row.error = ex.what();
        }
    });
    // per-graph summary in catalog order
    nlohmann::json summary = nlohmann::json::array();
    for (int i = 0; i < int(entries.size()); ++i) {
        const auto& e = entries[i];
        nlohmann::json s;
        s["graph"] = e.label;
        if (!loaded[i].g) {
            s["error"] = loaded[i].error;
            summary.push_back(s);
            continue;
        }
        s["closed"] = loaded[i].closed;
        s["vertices"] = loaded[i].g->order();
        int cellsn = 0, induced = 0, errors = 0;
        bool checks = true, agree = true;
        std::map<int, int> per_apex;
        int gmin = -1;
        std::vector<TrisectionReport> reps;
        for (auto& row : res.rows) {
            if (row.graph != e.label || row.apex < 0) continue;
            ++cellsn;
            if (!row.report) {
                ++errors;
                continue;
            }
            const auto& r = *row.report;
            reps.push_back(r);
            checks = checks && r.checks_ok();
            agree = agree && r.routes_agree;
            if (r.verdict == Verdict::gem_induced) {
                ++induced;
                ++per_apex[r.tc.apex];
                if (gmin < 0 || r.genus_central < gmin) gmin = r.genus_central;
            }
        }
        int full_apices = 0;
        for (auto& [a, n] : per_apex)
            if (n == 3) ++full_apices;
        s["cells"] = cellsn;
        s["gem_induced"] = induced;
        s["errors"] = errors;
        s["apices_all_induced"] = full_apices;
        s["checks_ok"] = checks;
        s["routes_agree"] = agree;
        s["genus_central_min"] = gmin;
        if (e.ctx && e.beta1 && e.beta2 && induced > 0) {
            auto b = gtg_bounds(reps, *e.ctx, *e.beta1, *e.beta2, e.heegaard);
            s["gtg"] = {{"lower", b.lower}, {"upper", b.upper}, {"tight", b.tight}};
        }
        nlohmann::json mism = nlohmann::json::array();
        if (e.expect.is_object())
            for (auto& [key, want] : e.expect.items()) {
                bool ok;
                if (key == "chi")  // every cell, not just the summary
                    ok = !reps.empty() && std::all_of(reps.begin(), reps.end(), [&](auto& r) { return want == r.chi; });
                else
                    ok = s.contains(key) && s[key] == want;
                if (!ok) mism.push_back(key);
            }
        s["expect_mismatch"] = mism;
        summary.push_back(s);
    }
    res.summary = summary;
    return res;
}

std::string census_ndjson(const CensusResult& r) {
    std::ostringstream o;
    for (auto& row : r.rows) {
        nlohmann::json j;
        if (row.report) {
            j = to_json(*row.report);
        } else {
            j["graph"] = row.graph;
            if (row.apex >= 0) j["apex"] = row.apex, j["pairing"] = row.pairing;
            j["error"] = row.error;
        }
        j["graph"] = row.graph;
        o << j.dump() << '\n';
    }
    return o.str();
}

std::string census_csv(const CensusResult& r) {
    std::ostringstream o;
    o << "graph,apex,pairing,verdict,genus_central,genus_H1,genus_H2,chi,checks_ok\n";
    for (auto& row : r.rows) {
        o << row.graph << ',';
        if (row.report) {
            auto& t = *row.report;
            o << t.tc.apex << ',' << t.tc.pairing() << ',' << to_string(t.verdict) << ',' << t.genus_central << ','
              << t.genus_H1 << ',' << t.genus_H2 << ',' << t.chi << ',' << (t.checks_ok() ? "true" : "false") << '\n';
        } else {
            if (row.apex >= 0) o << row.apex;
            o << ',' << row.pairing << ",error,,,,,false\n";
        }
    }
    return o.str();
}

}  // namespace gemkit
