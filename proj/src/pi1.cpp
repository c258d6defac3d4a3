#include "gemkit/pi1.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace gemkit {

Presentation presentation(const Graph& g, int i) {
    const auto& side = g.bipartition();
    if (side.empty()) throw std::invalid_argument("presentation needs a bipartite graph");
    Presentation p;
    p.color = i;
    std::vector<int> gen(g.order(), -1);
    for (int v = 0; v < g.order(); ++v)
        if (side[v] == 0) {
            gen[v] = gen[g(i, v)] = p.gens++;
            p.gen_vertex.push_back(v);
        }
    for (int j = 0; j < g.colors(); ++j) {
        if (j == i) continue;
        std::vector<char> seen(g.order(), 0);
        for (int s = 0; s < g.order(); ++s) {
            if (seen[s] || side[s] != 0) continue;
            Word w;
            int x = s;
            do {
                seen[x] = 1;
                int y = g(i, x);
                seen[y] = 1;
                w.push_back(gen[x] + 1);
                x = g(j, y);
            } while (x != s);
            p.rels.push_back(std::move(w));
            p.rel_color.push_back(j);
        }
    }
    Residues r = residues(g, hat(g.colors(), i));
    std::vector<int> par(r.count);
    std::iota(par.begin(), par.end(), 0);
    auto find = [&](int x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
    };
    for (int x = 0; x < p.gens; ++x) {
        int v = p.gen_vertex[x];
        int a = find(r.comp[v]), b = find(r.comp[g(i, v)]);
        if (a == b) continue;
        par[a] = b;
        p.rels.push_back({x + 1});
        p.rel_color.push_back(-1);
    }
    return p;
}

Presentation parse_presentation(const std::string& text) {
    auto bar = text.find('|');
    auto lt = text.find('<'), gt = text.rfind('>');
    if (bar == std::string::npos || lt == std::string::npos || gt == std::string::npos || !(lt < bar && bar < gt))
        throw std::invalid_argument("expected <gens | rels>");
    std::vector<std::string> names;
    std::string cur;
    for (size_t t = lt + 1; t <= bar; ++t) {
        char ch = text[t];
        if (ch == ',' || ch == '|' || std::isspace((unsigned char)ch)) {
            if (!cur.empty()) names.push_back(cur), cur.clear();
        } else {
            cur += ch;
        }
    }
    for (auto& n : names)
        if (n.size() != 1 || !std::isalpha((unsigned char)n[0])) throw std::invalid_argument("generator names are single letters");
    Presentation p;
    p.gens = int(names.size());
    auto id = [&](char c) {
        for (int x = 0; x < p.gens; ++x)
            if (std::tolower(names[x][0]) == std::tolower((unsigned char)c)) return x;
        throw std::invalid_argument(std::string("unknown generator ") + c);
    };
    Word w;
    auto flush = [&] {
        if (!w.empty()) p.rels.push_back(w), w.clear();
    };
    for (size_t t = bar + 1; t < gt; ++t) {
        char ch = text[t];
        if (ch == ',') {
            flush();
            continue;
        }
        if (std::isspace((unsigned char)ch)) continue;
        if (ch == '^' || ch == '-' || ch == '1') {
            // x^-1 written as "x^-1"
            if (ch == '1' && !w.empty() && t >= 2 && text[t - 1] == '-') w.back() = -w.back();
            continue;
        }
        if (!std::isalpha((unsigned char)ch)) throw std::invalid_argument("bad relator character");
        int x = id(ch) + 1;
        // uppercase letter means inverse
        w.push_back(std::isupper((unsigned char)ch) && std::islower((unsigned char)names[x - 1][0]) ? -x : x);
    }
    flush();
    p.rel_color.assign(p.rels.size(), -1);
    return p;
}

std::string to_string(const Presentation& p) {
    auto name = [&](int x) -> std::string {
        if (p.gens <= 26) return std::string(1, char('a' + x));
        return "x" + std::to_string(x);
    };
    std::ostringstream o;
    o << '<';
    for (int x = 0; x < p.gens; ++x) o << (x ? "," : "") << name(x);
    o << " |";
    for (size_t r = 0; r < p.rels.size(); ++r) {
        o << (r ? ", " : " ");
        for (int l : p.rels[r]) o << name(std::abs(l) - 1) << (l < 0 ? "^-1" : "");
    }
    o << '>';
    return o.str();
}

nlohmann::json to_json(const Presentation& p) {
    return {{"generators", p.gens}, {"relators", p.rels}, {"color", p.color}};
}

Abelian smith_cokernel(std::vector<std::vector<long long>> a, int cols) {
    int rows = int(a.size());
    std::vector<long long> diag;
    int r0 = 0;
    auto check = [](long long x) {
        if (x > (1ll << 60) || x < -(1ll << 60)) throw std::overflow_error("smith normal form overflow");
    };
    for (int c0 = 0; c0 < cols && r0 < rows; ++c0) {
        while (true) {
            // smallest nonzero in the remaining block
            int pr = -1, pc = -1;
            long long best = 0;
            for (int r = r0; r < rows; ++r)
                for (int c = c0; c < cols; ++c)
                    if (a[r][c] && (best == 0 || std::llabs(a[r][c]) < best)) best = std::llabs(a[r][c]), pr = r, pc = c;
            if (pr < 0) {
                c0 = cols;
                break;
            }
            std::swap(a[r0], a[pr]);
            for (auto& row : a) std::swap(row[c0], row[pc]);
            bool clean = true;
            for (int r = r0 + 1; r < rows; ++r) {
                if (!a[r][c0]) continue;
                long long q = a[r][c0] / a[r0][c0];
                for (int c = c0; c < cols; ++c) a[r][c] -= q * a[r0][c], check(a[r][c]);
                if (a[r][c0]) clean = false;
            }
            for (int c = c0 + 1; c < cols; ++c) {
                if (!a[r0][c]) continue;
                long long q = a[r0][c] / a[r0][c0];
                for (int r = r0; r < rows; ++r) a[r][c] -= q * a[r][c0], check(a[r][c]);
                if (a[r0][c]) clean = false;
            }
            if (!clean) continue;
            diag.push_back(std::llabs(a[r0][c0]));
            ++r0;
            break;
        }
    }
    // invariant factors: enforce divisibility along the diagonal
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) {
            long long g = std::gcd(diag[i], diag[j]);
            long long l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    Abelian out;
    out.betti = cols - int(diag.size());
    for (auto d : diag)
        if (d > 1) out.torsion.push_back(d);
    return out;
}

Abelian abelianization(const Presentation& p) {
    std::vector<std::vector<long long>> m;
    for (auto& w : p.rels) {
        std::vector<long long> row(p.gens, 0);
        for (int l : w) row[std::abs(l) - 1] += l > 0 ? 1 : -1;
        m.push_back(std::move(row));
    }
    Abelian out = smith_cokernel(std::move(m), p.gens);
    return out;
}

const char* to_string(CollapseTrace::Outcome o) {
    switch (o) {
        case CollapseTrace::trivialized: return "trivialized";
        case CollapseTrace::stuck: return "stuck";
        default: return "budget_exhausted";
    }
}

namespace {

// Erase dead letters and cyclically free-reduce.
Word reduce(const Word& w, const std::vector<char>& live) {
    Word out;
    for (int l : w) {
        if (!live[std::abs(l) - 1]) continue;
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    size_t b = 0, e = out.size();
    while (e - b >= 2 && out[b] == -out[e - 1]) ++b, --e;
    return Word(out.begin() + b, out.begin() + e);
}

struct Searcher {
    const Presentation& p;
    long budget;
    CollapseTrace t;
    std::unordered_set<std::string> seen;
    std::vector<std::pair<int, int>> path;

    // (relator, generator) moves enabled at `live`, lowest relator first
    std::vector<std::pair<int, int>> moves(const std::vector<char>& live) {
        std::vector<std::pair<int, int>> out;
        std::vector<char> taken(p.gens, 0);
        for (int r = 0; r < int(p.rels.size()); ++r) {
            Word w = reduce(p.rels[r], live);
            if (w.size() == 1) {
                int x = std::abs(w[0]) - 1;
                if (!taken[x]) out.push_back({r, x}), taken[x] = 1;
            } else if (!w.empty()) {
                bool power = std::all_of(w.begin(), w.end(), [&](int l) { return l == w[0]; });
                if (power) t.square_seen = true;
            }
        }
        return out;
    }

    bool dfs(std::vector<char>& live, int remaining) {
        if (remaining == 0) return true;
        if (t.states >= budget) return false;
        ++t.states;
        for (auto [r, x] : moves(live)) {
            live[x] = 0;
            std::string key(live.begin(), live.end());
            if (seen.insert(key).second) {
                path.push_back({r, x});
                if (dfs(live, remaining - 1)) return true;
                path.pop_back();
            }
            live[x] = 1;
            if (t.states >= budget) return false;
        }
        return false;
    }
};

}  // namespace

int replay(const Presentation& p, const std::vector<std::pair<int, int>>& steps) {
    std::vector<char> live(p.gens, 1);
    int remaining = p.gens;
    for (auto [r, x] : steps) {
        if (r < 0 || r >= int(p.rels.size()) || x < 0 || x >= p.gens || !live[x]) return -1;
        Word w = reduce(p.rels[r], live);
        if (w.size() != 1 || std::abs(w[0]) - 1 != x) return -1;
        live[x] = 0;
        --remaining;
    }
    return remaining;
}

CollapseTrace collapse_search(const Presentation& p, long budget) {
    Searcher s{p, budget, {}, {}, {}};
    std::vector<char> live(p.gens, 1);
    int remaining = p.gens;
    // greedy pass
    while (remaining > 0) {
        auto mv = s.moves(live);
        if (mv.empty()) break;
        live[mv[0].second] = 0;
        s.path.push_back(mv[0]);
        --remaining;
        ++s.t.states;
    }
    if (remaining == 0) {
        s.t.outcome = CollapseTrace::trivialized;
        s.t.greedy = true;
        s.t.steps = s.path;
        return s.t;
    }
    // exhaustive fallback from the start
    s.path.clear();
    std::fill(live.begin(), live.end(), 1);
    s.seen.insert(std::string(live.begin(), live.end()));
    bool ok = s.dfs(live, p.gens);
    if (ok) {
        s.t.outcome = CollapseTrace::trivialized;
        s.t.steps = s.path;
    } else {
        s.t.outcome = s.t.states >= budget ? CollapseTrace::budget_exhausted : CollapseTrace::stuck;
    }
    return s.t;
}

nlohmann::json to_json(const CollapseTrace& t) {
    nlohmann::json steps = nlohmann::json::array();
    for (auto [r, x] : t.steps) steps.push_back({r, x});
    return {{"outcome", to_string(t.outcome)}, {"steps", steps}, {"states", t.states}, {"power_relator", t.square_seen}};
}

long default_budget(long fallback) {
    if (const char* e = std::getenv("GEMKIT_BUDGET")) {
        char* end = nullptr;
        long v = std::strtol(e, &end, 10);
        if (end && *end == 0 && v > 0) return v;
    }
    return fallback;
}

}  // namespace gemkit
