#include "gemkit/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace gemkit {

std::vector<int> members(ColorSet s) {
    std::vector<int> out;
    for (int c = 0; s >> c; ++c)
        if (s & bit(c)) out.push_back(c);
    return out;
}

Graph Graph::make(int colors, std::vector<std::vector<int>> adj) {
    if (colors < 1 || int(adj.size()) != colors) throw std::invalid_argument("color count mismatch");
    Graph g;
    g.k_ = colors;
    g.n_ = int(adj[0].size());
    if (g.n_ % 2) throw std::invalid_argument("odd vertex count");
    for (int c = 0; c < colors; ++c) {
        if (int(adj[c].size()) != g.n_) throw std::invalid_argument("ragged adjacency");
        for (int v = 0; v < g.n_; ++v) {
            int u = adj[c][v];
            if (u < 0 || u >= g.n_)
                throw std::invalid_argument("vertex " + std::to_string(v) + " lacks color " + std::to_string(c));
            if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(v));
            if (adj[c][u] != v) throw std::invalid_argument("color " + std::to_string(c) + " is not a matching");
        }
    }
    g.adj_ = std::move(adj);
    g.parts_ = g.two_color();
    return g;
}

Graph Graph::order_two(int colors) {
    return make(colors, std::vector<std::vector<int>>(colors, {1, 0}));
}

std::vector<int> Graph::two_color() const {
    std::vector<int> side(n_, -1);
    std::vector<int> st;
    bool ok = true;
    for (int s = 0; s < n_ && ok; ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        st.push_back(s);
        while (!st.empty() && ok) {
            int v = st.back();
            st.pop_back();
            for (int c = 0; c < k_; ++c) {
                int u = adj_[c][v];
                if (side[u] < 0) {
                    side[u] = 1 - side[v];
                    st.push_back(u);
                } else if (side[u] == side[v]) {
                    ok = false;
                    break;
                }
            }
        }
    }
    if (!ok) side.clear();
    return side;
}

bool Graph::connected() const { return n_ == 0 || count(*this, all_colors(k_)) == 1; }

namespace {

struct Lexer {
    std::string line;
    int lineno;
    size_t pos = 0;
    // returns token and its 1-based column, empty token at end
    std::pair<std::string, int> next() {
        while (pos < line.size() && std::isspace((unsigned char)line[pos])) ++pos;
        size_t b = pos;
        while (pos < line.size() && !std::isspace((unsigned char)line[pos])) ++pos;
        return {line.substr(b, pos - b), int(b) + 1};
    }
};

[[noreturn]] void syntax(int line, int col, const std::string& what) {
    ParseError e(ParseError::Syntax, "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what);
    e.line = line;
    e.col = col;
    throw e;
}

long parse_int(Lexer& lx, const char* what) {
    auto [tok, col] = lx.next();
    if (tok.empty()) syntax(lx.lineno, col, std::string("expected ") + what);
    size_t used = 0;
    long v = 0;
    try {
        v = std::stol(tok, &used);
    } catch (...) {
        used = 0;
    }
    if (used != tok.size()) syntax(lx.lineno, col, std::string("bad integer for ") + what + ": '" + tok + "'");
    return v;
}

void expect_end(Lexer& lx) {
    auto [tok, col] = lx.next();
    if (!tok.empty()) syntax(lx.lineno, col, "trailing token '" + tok + "'");
}

struct Assembler {
    int k, n;
    std::vector<std::vector<int>> adj;
    Assembler(int k_, int n_) : k(k_), n(n_), adj(k_, std::vector<int>(n_, -1)) {}

    void add(int c, int u, int v, int line) {
        if (u == v) {
            ParseError e(ParseError::Loop, "line " + std::to_string(line) + ": loop at vertex " + std::to_string(u));
            e.line = line;
            e.vertex = u;
            e.color = c;
            throw e;
        }
        for (int x : {u, v})
            if (adj[c][x] >= 0) {
                ParseError e(ParseError::Duplicate, "line " + std::to_string(line) + ": vertex " + std::to_string(x) +
                                                        " already has color " + std::to_string(c));
                e.line = line;
                e.vertex = x;
                e.color = c;
                throw e;
            }
        adj[c][u] = v;
        adj[c][v] = u;
    }

    Graph finish() {
        for (int v = 0; v < n; ++v)
            for (int c = 0; c < k; ++c)
                if (adj[c][v] < 0) {
                    ParseError e(ParseError::Degree,
                                 "vertex " + std::to_string(v) + " has no edge of color " + std::to_string(c));
                    e.vertex = v;
                    e.color = c;
                    throw e;
                }
        return Graph::make(k, std::move(adj));
    }
};

}  // namespace

Graph parse_gem(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::optional<Assembler> as;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        Lexer lx{raw, lineno};
        auto save = lx.pos;
        if (lx.next().first.empty()) continue;
        lx.pos = save;
        if (!as) {
            auto [kw, col] = lx.next();
            if (kw != "gem") syntax(lineno, col, "expected header 'gem <k> <2p>'");
            long k = parse_int(lx, "color count");
            long n = parse_int(lx, "vertex count");
            expect_end(lx);
            if (k < 1 || k > 31) syntax(lineno, 5, "color count out of range");
            if (n < 2 || n % 2) syntax(lineno, 5, "vertex count must be even and positive");
            as.emplace(int(k), int(n));
            continue;
        }
        auto colpos = [&] {
            Lexer t = lx;
            while (t.pos < t.line.size() && std::isspace((unsigned char)t.line[t.pos])) ++t.pos;
            return int(t.pos) + 1;
        };
        int cc = colpos();
        long c = parse_int(lx, "color");
        if (c < 0 || c >= as->k) syntax(lineno, cc, "color out of range");
        int cu = colpos();
        long u = parse_int(lx, "vertex");
        if (u < 0 || u >= as->n) syntax(lineno, cu, "vertex out of range");
        int cv = colpos();
        long v = parse_int(lx, "vertex");
        if (v < 0 || v >= as->n) syntax(lineno, cv, "vertex out of range");
        expect_end(lx);
        as->add(int(c), int(u), int(v), lineno);
    }
    if (!as) syntax(lineno + 1, 1, "missing header");
    return as->finish();
}

Graph parse_gem_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        ParseError pe(ParseError::Syntax, std::string("json: ") + e.what());
        pe.col = int(e.byte);
        throw pe;
    }
    try {
        int k = j.at("colors").get<int>();
        int n = j.at("vertices").get<int>();
        if (k < 1 || k > 31 || n < 2 || n % 2) throw ParseError(ParseError::Syntax, "json: bad header values");
        Assembler as(k, n);
        int idx = 0;
        for (auto& e : j.at("edges")) {
            ++idx;
            int c = e.at(0).get<int>(), u = e.at(1).get<int>(), v = e.at(2).get<int>();
            if (c < 0 || c >= k || u < 0 || u >= n || v < 0 || v >= n)
                throw ParseError(ParseError::Syntax, "json: edge " + std::to_string(idx) + " out of range");
            as.add(c, u, v, idx);
        }
        return as.finish();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(ParseError::Syntax, std::string("json: ") + e.what());
    }
}

Graph parse_any(const std::string& text) {
    auto p = text.find_first_not_of(" \t\r\n");
    if (p != std::string::npos && text[p] == '{') return parse_gem_json(text);
    return parse_gem(text);
}

Graph load_gem(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_any(ss.str());
}

std::string to_text(const Graph& g) {
    std::ostringstream o;
    o << "gem " << g.colors() << ' ' << g.order() << '\n';
    for (int c = 0; c < g.colors(); ++c)
        for (int u = 0; u < g.order(); ++u)
            if (u < g(c, u)) o << c << ' ' << u << ' ' << g(c, u) << '\n';
    return o.str();
}

nlohmann::json to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (int c = 0; c < g.colors(); ++c)
        for (int u = 0; u < g.order(); ++u)
            if (u < g(c, u)) edges.push_back({c, u, g(c, u)});
    return {{"colors", g.colors()}, {"vertices", g.order()}, {"edges", edges}};
}

std::vector<std::vector<int>> Residues::components() const {
    std::vector<std::vector<int>> out(count);
    for (int v = 0; v < int(comp.size()); ++v) out[comp[v]].push_back(v);
    return out;
}

Residues residues(const Graph& g, ColorSet colors) {
    Residues r;
    r.colors = colors;
    r.comp.assign(g.order(), -1);
    auto cs = members(colors);
    std::vector<int> st;
    for (int s = 0; s < g.order(); ++s) {
        if (r.comp[s] >= 0) continue;
        r.comp[s] = r.count;
        st.push_back(s);
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int c : cs) {
                int u = g(c, v);
                if (r.comp[u] < 0) {
                    r.comp[u] = r.count;
                    st.push_back(u);
                }
            }
        }
        ++r.count;
    }
    return r;
}

int count(const Graph& g, ColorSet colors) { return residues(g, colors).count; }

Graph restrict(const Graph& g, ColorSet colors, const std::vector<int>& verts) {
    std::vector<int> idx(g.order(), -1);
    for (int i = 0; i < int(verts.size()); ++i) idx[verts[i]] = i;
    std::vector<std::vector<int>> adj;
    for (int c : members(colors)) {
        std::vector<int> row(verts.size());
        for (int i = 0; i < int(verts.size()); ++i) {
            int u = idx[g(c, verts[i])];
            if (u < 0) throw std::invalid_argument("vertex set not closed under the colors");
            row[i] = u;
        }
        adj.push_back(std::move(row));
    }
    int k = int(adj.size());
    return Graph::make(k, std::move(adj));
}

std::vector<std::vector<int>> cycles(const Graph& g, int c1, int c2) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(g.order(), 0);
    for (int s = 0; s < g.order(); ++s) {
        if (seen[s]) continue;
        std::vector<int> cyc;
        int v = s;
        do {
            cyc.push_back(v);
            seen[v] = 1;
            int u = g(c1, v);
            cyc.push_back(u);
            seen[u] = 1;
            v = g(c2, u);
        } while (v != s);
        out.push_back(std::move(cyc));
    }
    return out;
}

const char* to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        default: return "unknown";
    }
}

}  // namespace gemkit
