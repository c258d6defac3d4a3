#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace gemkit {

using ColorSet = std::uint32_t;

inline ColorSet bit(int c) { return ColorSet(1) << c; }
inline ColorSet all_colors(int k) { return (ColorSet(1) << k) - 1; }
inline ColorSet hat(int k, int c) { return all_colors(k) & ~bit(c); }
std::vector<int> members(ColorSet s);

struct ParseError : std::runtime_error {
    enum Kind { Syntax, Degree, Loop, Duplicate };
    Kind kind;
    int line = 0, col = 0;
    int vertex = -1, color = -1;
    ParseError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Regular edge-colored multigraph, one involution per color.
class Graph {
public:
    Graph() = default;

    // Validates: every slot filled, involutive, loop free.
    static Graph make(int colors, std::vector<std::vector<int>> adj);
    static Graph order_two(int colors);

    int colors() const { return k_; }
    int order() const { return n_; }
    int operator()(int c, int v) const { return adj_[c][v]; }
    const std::vector<std::vector<int>>& adjacency() const { return adj_; }

    // 0/1 per vertex, empty if not bipartite. Computed once in make(), so
    // graphs stay immutable and shareable across threads.
    const std::vector<int>& bipartition() const { return parts_; }
    bool bipartite() const { return !bipartition().empty(); }
    bool connected() const;

    bool operator==(const Graph& o) const { return k_ == o.k_ && adj_ == o.adj_; }

private:
    int k_ = 0, n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<int> parts_;
    std::vector<int> two_color() const;
};

Graph parse_gem(const std::string& text);
Graph parse_gem_json(const std::string& text);
// Dispatches on the first non-blank character.
Graph parse_any(const std::string& text);
Graph load_gem(const std::string& path);

std::string to_text(const Graph& g);
nlohmann::json to_json(const Graph& g);

struct Residues {
    ColorSet colors = 0;
    std::vector<int> comp;  // component id per vertex
    int count = 0;
    std::vector<std::vector<int>> components() const;
};

Residues residues(const Graph& g, ColorSet colors);
int count(const Graph& g, ColorSet colors);

// Subgraph induced on `verts` keeping only `colors` (renumbered in order).
Graph restrict(const Graph& g, ColorSet colors, const std::vector<int>& verts);

// Bicolored cycles as vertex sequences starting at the smallest vertex.
std::vector<std::vector<int>> cycles(const Graph& g, int c1, int c2);

enum class Tri { yes, no, unknown };
const char* to_string(Tri t);

struct ClassTag {
    bool bipartite = false;
    bool connected = false;
    bool crystallization = false;
    bool in_gs4 = false;
    std::vector<Tri> singular;  // per color: is some c-hat residue not a sphere
};

// Residue sphere checks go through moves::sphere_reduce. in_gs4 needs one
// 4-hat residue and colors 0..3 certified ordinary; assume_ordinary lets
// an undecided residue pass.
ClassTag classify(const Graph& g, int budget = 10000, bool assume_ordinary = false);

}  // namespace gemkit
