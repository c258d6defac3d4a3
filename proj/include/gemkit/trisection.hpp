#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gemkit/genus.hpp"
#include "gemkit/graph.hpp"
#include "gemkit/pi1.hpp"

namespace gemkit {

struct Tricoloring {
    int apex = 4;
    std::array<int, 2> red{}, green{};
    Perm perm() const { return Perm{{red[0], green[0], red[1], green[1], apex}}; }
    std::string pairing() const;  // e.g. "02|13"
};

// The three pairings of the non-apex colors, red pair holding the smallest.
std::vector<Tricoloring> tricolorings(int apex);
Tricoloring tricoloring_of(const Perm& eps);

// Swap colors a and 4 so that the apex becomes the last color.
Graph relabel_apex(const Graph& g, int apex);

enum class Verdict { gem_induced, not_collapsible, unknown, pending };
const char* to_string(Verdict v);

struct SpineTrace {
    CollapseTrace::Outcome outcome = CollapseTrace::stuck;
    std::vector<int> order;  // cell labels in removal order
    long states = 0;
    bool greedy = false;
};

struct TrisectionReport {
    std::string graph;
    Tricoloring tc;
    int genus_central = 0;
    int genus_H1 = 0, genus_H2 = 0;
    int chi = 0;
    Verdict verdict = Verdict::pending;
    bool euler_split_ok = false;     // chi = 2 + g - g1 - g2
    bool central_ok = false;         // residue genus vs surface Euler count
    bool chi_ok = false;             // both chi formulas
    bool routes_agree = true;        // presentation vs spine
    Tri closed = Tri::unknown;       // apex-hat residue is a sphere
    Tri weak_semi_simple = Tri::unknown;
    CollapseTrace presentation_trace;
    SpineTrace spine_trace;
    bool checks_ok() const { return euler_split_ok && central_ok && chi_ok && routes_agree; }
};

// Graph must already have its apex relabeled to 4 and a single 4-hat residue.
TrisectionReport quasi_trisection(const Graph& g, const Perm& eps, int sphere_budget = 10000);
// 2-cells and, per edge, the incident cells with multiplicity.
struct Spine {
    std::vector<int> label;  // per cell: even endpoint of the 4-edge, or relator index
    std::vector<std::vector<int>> edges;
};
// Squares are 4-edges, edges the {4,i}-cycles.
Spine spine_of(const Graph& g);
// Presentation complex: relators as cells, generators as edges.
Spine spine_of(const Presentation& p);
SpineTrace spine_collapse(const Spine& s, long budget);
SpineTrace spine_collapse(const Graph& g, long budget);
void resolve_verdict(const Graph& g, TrisectionReport& r, long budget);

// Relabels, normalizes and runs both routes for one tricoloring.
TrisectionReport trisect(const Graph& g, const Tricoloring& tc, long budget, const Context* ctx = nullptr);

nlohmann::json to_json(const TrisectionReport& r, bool traces = false);

struct Bounds {
    int lower = 0, upper = 0;
    bool tight = false;
    bool weak_semi_simple_witness = false;
};

Bounds gtg_bounds(const std::vector<TrisectionReport>& reports, const Context& ctx, int beta1, int beta2,
                  std::optional<int> heegaard = std::nullopt);

// Endpoint of the last (or first) square removed by the spine collapse.
int collapse_vertex(const Graph& g, bool last, long budget);

struct CatalogEntry {
    std::string path, label;
    std::optional<Context> ctx;
    std::optional<int> beta1, beta2, heegaard;
    nlohmann::json expect;
};

std::vector<CatalogEntry> load_catalog(const std::string& path);

enum class CensusMode { fixed_apex, all_apices };

struct CensusRow {
    std::string graph;
    int apex = 4;
    std::string pairing;
    std::optional<TrisectionReport> report;
    std::string error;
    bool identity_failure = false;
};

struct CensusResult {
    std::vector<CensusRow> rows;
    nlohmann::json summary;  // per graph
};

CensusResult census(const std::vector<CatalogEntry>& entries, CensusMode mode, long budget, int jobs);
std::string census_ndjson(const CensusResult& r);
std::string census_csv(const CensusResult& r);

}  // namespace gemkit
