#pragma once

#include <string>
#include <vector>

#include "gemkit/graph.hpp"

namespace gemkit {

// Letters are +(x+1) / -(x+1) for generator x.
using Word = std::vector<int>;

struct Presentation {
    int gens = 0;
    std::vector<Word> rels;
    // provenance, empty for hand-built presentations
    std::vector<int> gen_vertex;       // endpoint of the edge on the even side
    std::vector<int> rel_color;        // j of the {i,j}-cycle, -1 for spanning relators
    int color = -1;
};

// Generators: i-edges oriented from the even side. Relators: one cyclic word
// per {i,j}-cycle, plus single letters for a spanning set of i-edges joining
// the components of the i-hat residue.
Presentation presentation(const Graph& g, int i);

Presentation parse_presentation(const std::string& text);  // "<x,y | xy, y>"
std::string to_string(const Presentation& p);
nlohmann::json to_json(const Presentation& p);

struct Abelian {
    int betti = 0;
    std::vector<long long> torsion;  // invariant factors > 1
    bool trivial() const { return betti == 0 && torsion.empty(); }
};

// Cokernel of an integer matrix with `cols` columns.
Abelian smith_cokernel(std::vector<std::vector<long long>> rows, int cols);
Abelian abelianization(const Presentation& p);

struct CollapseTrace {
    enum Outcome { trivialized, stuck, budget_exhausted };
    Outcome outcome = stuck;
    std::vector<std::pair<int, int>> steps;  // (relator, generator)
    long states = 0;
    bool greedy = false;       // the greedy pass alone trivialized
    bool square_seen = false;  // some relator reduced to x^2 or longer single-generator power
};

const char* to_string(CollapseTrace::Outcome o);

// Applies the steps to p, returning the surviving generator count (0 when
// trivialized) or -1 if a step is not legal at its point.
int replay(const Presentation& p, const std::vector<std::pair<int, int>>& steps);

CollapseTrace collapse_search(const Presentation& p, long budget = 1000000);
nlohmann::json to_json(const CollapseTrace& t);

long default_budget(long fallback = 1000000);

}  // namespace gemkit
