#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gemkit/graph.hpp"
#include "gemkit/pi1.hpp"

namespace gemkit {

// PD crossing (a,b,c,d): a is the incoming under-arc, c the outgoing one,
// b and d the over-arcs, listed counterclockwise. The crossing is positive
// when the over-strand runs from d to b (KnotTheory convention, so
// X(1,5,2,4) is positive and the standard trefoil has writhe +3).
using Crossing = std::array<int, 4>;

struct LinkError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Half-edge h = 4*i + p is position p of crossing i; a corner has the same
// encoding and sits between positions p and p+1.
class Diagram {
public:
    explicit Diagram(std::vector<Crossing> x);

    const std::vector<Crossing>& crossings() const { return x_; }
    int size() const { return int(x_.size()); }
    int label(int h) const { return x_[h / 4][h % 4]; }
    int other_end(int h) const;

    std::vector<std::vector<int>> faces() const;
    std::vector<int> face_of_corner() const;

    struct Components {
        std::map<int, int> of_label;
        std::vector<std::vector<int>> seqs;  // (entry, exit) half-edge pairs in traversal order
    };
    Components components() const;

    // Position (1 or 3) of the incoming over-arc per crossing; throws on an
    // inconsistent orientation.
    std::vector<int> over_in() const;
    std::vector<int> signs() const;
    std::vector<int> writhe() const;
    std::vector<std::vector<long long>> linking(const std::vector<int>& framings) const;

    std::vector<std::pair<int, int>> edges() const;
    std::vector<int> edge_of_half() const;

    // 0/1 per face; adjacent faces differ.
    std::vector<int> two_coloring() const;
    bool planar() const { return int(faces().size()) == size() + 2; }

private:
    std::vector<Crossing> x_;
    std::map<int, std::vector<int>> where_;
};

struct FramedLink {
    std::vector<Crossing> pd;  // empty: the round unknot
    std::vector<int> framings; // by component, components ordered by lowest arc label
    int components() const;
};

FramedLink parse_link(const std::string& text);
FramedLink load_link(const std::string& path);
std::string to_string(const FramedLink& d);

struct Chessboard {
    std::vector<std::vector<int>> faces;
    std::vector<int> is_alpha;  // per face
    int m_alpha = 0;
    int alpha_count() const { return m_alpha; }
};

// The infinite face is placed in the smaller class (ties: the class holding a
// face of maximal degree, then the lowest face id).
Chessboard chessboard(const FramedLink& d);
Chessboard chessboard(const Diagram& d);

struct Gadget {
    int crossing;  // the curl crossing
    int corner;    // loop corner, 4*crossing + k
    int sign;
};

struct SelfFramed {
    FramedLink link;
    std::vector<Gadget> gadgets;  // one per component
    int root_corner = -1;         // a corner of the shared root face
    int m_alpha = 0;
};

// Adds one gadget curl per component on a common beta face, then framing
// curls at the lowest free arc label, so that each self-writhe equals c_i.
SelfFramed self_frame(const FramedLink& d);

// Curve-level Heegaard diagram; points are integer ids.
struct Heegaard {
    std::vector<std::vector<int>> alpha, beta;
    std::vector<int> sign;  // by point id
    std::vector<int> alab;  // crossing index, or -1 for a longitude
    std::vector<int> blab;  // face id

    bool slide(int j, int a1, int b1);
    void destab(int a1, int b1);
    std::vector<std::pair<int, int>> single_pairs() const;
    Heegaard doubled() const;

private:
    struct Where {
        std::vector<int> ac, at, bc, bt;
    };
    Where where() const;
    int fresh(int sg);
};

std::optional<Graph> gem_from_curves(const std::vector<std::vector<int>>& alpha,
                                     const std::vector<std::vector<int>>& beta);

struct LinkBuild {
    SelfFramed framed;
    int m_alpha = 0, l = 0;
    Heegaard base;     // before destabilization
    Heegaard reduced;  // after
    Graph lambda, omega, gamma;
    std::vector<std::array<int, 6>> hexagons;
};

// Heegaard diagram of surgery on the self-framed diagram, with a longitude
// per component whose side choices keep the blackboard framing.
Heegaard base_heegaard(const SelfFramed& s);
Graph build_lambda(const SelfFramed& s);
Heegaard reduce_heegaard(const SelfFramed& s, Heegaard h);
Graph reduce_lambda(const SelfFramed& s);

// 6-cycles alternating color 1 with 0, 2, 3 in some order.
std::vector<std::array<int, 6>> hexagons(const Graph& omega);
Graph attach_hexagons(const Graph& omega, const std::vector<std::array<int, 6>>& hexes);

struct Certificate {
    int m_alpha = 0, l = 0;
    int rho = 0, rho_hat4 = 0;
    std::string verdict;
    std::map<std::string, bool> checks;
    bool ok() const;
    nlohmann::json json() const;
};

// Full pipeline with postconditions. Throws LinkError when no hexagon
// choice passes them.
LinkBuild forge(const FramedLink& d, int sphere_budget = 10000);
Certificate certify(const LinkBuild& b, long budget);

// H1 of the surgered 3-manifold from the linking matrix.
Abelian surgery_homology(const FramedLink& d);

}  // namespace gemkit
