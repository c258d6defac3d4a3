#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gemkit/graph.hpp"

namespace gemkit {

// Cyclic ordering of a color set. Canonical form: last entry is the largest
// color, and the smaller of the sequence and its reversal (last entry fixed).
struct Perm {
    std::vector<int> seq;
    int size() const { return int(seq.size()); }
    int operator[](int i) const { return seq[((i % size()) + size()) % size()]; }
    Perm canonical() const;
    Perm without(int pos) const;  // drop the entry at position pos
    Perm associated() const;      // (e0,e2,e4,e1,e3)
    std::string str() const;
    bool operator==(const Perm& o) const { return seq == o.seq; }
    bool operator<(const Perm& o) const { return seq < o.seq; }
};

Perm parse_perm(const std::string& s);

// The (k-1)!/2 canonical classes with last color k-1 (12 for k = 5).
std::vector<Perm> canonical_perms(int k);

struct IdentityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Genus of the regular embedding of a connected bipartite graph.
int regular_genus(const Graph& g, const Perm& eps);

// Sum of the genera of the components of the residue spanned by eps's colors.
int residue_genus(const Graph& g, const Perm& eps);

struct Context {
    int m = 0, m_prime = 0;
    bool supplied = false;
};

// t for the 3-subset given as a bitmask over five colors.
using Defects = std::map<ColorSet, int>;

struct Profile {
    Perm eps;
    int rho = 0;
    std::array<int, 5> rho_hat{};  // indexed by position in eps
    Defects t;
    int q = 0;
};

// Defect of a 3-subset with respect to the context.
int defect(const Graph& g, ColorSet triple, const Context& ctx);
Defects defects(const Graph& g, const Context& ctx);

Profile genus_profile(const Graph& g, const Perm& eps, const Context& ctx, bool strict = true);

// Residue-count relation linking the subgraph genera, checked for all i.
bool eq_subgenera(const Graph& g, const Perm& eps, const Profile& pr);

bool is_crystallization(const Graph& g);
bool is_weak_semi_simple(const Graph& g, const Perm& eps, const Context& ctx);
bool is_semi_simple(const Graph& g, const Context& ctx);

struct ChiReport {
    int via_genus = 0;
    int via_residues = 0;  // 3*chi, kept exact before dividing
    bool agree = false;
    int value() const { return via_genus; }
};

ChiReport euler_char(const Graph& g, const Perm& eps);

struct DifferenceReport {
    int rho = 0, rho_assoc = 0;
    int lhs = 0, rhs = 0, q = 0;
    bool difference_ok = false;
    bool bound_ok = false;
    int chi = 0;
    int rho_chi_rhs = 0;
    bool rho_chi_ok = false;
};

DifferenceReport check_rho_difference(const Graph& g, const Perm& eps, const Context& ctx);

// JSON row: {graph, perm, rho, rho_res, defects, chi, weak_semi_simple, checks}.
nlohmann::json profile_row(const std::string& name, const Graph& g, const Perm& eps, const Context& ctx);

std::string triple_name(ColorSet s);

}  // namespace gemkit
