#include "gemkit/genus.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gemkit {

Perm Perm::canonical() const {
    Perm p = *this;
    int n = size();
    int top = *std::max_element(p.seq.begin(), p.seq.end());
    auto it = std::find(p.seq.begin(), p.seq.end(), top);
    std::rotate(p.seq.begin(), it + 1, p.seq.end());
    Perm r = p;
    std::reverse(r.seq.begin(), r.seq.begin() + (n - 1));
    return r.seq < p.seq ? r : p;
}

Perm Perm::without(int pos) const {
    Perm p;
    for (int i = 0; i < size(); ++i)
        if (i != pos) p.seq.push_back(seq[i]);
    return p;
}

Perm Perm::associated() const {
    if (size() != 5) throw std::invalid_argument("associated permutation needs five colors");
    return Perm{{seq[0], seq[2], seq[4], seq[1], seq[3]}};
}

std::string Perm::str() const {
    std::string s;
    for (int c : seq) s += char('0' + c);
    return s;
}

Perm parse_perm(const std::string& s) {
    Perm p;
    for (char ch : s) {
        if (ch == ',' || ch == ' ' || ch == '(' || ch == ')') continue;
        if (ch < '0' || ch > '9') throw std::invalid_argument("bad permutation '" + s + "'");
        p.seq.push_back(ch - '0');
    }
    auto sorted = p.seq;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < int(sorted.size()); ++i)
        if (sorted[i] != i) throw std::invalid_argument("not a permutation of 0..n: '" + s + "'");
    return p;
}

std::vector<Perm> canonical_perms(int k) {
    std::vector<int> base(k - 1);
    std::iota(base.begin(), base.end(), 0);
    std::vector<Perm> out;
    do {
        Perm p{base};
        p.seq.push_back(k - 1);
        if (p.canonical() == p) out.push_back(p);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

namespace {

ColorSet set_of(const Perm& eps) {
    ColorSet s = 0;
    for (int c : eps.seq) s |= bit(c);
    return s;
}

int consecutive_sum(const Graph& g, const Perm& eps) {
    int s = 0;
    for (int j = 0; j < eps.size(); ++j) s += count(g, bit(eps[j]) | bit(eps[j + 1]));
    return s;
}

}  // namespace

int regular_genus(const Graph& g, const Perm& eps) {
    if (eps.size() != g.colors() || set_of(eps) != all_colors(g.colors()))
        throw std::invalid_argument("permutation does not match the color set");
    if (!g.bipartite()) throw std::invalid_argument("graph is not bipartite");
    if (!g.connected()) throw std::invalid_argument("graph is not connected");
    int n = g.colors() - 1, p = g.order() / 2;
    int two_minus = consecutive_sum(g, eps) + (1 - n) * p;
    if ((2 - two_minus) % 2 || two_minus > 2) throw IdentityError("regular genus is not a non-negative integer");
    return (2 - two_minus) / 2;
}

int residue_genus(const Graph& g, const Perm& eps) {
    int h = eps.size();
    if (h <= 2) return 0;
    ColorSet s = set_of(eps);
    int comps = count(g, s), p = g.order() / 2;
    int num = 2 * comps - consecutive_sum(g, eps) - (2 - h) * p;
    if (num % 2 || num < 0) throw IdentityError("residue genus is not a non-negative integer");
    return num / 2;
}

std::string triple_name(ColorSet s) {
    std::string out;
    for (int c : members(s)) out += char('0' + c);
    return out;
}

int defect(const Graph& g, ColorSet triple, const Context& ctx) {
    ColorSet rest = all_colors(5) & ~triple;
    auto rs = members(rest);
    int base = count(g, hat(5, rs[0])) + count(g, hat(5, rs[1])) - 1;
    int rank = (triple & bit(4)) ? ctx.m : ctx.m_prime;
    return count(g, triple) - base - rank;
}

Defects defects(const Graph& g, const Context& ctx) {
    Defects t;
    for (ColorSet s = 0; s < 32; ++s)
        if (std::popcount(s) == 3) t[s] = defect(g, s, ctx);
    return t;
}

Profile genus_profile(const Graph& g, const Perm& eps, const Context& ctx, bool strict) {
    if (g.colors() != 5 || eps.size() != 5) throw std::invalid_argument("genus profile needs a 5-colored graph");
    Profile pr;
    pr.eps = eps;
    pr.rho = regular_genus(g, eps);
    for (int i = 0; i < 5; ++i) pr.rho_hat[i] = residue_genus(g, eps.without(i));
    pr.t = defects(g, ctx);
    for (auto& [s, v] : pr.t) pr.q += v;
    if (strict) {
        for (auto& [s, v] : pr.t)
            if (v < 0) throw IdentityError("negative defect t_" + triple_name(s));
        if (!eq_subgenera(g, eps, pr)) throw IdentityError("residue-count relation fails for " + eps.str());
    }
    return pr;
}

bool eq_subgenera(const Graph& g, const Perm& eps, const Profile& pr) {
    auto rh = [&](int i) { return pr.rho_hat[((i % 5) + 5) % 5]; };
    for (int i = 0; i < 5; ++i) {
        int lhs = count(g, bit(eps[i]) | bit(eps[i + 2]) | bit(eps[i + 3]));
        int rhs = count(g, hat(5, eps[i - 1])) + count(g, hat(5, eps[i + 1])) - 1 + pr.rho - rh(i - 1) - rh(i + 1);
        if (lhs != rhs) return false;
    }
    return true;
}

bool is_crystallization(const Graph& g) {
    if (!g.connected()) return false;
    for (int c = 0; c < g.colors(); ++c)
        if (count(g, hat(g.colors(), c)) != 1) return false;
    return true;
}

bool is_weak_semi_simple(const Graph& g, const Perm& eps, const Context& ctx) {
    if (!is_crystallization(g)) throw std::invalid_argument("not a crystallization");
    bool direct = true;
    for (int i = 0; i < 5; ++i) {
        int want = (i == 1 || i == 3) ? 1 + ctx.m_prime : 1 + ctx.m;
        if (count(g, bit(eps[i]) | bit(eps[i + 2]) | bit(eps[i + 4])) != want) direct = false;
    }
    Profile pr = genus_profile(g, eps, ctx, false);
    int d = pr.rho - ctx.m;
    bool via_genus = d % 2 == 0;
    for (int i = 0; i < 4 && via_genus; ++i)
        if (pr.rho_hat[i] != d / 2) via_genus = false;
    if (via_genus && pr.rho_hat[4] != d / 2 + (ctx.m - ctx.m_prime)) via_genus = false;
    if (direct != via_genus) throw IdentityError("weak semi-simple test disagrees with the genus criterion");
    return direct;
}

bool is_semi_simple(const Graph& g, const Context& ctx) {
    if (!is_crystallization(g)) throw std::invalid_argument("not a crystallization");
    bool direct = true;
    for (ColorSet s = 0; s < 32; ++s) {
        if (std::popcount(s) != 3) continue;
        int want = (s & bit(4)) ? 1 + ctx.m : 1 + ctx.m_prime;
        if (count(g, s) != want) direct = false;
    }
    bool via_t = true;
    for (auto& [s, v] : defects(g, ctx))
        if (v != 0) via_t = false;
    if (direct != via_t) throw IdentityError("semi-simple test disagrees with the defects");
    return direct;
}

ChiReport euler_char(const Graph& g, const Perm& eps) {
    ChiReport r;
    int rho = regular_genus(g, eps), sum = 0;
    for (int i = 0; i < 5; ++i) sum += residue_genus(g, eps.without(i));
    r.via_genus = 2 - 2 * rho + sum;
    int hats = 0, triples = 0;
    for (int c = 0; c < 5; ++c) hats += count(g, hat(5, c));
    for (ColorSet s = 0; s < 32; ++s)
        if (std::popcount(s) == 3) triples += count(g, s);
    r.via_residues = 3 * hats - triples + g.order() / 2;
    r.agree = r.via_residues == 3 * r.via_genus;
    return r;
}

DifferenceReport check_rho_difference(const Graph& g, const Perm& eps, const Context& ctx) {
    DifferenceReport d;
    Perm e2 = eps.associated();
    d.rho = regular_genus(g, eps);
    d.rho_assoc = regular_genus(g, e2);
    d.lhs = d.rho_assoc - d.rho;
    auto t = defects(g, ctx);
    auto tt = [&](int a, int b, int c) { return t.at(bit(eps[a]) | bit(eps[b]) | bit(eps[c])); };
    int cons = 0, skip = 0;
    for (int i = 0; i < 5; ++i) {
        cons += tt(i, i + 1, i + 2);
        skip += tt(i, i + 2, i + 4);
    }
    for (auto& [s, v] : t) d.q += v;
    d.rhs = cons - skip;
    d.difference_ok = d.lhs == d.rhs;
    d.bound_ok = d.lhs <= d.q;
    auto chi = euler_char(g, eps);
    d.chi = chi.value();
    d.rho_chi_rhs = 2 * d.chi + 5 * ctx.m - 2 * (ctx.m - ctx.m_prime) - 4 + skip;
    d.rho_chi_ok = d.rho == d.rho_chi_rhs;
    return d;
}

nlohmann::json profile_row(const std::string& name, const Graph& g, const Perm& eps, const Context& ctx) {
    nlohmann::json row;
    row["graph"] = name;
    row["perm"] = eps.str();
    Profile pr = genus_profile(g, eps, ctx, false);
    row["rho"] = pr.rho;
    row["rho_res"] = pr.rho_hat;
    nlohmann::json dj = nlohmann::json::object();
    for (auto& [s, v] : pr.t) dj[triple_name(s)] = v;
    row["defects"] = dj;
    auto chi = euler_char(g, eps);
    row["chi"] = chi.value();
    bool cryst = is_crystallization(g);
    row["weak_semi_simple"] = cryst ? nlohmann::json(is_weak_semi_simple(g, eps, ctx)) : nlohmann::json(nullptr);
    nlohmann::json checks;
    checks["subgenera"] = eq_subgenera(g, eps, pr);
    if (cryst) {
        auto d = check_rho_difference(g, eps, ctx);
        checks["rho_difference"] = d.difference_ok && d.bound_ok;
        checks["rho_chi"] = d.rho_chi_ok;
    } else {
        checks["rho_difference"] = nullptr;
        checks["rho_chi"] = nullptr;
    }
    checks["chi_agree"] = chi.agree;
    row["checks"] = checks;
    return row;
}

}  // namespace gemkit
