#pragma once

#include <chrono>
#include <map>
#include <string>

#include "gemkit/trisection.hpp"
#include "support.hpp"

namespace testing {

struct SuiteResult {
    int gems = 0, cells = 0;
    std::map<std::string, int> checked, failed;
    double seconds = 0;
    bool ok() const {
        for (auto& [k, v] : failed)
            if (v) return false;
        return gems > 0;
    }
};

// Random proper dipole insertions on seeds of known Euler characteristic.
// Every identity is checked for all 12 permutations; the trisection ones
// for the three tricolorings at apex 4.
inline SuiteResult run_identity_suite(int count, int max_order, unsigned seed) {
    using namespace gemkit;
    auto t0 = std::chrono::steady_clock::now();
    struct Seed {
        Graph g;
        Context ctx;
        int chi;
    };
    std::vector<Seed> seeds{{Graph::order_two(5), {0, 0, true}, 2},
                            {load("cp2.gem"), {0, 0, true}, 3},
                            {load("y4_1.gem"), {1, 0, true}, 1},
                            {load("y4_2.gem"), {2, 0, true}, 0},
                            {load("s2xs2.gem"), {0, 0, true}, 4}};
    std::mt19937 rng(seed);
    SuiteResult res;
    auto note = [&](const char* what, bool ok) {
        ++res.checked[what];
        res.failed[what] += !ok;
    };
    for (int i = 0; i < count; ++i) {
        const Seed& s = seeds[i % seeds.size()];
        Graph g = random_gem(rng, s.g, max_order);
        ++res.gems;
        bool cryst = is_crystallization(g);
        for (auto& eps : canonical_perms(5)) {
            ++res.cells;
            note("reg_emb", regular_genus(g, eps) == traced_genus(g, eps));
            auto pr = genus_profile(g, eps, s.ctx, false);
            note("subgenera", eq_subgenera(g, eps, pr));
            auto chi = euler_char(g, eps);
            note("chi_routes", chi.agree);
            note("chi_invariant", chi.value() == s.chi);
            if (cryst) {
                bool nonneg = true;
                for (auto& [t, v] : pr.t) nonneg = nonneg && v >= 0;
                note("defects", nonneg);
                auto d = check_rho_difference(g, eps, s.ctx);
                note("rho_difference", d.difference_ok && d.bound_ok);
                note("rho_chi", d.rho_chi_ok);
            }
        }
        Graph h = normalize_to_gs4(g);
        for (auto& tc : tricolorings(4)) {
            auto r = quasi_trisection(h, tc.perm());
            note("central_surface", r.central_ok);
            note("trisection_chi", r.chi_ok && r.chi == s.chi);
            note("euler_split", r.euler_split_ok);
        }
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace testing
