// gemkit command-line frontend.
// Exit codes: 0 ok, 1 usage, 2 input error, 3 identity-check failure.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gemkit/genus.hpp"
#include "gemkit/linkforge.hpp"
#include "gemkit/moves.hpp"
#include "gemkit/pi1.hpp"
#include "gemkit/trisection.hpp"

using namespace gemkit;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { ok = 0, usage = 1, input = 2, identity = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* yn(bool b) { return b ? "yes" : "no"; }

void write_file(const fs::path& p, const std::string& s) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << s;
}

std::optional<Context> parse_ctx(const std::string& s) {
    if (s.empty()) return std::nullopt;
    int m = 0, mp = 0;
    char comma = 0;
    std::istringstream in(s);
    if (!(in >> m >> comma >> mp) || comma != ',' || !in.eof()) throw UsageError("--ctx expects m,m'");
    if (m < 0 || mp < 0 || mp > m) throw UsageError("--ctx needs 0 <= m' <= m");
    return Context{m, mp, true};
}

std::string color_name(ColorSet s) {
    std::string out;
    for (int c : members(s)) out += char('0' + c);
    return out;
}

Graph load_five(const std::string& path) {
    Graph g = load_gem(path);
    if (g.colors() != 5) throw std::invalid_argument(path + ": expected a 5-colored graph, got " + std::to_string(g.colors()));
    if (!g.bipartite() || !g.connected()) throw std::invalid_argument(path + ": graph must be connected and bipartite");
    return g;
}

int cmd_validate(const std::string& path) {
    Graph g = load_gem(path);
    std::cout << path << ": ok, " << g.colors() << " colors, " << g.order() << " vertices, bipartite "
              << yn(g.bipartite()) << ", connected " << yn(g.connected()) << "\n";
    return ok;
}

int cmd_info(const std::string& path, const std::string& ctxs, bool as_json, bool assume_ordinary, long budget) {
    Graph g = load_gem(path);
    auto ctx = parse_ctx(ctxs);
    Context c = ctx.value_or(Context{});
    int k = g.colors();
    ClassTag tag = classify(g, int(std::min<long>(budget, 1 << 30)), assume_ordinary);

    json j;
    j["graph"] = path;
    j["colors"] = k;
    j["vertices"] = g.order();
    j["bipartite"] = tag.bipartite;
    j["connected"] = tag.connected;
    j["crystallization"] = tag.crystallization;
    j["in_gs4"] = tag.in_gs4;
    json sing = json::object();
    for (int col = 0; col < k; ++col) sing[std::to_string(col)] = to_string(tag.singular[col]);
    j["singular"] = sing;
    json res = json::array();
    for (ColorSet s = 1; s < all_colors(k); ++s) {
        int n = std::popcount(s);
        if (n < 2 || n > k - 1) continue;
        res.push_back({{"colors", color_name(s)}, {"count", count(g, s)}});
    }
    j["residues"] = res;
    json rows = json::array();
    if (k == 5 && tag.bipartite && tag.connected) {
        for (auto& eps : canonical_perms(5)) rows.push_back(profile_row(path, g, eps, c));
        if (!ctx) j["context_assumed"] = "m = m' = 0";
    } else if (tag.bipartite && tag.connected) {
        for (auto& eps : canonical_perms(k)) rows.push_back({{"perm", eps.str()}, {"rho", regular_genus(g, eps)}});
    }
    j["genus"] = rows;

    if (as_json) {
        std::cout << j.dump(2) << "\n";
        return ok;
    }
    std::cout << path << ": " << k << " colors, " << g.order() << " vertices\n";
    std::cout << "bipartite " << yn(tag.bipartite) << ", connected " << yn(tag.connected) << ", crystallization "
              << yn(tag.crystallization) << ", in G_s^(4) " << yn(tag.in_gs4) << "\n";
    std::string flagged;
    for (int col = 0; col < k; ++col)
        if (tag.singular[col] != Tri::no)
            flagged += " " + std::to_string(col) + (tag.singular[col] == Tri::unknown ? "(?)" : "");
    std::cout << "singular colors:" << (flagged.empty() ? " none" : flagged) << "\n\nresidues\n";
    for (auto& r : res) std::cout << "  g_" << std::left << std::setw(6) << r["colors"].get<std::string>() << r["count"].get<int>() << "\n";
    if (rows.empty()) return ok;
    std::cout << "\ngenus\n";
    if (k != 5) {
        for (auto& r : rows) std::cout << "  " << r["perm"].get<std::string>() << "  rho " << r["rho"] << "\n";
        return ok;
    }
    std::cout << "  perm    rho  rho_hat  chi  weak_ss  subg  diff  rchi  chi2\n";
    auto flag = [](const json& v) { return v.is_null() ? std::string("-") : v.get<bool>() ? std::string("ok") : std::string("FAIL"); };
    for (auto& r : rows) {
        std::string hats;
        for (auto& h : r["rho_res"]) hats += std::to_string(h.get<int>());
        std::string weak = r["weak_semi_simple"].is_null() ? "-" : yn(r["weak_semi_simple"].get<bool>());
        std::cout << "  " << r["perm"].get<std::string>() << std::right << std::setw(6) << r["rho"].get<int>() << "  "
                  << std::left << std::setw(7) << hats << std::right << std::setw(5) << r["chi"].get<int>() << "  " << std::left
                  << std::setw(9) << weak << std::setw(6) << flag(r["checks"]["subgenera"]) << std::setw(6) << flag(r["checks"]["rho_difference"])
                  << std::setw(6) << flag(r["checks"]["rho_chi"]) << flag(r["checks"]["chi_agree"]) << "\n";
    }
    if (!ctx) std::cout << "(context not given: m = m' = 0 assumed)\n";
    return ok;
}

struct TrisectOpts {
    int apex = 4;
    bool all = false, traces = false, warn_only = false, assume_ordinary = false;
    std::string ctx;
};

int cmd_trisect(const std::string& path, const TrisectOpts& o, long budget) {
    Graph g = load_five(path);
    auto ctx = parse_ctx(o.ctx);
    if (o.apex < 0 || o.apex > 4) throw UsageError("--apex must be in 0..4");
    std::vector<int> apices{o.apex};
    ClassTag tag = classify(relabel_apex(g, o.apex), 10000, o.assume_ordinary);
    if (!o.all && !tag.in_gs4) std::cerr << "warning: " << path << " is not certified in G_s^(4) for apex " << o.apex << "\n";
    if (o.all) {
        for (int c = 0; c < 5; ++c)
            if (tag.singular[c] == Tri::yes || (tag.singular[c] == Tri::unknown && !o.assume_ordinary)) throw std::invalid_argument(path + ": --all needs a closed gem (color " + std::to_string(c) + " may be singular)");
        apices = {0, 1, 2, 3, 4};
    } else if (count(relabel_apex(g, o.apex), hat(5, 4)) != 1) {
        throw std::invalid_argument(path + ": the residue missing color " + std::to_string(o.apex) + " is not connected");
    }
    bool all_ok = true;
    for (int a : apices)
        for (auto& tc : tricolorings(a)) {
            auto r = trisect(g, tc, budget, ctx ? &*ctx : nullptr);
            r.graph = path;
            all_ok = all_ok && r.checks_ok();
            std::cout << to_json(r, o.traces).dump() << "\n";
        }
    if (!all_ok && !o.warn_only) return identity;
    if (!all_ok) std::cerr << "warning: identity checks failed\n";
    return ok;
}

int cmd_fromlink(const std::string& pdfile, const std::string& out, std::string cert_path, long budget) {
    FramedLink d = load_link(pdfile);
    LinkBuild b = forge(d);
    Certificate cert = certify(b, budget);
    fs::path op(out);
    if (cert_path.empty()) cert_path = (op.parent_path() / (op.stem().string() + ".cert.json")).string();
    write_file(op, to_text(b.gamma));
    write_file(cert_path, cert.json().dump(2) + "\n");
    std::cout << out << ": " << b.gamma.order() << " vertices, m_alpha " << cert.m_alpha << ", rho " << cert.rho
              << ", verdict " << cert.verdict << ", certificate " << (cert.ok() ? "ok" : "FAILED") << "\n";
    return cert.ok() ? ok : identity;
}

int cmd_census(const std::string& catalog, int jobs, const std::string& report, const std::string& mode, bool warn_only,
               long budget) {
    if (jobs < 1) throw UsageError("--jobs must be positive");
    CensusMode m;
    if (mode == "all") m = CensusMode::all_apices;
    else if (mode == "fixed") m = CensusMode::fixed_apex;
    else throw UsageError("--mode is fixed or all");
    auto entries = load_catalog(catalog);
    CensusResult res = census(entries, m, budget, jobs);
    std::string nd = census_ndjson(res), csv = census_csv(res);
    if (report.empty()) {
        std::cout << nd;
    } else {
        write_file(report + ".ndjson", nd);
        write_file(report + ".csv", csv);
        write_file(report + ".summary.json", res.summary.dump(2) + "\n");
    }
    bool bad_input = false, failed = false;
    for (auto& row : res.rows) {
        if (row.identity_failure || (row.report && !row.report->checks_ok())) failed = true;
        else if (!row.report) bad_input = true;
    }
    for (auto& s : res.summary)
        if (s.contains("expect_mismatch") && !s["expect_mismatch"].empty()) failed = true;
    int cells = 0, induced = 0;
    for (auto& row : res.rows)
        if (row.report) ++cells, induced += row.report->verdict == Verdict::gem_induced;
    std::cerr << entries.size() << " graphs, " << cells << " cells, " << induced << " gem-induced"
              << (bad_input ? ", some rows flagged" : "") << (failed ? ", identity or expectation failures" : "") << "\n";
    if (failed && !warn_only) return identity;
    if (bad_input) return input;
    return ok;
}

int parse_vertex(const std::string& s, const Graph& g, bool last, long budget) {
    if (s == "auto") return collapse_vertex(g, last, budget);
    std::size_t used = 0;
    int v = -1;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || v < 0 || v >= g.order()) throw UsageError("vertex must be 'auto' or in 0.." + std::to_string(g.order() - 1));
    return v;
}

int cmd_consum(const std::string& f1, const std::string& v1, const std::string& f2, const std::string& v2,
               const std::string& out, long budget) {
    Graph a = load_gem(f1), b = load_gem(f2);
    if (a.colors() != b.colors()) throw std::invalid_argument("graphs have different color counts");
    int x = parse_vertex(v1, a, true, budget), y = parse_vertex(v2, b, false, budget);
    Graph s = connected_sum(a, x, b, y);
    write_file(out, to_text(s));
    std::cout << out << ": " << s.order() << " vertices (vertices " << x << " and " << y << ")\n";
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gemkit: colored graphs encoding PL 4-manifolds"};
    app.require_subcommand(1);
    long budget = default_budget();
    app.add_option("--budget", budget, "search budget in states (default: GEMKIT_BUDGET or 1000000)")->check(CLI::PositiveNumber);

    std::string path, ctx, out, cert, f1, f2, v1, v2, report, mode = "all";
    bool as_json = false, warn_only = false;
    int jobs = 1;
    TrisectOpts to;

    auto* validate = app.add_subcommand("validate", "parse and check a gem file");
    validate->add_option("path", path)->required();

    auto* info = app.add_subcommand("info", "residues, flags and genus table");
    info->add_option("path", path)->required();
    info->add_option("--ctx", ctx, "m,m' (ranks of pi1 of M and of its boundary-capped closure)");
    info->add_flag("--json", as_json);
    info->add_flag("--assume-ordinary", to.assume_ordinary, "count undecided residues as spheres");

    auto* tri = app.add_subcommand("trisect", "gem-induced trisection reports as NDJSON");
    tri->add_option("path", path)->required();
    tri->add_option("--apex", to.apex, "apex color");
    tri->add_flag("--all", to.all, "all five apex colors (closed gems)");
    tri->add_option("--ctx", to.ctx, "m,m'");
    tri->add_flag("--traces", to.traces, "include collapse traces");
    tri->add_flag("--warn-only", to.warn_only, "report failed identity checks without failing");
    tri->add_flag("--assume-ordinary", to.assume_ordinary, "count undecided residues as spheres");

    auto* fl = app.add_subcommand("fromlink", "build a gem from a framed PD code");
    fl->add_option("pdfile", path)->required();
    fl->add_option("out", out)->required();
    fl->add_option("--cert", cert, "certificate path (default: <out stem>.cert.json)");

    auto* cen = app.add_subcommand("census", "trisect every gem of a catalog");
    cen->add_option("catalog", path)->required();
    cen->add_option("--jobs", jobs, "worker threads");
    cen->add_option("--report", report, "write <report>.ndjson, .csv and .summary.json");
    cen->add_option("--mode", mode, "fixed (apex 4) or all (every apex of closed gems)");
    cen->add_flag("--warn-only", warn_only);

    auto* cs = app.add_subcommand("consum", "graph connected sum");
    cs->add_option("f1", f1)->required();
    cs->add_option("v1", v1, "vertex of f1, or auto")->required();
    cs->add_option("f2", f2)->required();
    cs->add_option("v2", v2, "vertex of f2, or auto")->required();
    cs->add_option("out", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*validate) return cmd_validate(path);
        if (*info) return cmd_info(path, ctx, as_json, to.assume_ordinary, budget);
        if (*tri) return cmd_trisect(path, to, budget);
        if (*fl) return cmd_fromlink(path, out, cert, budget);
        if (*cen) return cmd_census(path, jobs, report, mode, warn_only, budget);
        if (*cs) return cmd_consum(f1, v1, f2, v2, out, budget);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return usage;
    } catch (const IdentityError& e) {
        std::cerr << "identity check failed: " << e.what() << "\n";
        return identity;
    } catch (const ParseError& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        return input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input;
    }
    return usage;
}
