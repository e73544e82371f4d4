// Command-line front end: solve a single problem, run a convergence study,
// or run the exact-arithmetic coefficient verifier.
//
// Exit codes: 0 success, 2 usage error, 3 solver failure, 4 claim failure.

#include "rdgfv/coeff_oracle.hpp"
#include "rdgfv/study.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitClaim = 4;

rdgfv::BoundaryCondition parse_bc(const std::string& s) {
    if (s == "dirichlet") return rdgfv::BoundaryCondition::dirichlet;
    if (s == "periodic") return rdgfv::BoundaryCondition::periodic;
    throw CLI::ValidationError("--bc must be dirichlet or periodic");
}

struct CommonFlags {
    int dim = 1;
    std::string bc = "dirichlet";
    int order = 2;
    double eta = 0.0;
    std::string problem;
    double tol = 1e-12;
    std::string out;

    void attach(CLI::App* app, bool need_problem) {
        app->add_option("--dim", dim, "space dimension (1 or 2)")->check(CLI::Range(1, 2));
        app->add_option("--bc", bc, "boundary condition: dirichlet or periodic");
        app->add_option("--order", order, "reconstruction degree k (even)");
        app->add_option("--eta", eta, "jump penalty weight");
        auto* p = app->add_option("--problem", problem, "manufactured problem name");
        if (need_problem) p->required();
        app->add_option("--tol", tol, "residual tolerance");
        app->add_option("--out", out, "output CSV path (default: stdout)");
    }

    rdgfv::SchemeConfig config(int n) const {
        rdgfv::SchemeConfig cfg;
        cfg.dim = dim;
        cfg.bc = parse_bc(bc);
        cfg.order = order;
        cfg.eta = eta;
        cfg.n = n;
        cfg.validate();
        if (!cfg.eta_in_analyzed_range())
            std::cerr << "warning: eta = " << eta
                      << " is outside the analyzed stability range (-3/2, 5)\n";
        return cfg;
    }
};

void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        rdgfv::write_file(path, content);
}

std::string averages_csv(const rdgfv::SchemeConfig& cfg, const rdgfv::AvgField<double>& field) {
    std::ostringstream os;
    const auto& mesh = field.mesh();
    using rdgfv::detail::fmt17;
    if (cfg.dim == 1) {
        os << "i,x,avg\n";
        for (int i = 0; i < cfg.n; ++i)
            os << i << ',' << fmt17((i + 0.5) * mesh.h()) << ',' << fmt17(field.at1(i)) << '\n';
    } else {
        os << "i,j,x,y,avg\n";
        for (int j = 0; j < cfg.n; ++j)
            for (int i = 0; i < cfg.n; ++i)
                os << i << ',' << j << ',' << fmt17((i + 0.5) * mesh.h()) << ','
                   << fmt17((j + 0.5) * mesh.h()) << ',' << fmt17(field.at2(i, j)) << '\n';
    }
    return os.str();
}

int run_solve(const CommonFlags& flags, int n) {
    const rdgfv::SchemeConfig cfg = flags.config(n);
    const rdgfv::ProblemSpec& problem = rdgfv::get_problem(flags.problem, cfg.dim, cfg.bc);
    const rdgfv::SolveResult result = rdgfv::solve_problem(cfg, problem, flags.tol);
    emit(flags.out, averages_csv(cfg, result.averages));

    const rdgfv::ErrorReport& e = result.errors;
    std::cerr << "n=" << e.n << " h=" << e.h << " residual=" << result.residual << '\n'
              << "l2=" << e.l2 << " sip=" << e.sip << " sip_star=" << e.sip_star
              << " h1_broken=" << e.h1_broken << '\n';
    if (cfg.bc == rdgfv::BoundaryCondition::periodic) {
        double mean = 0.0;
        result.averages.for_interior(
            [&](const rdgfv::MultiIndex& mi) { mean += result.averages(mi); });
        mean /= static_cast<double>(result.averages.mesh().cell_count());
        std::cerr << "multiplier=" << result.multiplier << " mean=" << mean << '\n';
    }
    return 0;
}

int run_convergence(const CommonFlags& flags, const std::vector<int>& n_list,
                    const std::string& plot) {
    if (n_list.empty()) throw CLI::ValidationError("--n-list is required");
    rdgfv::SchemeConfig base = flags.config(n_list.front());
    const rdgfv::ProblemSpec& problem = rdgfv::get_problem(flags.problem, base.dim, base.bc);
    const rdgfv::ConvergenceTable table = rdgfv::run_convergence(base, problem, n_list, flags.tol);
    emit(flags.out, rdgfv::to_csv(table));
    if (!plot.empty()) rdgfv::write_file(plot, rdgfv::to_svg(table));
    return 0;
}

int run_verify(int m_max, const std::vector<std::string>& claims, unsigned seed) {
    using namespace rdgfv;
    std::vector<ClaimReport> reports;
    auto want = [&](const std::string& id) {
        return claims.empty() || std::find(claims.begin(), claims.end(), id) != claims.end();
    };
    for (int m = 1; m <= m_max; ++m) {
        if (want("sum-identity")) reports.push_back(verify_sum_identity(m));
        if (want("symmetry")) reports.push_back(verify_symmetry(m));
        if (want("sign-alternation")) reports.push_back(verify_sign_alternation(m));
        if (want("monotonicity")) reports.push_back(verify_monotonicity(m));
        if (want("dominance")) reports.push_back(verify_dominance(m));
        if (want("flux-continuity")) reports.push_back(verify_flux_continuity(m));
        if (want("k-exactness") && m <= 2) {
            reports.push_back(verify_k_exactness(m, 1, 20, seed));
            reports.push_back(verify_k_exactness(m, 2, 10, seed + 1));
        }
    }
    if (want("matrix-m")) reports.push_back(verify_matrix_M());

    bool all_pass = true;
    for (const ClaimReport& r : reports) {
        const char* verdict = r.verdict == Verdict::pass          ? "pass"
                              : r.verdict == Verdict::fail        ? "FAIL"
                                                                  : "n/a";
        std::cout << r.claim_id << " m=" << r.m << ' ' << verdict;
        if (!r.witness.empty()) std::cout << "  [" << r.witness << ']';
        std::cout << '\n';
        all_pass = all_pass && r.passed();
    }
    return all_pass ? 0 : kExitClaim;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite volume Poisson solver with polynomial reconstruction"};
    app.require_subcommand(1);

    CommonFlags solve_flags, conv_flags;
    int solve_n = 64;
    std::vector<int> n_list;
    std::string plot;
    int m_max = 6;
    std::vector<std::string> claims;
    unsigned seed = 12345;

    CLI::App* solve = app.add_subcommand("solve", "solve one problem instance");
    solve_flags.attach(solve, true);
    solve->add_option("--n", solve_n, "cells per direction");

    CLI::App* conv = app.add_subcommand("convergence", "mesh refinement study");
    conv_flags.attach(conv, true);
    conv->add_option("--n-list", n_list, "ascending cell counts")->delimiter(',');
    conv->add_option("--plot", plot, "write a log-log SVG plot to this path");

    CLI::App* verify = app.add_subcommand("verify", "exact coefficient claims");
    verify->add_option("--m-max", m_max, "largest stencil half-width")->check(CLI::Range(1, 20));
    verify->add_option("--claims", claims, "subset of claim ids (default: all)")->delimiter(',');
    verify->add_option("--seed", seed, "rng seed for randomized claims");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (solve->parsed()) return run_solve(solve_flags, solve_n);
        if (conv->parsed()) return run_convergence(conv_flags, n_list, plot);
        return run_verify(m_max, claims, seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolver;
    }
}
