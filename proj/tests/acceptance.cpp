// End-to-end acceptance checks. Each criterion prints exactly one pass/fail
// line; the process exits nonzero if any criterion fails.

#include "rdgfv/coeff_oracle.hpp"
#include "rdgfv/study.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace rdgfv;

namespace {

int failures = 0;

void report(int id, const std::string& label, bool pass, const std::string& detail = "") {
    std::printf("criterion %2d [%s]: %s%s%s\n", id, label.c_str(), pass ? "pass" : "FAIL",
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

std::string rates_str(const std::vector<double>& rates) {
    std::string s;
    char buf[32];
    for (double r : rates) {
        std::snprintf(buf, sizeof(buf), "%.3f ", r);
        s += buf;
    }
    return s;
}

struct RateCheck {
    std::vector<double> l2, sip_star;
    double max_residual = 0.0;
    ConvergenceTable table;
};

RateCheck rates_for(int dim, BoundaryCondition bc, int order, double eta,
                    const std::string& problem, const std::vector<int>& n_list) {
    SchemeConfig cfg;
    cfg.dim = dim;
    cfg.bc = bc;
    cfg.order = order;
    cfg.eta = eta;
    cfg.n = n_list.front();
    RateCheck rc;
    rc.table = run_convergence(cfg, get_problem(problem, dim, bc), n_list);
    for (const ConvergenceRow& row : rc.table.rows) {
        rc.max_residual = std::max(rc.max_residual, row.residual);
        if (row.has_rates) {
            rc.l2.push_back(row.l2_rate);
            rc.sip_star.push_back(row.sip_star_rate);
        }
    }
    return rc;
}

bool last_k_in(const std::vector<double>& rates, std::size_t k, double lo, double hi) {
    if (rates.size() < k) return false;
    for (std::size_t i = rates.size() - k; i < rates.size(); ++i)
        if (rates[i] < lo || rates[i] > hi) return false;
    return true;
}

bool all_in(const std::vector<double>& rates, double lo, double hi) {
    return last_k_in(rates, rates.size(), lo, hi);
}

}  // namespace

int main() {
    // 1: Dirichlet 1D, u = x sin(pi x), second order in l2 and sip,*
    {
        const RateCheck rc = rates_for(1, BoundaryCondition::dirichlet, 2, 0.0, "xsinpix",
                                       {16, 32, 64, 128, 256});
        const bool pass = last_k_in(rc.l2, 3, 1.8, 2.2) && last_k_in(rc.sip_star, 3, 1.8, 2.2);
        report(1, "dirichlet-1d-rates", pass,
               "l2: " + rates_str(rc.l2) + "sip,*: " + rates_str(rc.sip_star));
    }

    // 2: Dirichlet 2D, u = x sin(pi x) y sin(pi y)
    {
        const RateCheck rc = rates_for(2, BoundaryCondition::dirichlet, 2, 0.0, "xsinpixy",
                                       {8, 16, 32, 64, 128});
        const bool pass = all_in(rc.l2, 1.75, 2.25) && all_in(rc.sip_star, 1.75, 2.25);
        report(2, "dirichlet-2d-rates", pass,
               "l2: " + rates_str(rc.l2) + "sip,*: " + rates_str(rc.sip_star));
    }

    // 3: Periodic 1D k=2, rates plus multiplier and mean
    {
        const RateCheck rc =
            rates_for(1, BoundaryCondition::periodic, 2, 0.0, "sin2pix", {16, 32, 64, 128});
        SchemeConfig cfg;
        cfg.dim = 1;
        cfg.bc = BoundaryCondition::periodic;
        cfg.order = 2;
        cfg.n = 64;
        const SolveResult sr = solve_problem(cfg, get_problem("sin2pix", 1, cfg.bc));
        double integral = 0.0;
        sr.averages.for_interior(
            [&](const MultiIndex& mi) { integral += sr.averages(mi); });
        integral /= cfg.n;
        const bool pass = all_in(rc.l2, 1.8, 2.2) && all_in(rc.sip_star, 1.8, 2.2) &&
                          std::abs(sr.multiplier) <= 1e-10 && std::abs(integral) <= 1e-12;
        char extra[96];
        std::snprintf(extra, sizeof(extra), "lambda=%.2e mean=%.2e", sr.multiplier, integral);
        report(3, "periodic-1d-k2", pass,
               "l2: " + rates_str(rc.l2) + "sip,*: " + rates_str(rc.sip_star) + extra);
    }

    // 4: Periodic 1D k=4, fourth order
    {
        const RateCheck rc =
            rates_for(1, BoundaryCondition::periodic, 4, 0.0, "sin2pix", {16, 32, 64, 128});
        const bool pass = all_in(rc.l2, 3.7, 4.3) && all_in(rc.sip_star, 3.7, 4.3);
        report(4, "periodic-1d-k4", pass,
               "l2: " + rates_str(rc.l2) + "sip,*: " + rates_str(rc.sip_star));
    }

    // 5: Periodic 2D k=2, l2 rates
    {
        const RateCheck rc = rates_for(2, BoundaryCondition::periodic, 2, 0.0,
                                       "sin2pixsin4piy", {8, 16, 32, 64});
        const bool pass = all_in(rc.l2, 1.75, 2.25);
        report(5, "periodic-2d-k2", pass, "l2: " + rates_str(rc.l2));
    }

    // 6: eta robustness across the analyzed penalty range
    {
        bool pass = true;
        std::string detail;
        for (double eta : {-1.4, 0.0, 1.0, 4.9}) {
            const RateCheck rc = rates_for(1, BoundaryCondition::dirichlet, 2, eta, "xsinpix",
                                           {16, 32, 64, 128});
            const bool ok = rc.max_residual <= 1e-12 && last_k_in(rc.l2, 2, 1.8, 2.2);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "eta=%.1f:%s ", eta, ok ? "ok" : "bad");
            detail += buf;
            pass = pass && ok;
        }
        report(6, "eta-robustness", pass, detail);
    }

    // 7: exact coefficient claims for m = 1..6
    {
        bool pass = true;
        std::string detail;
        for (int m = 1; m <= 6; ++m) {
            for (auto fn : {verify_sum_identity, verify_symmetry, verify_sign_alternation,
                            verify_monotonicity, verify_dominance, verify_flux_continuity}) {
                const ClaimReport r = fn(m);
                if (!r.passed()) {
                    pass = false;
                    detail += r.claim_id + "@m=" + std::to_string(m) + " ";
                }
            }
        }
        report(7, "coefficient-oracle", pass, detail);
    }

    // 8: local quadratic-form matrix SPD
    {
        const MatrixMReport mr = derive_matrix_m();
        const bool pass = mr.symmetric && mr.eigenvalues.size() == 8 &&
                          mr.eigenvalues.front() > 0.0 && mr.min_normalized > 1e-10;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "min/max eigenvalue ratio %.3e", mr.min_normalized);
        report(8, "matrix-m-spd", pass, buf);
    }

    // 9: randomized k-exactness, rational and float
    {
        bool pass = true;
        for (int m : {1, 2}) {
            pass = pass && verify_k_exactness(m, 1, 100, 2024).passed();
            pass = pass && verify_k_exactness(m, 2, 100, 2025).passed();
        }
        // float path: reconstructed quadratic is exact to roundoff
        {
            SchemeConfig cfg;
            cfg.dim = 1;
            cfg.bc = BoundaryCondition::periodic;
            cfg.order = 2;
            cfg.n = 8;
            const CartesianMesh mesh = cfg.mesh();
            AvgField<double> field(mesh);
            for (int i = 0; i < 8; ++i) field.at1(i) = 1.0 + 0.5 * i;  // linear in index
            fill_ghosts_periodic(field);
            const Reconstructor rec(mesh);
            // inside cell 3 the field restricted to the stencil is linear
            const double x = (3 + 0.25) / 8.0;
            const double expected = 1.0 + 0.5 * (x * 8.0 - 0.5);
            pass = pass && std::abs(rec.value(field, {x, 0.0}) - expected) <= 1e-12;
        }
        report(9, "k-exactness", pass);
    }

    // 10: derivative jump continuity on random periodic fields
    {
        bool pass = true;
        double worst = 0.0;
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (int m : {1, 2}) {
            const Stencil1D& st = Stencil1D::get(m);
            const auto dl = st.derivative_weights_f(1.0);
            const auto dr = st.derivative_weights_f(0.0);
            const CartesianMesh mesh1(1, 16, m);
            for (int trial = 0; trial < 50; ++trial) {
                AvgField<double> f(mesh1);
                double scale = 0.0;
                for (int i = 0; i < 16; ++i) {
                    f.at1(i) = dist(rng);
                    scale = std::max(scale, std::abs(f.at1(i)));
                }
                fill_ghosts_periodic(f);
                for (int p = 0; p < 16; ++p) {
                    double a = 0.0, b = 0.0;
                    for (int s = -m; s <= m; ++s) {
                        a += dl[s + m] * f.at1(p - 1 + s);
                        b += dr[s + m] * f.at1(p + s);
                    }
                    worst = std::max(worst, std::abs(a - b) / std::max(scale, 1.0));
                }
            }
            const CartesianMesh mesh2(2, 8, m);
            const auto wq = st.value_weights_f(0.61803398875);
            for (int trial = 0; trial < 50; ++trial) {
                AvgField<double> f(mesh2);
                double scale = 0.0;
                for (int j = 0; j < 8; ++j)
                    for (int i = 0; i < 8; ++i) {
                        f.at2(i, j) = dist(rng);
                        scale = std::max(scale, std::abs(f.at2(i, j)));
                    }
                fill_ghosts_periodic(f);
                for (int t = 0; t < 8; ++t)
                    for (int p = 0; p < 8; ++p) {
                        double a = 0.0, b = 0.0;
                        for (int ty = -m; ty <= m; ++ty)
                            for (int s = -m; s <= m; ++s) {
                                a += dl[s + m] * wq[ty + m] * f.at2(p - 1 + s, t + ty);
                                b += dr[s + m] * wq[ty + m] * f.at2(p + s, t + ty);
                            }
                        worst = std::max(worst, std::abs(a - b) / std::max(scale, 1.0));
                    }
            }
        }
        pass = worst <= 1e-12;
        char buf[48];
        std::snprintf(buf, sizeof(buf), "max normalized jump %.2e", worst);
        report(10, "derivative-jump-continuity", pass, buf);
    }

    // 11: norm-equivalence ratio stability across mesh sizes. The extremal
    // ratios c1, c2 of |.|_{1,h} vs the reconstructed sip norm are the
    // generalized eigenvalue extremes of the two quadratic forms; random
    // sampling alone under-explores the extremes at larger n.
    {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        SchemeConfig cfg;
        cfg.dim = 1;
        cfg.bc = BoundaryCondition::dirichlet;
        cfg.order = 2;
        bool sampled_ok = true;
        std::vector<double> mins, maxs;
        for (int n : {8, 16, 32, 64}) {
            cfg.n = n;
            const CartesianMesh mesh = cfg.mesh();
            auto form = [&](auto&& norm, const Eigen::VectorXd& x) {
                AvgField<double> f(mesh);
                for (int i = 0; i < n; ++i) f.at1(i) = x[i];
                const double v = norm(cfg, f);
                return v * v;
            };
            Eigen::MatrixXd a(n, n), b(n, n);
            std::vector<double> ad(n), bd(n);
            for (int i = 0; i < n; ++i) {
                Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
                e[i] = 1.0;
                ad[i] = form(one_h_seminorm, e);
                bd[i] = form(sip_norm, e);
            }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j <= i; ++j) {
                    if (i == j) {
                        a(i, i) = ad[i];
                        b(i, i) = bd[i];
                        continue;
                    }
                    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
                    e[i] = e[j] = 1.0;
                    a(i, j) = a(j, i) = (form(one_h_seminorm, e) - ad[i] - ad[j]) / 2.0;
                    b(i, j) = b(j, i) = (form(sip_norm, e) - bd[i] - bd[j]) / 2.0;
                }
            Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, b);
            const double lo = std::sqrt(es.eigenvalues().minCoeff());
            const double hi = std::sqrt(es.eigenvalues().maxCoeff());
            mins.push_back(lo);
            maxs.push_back(hi);
            for (int trial = 0; trial < 100; ++trial) {
                AvgField<double> field(mesh);
                field.for_interior([&](const MultiIndex& mi) { field(mi) = dist(rng); });
                const double ratio = one_h_seminorm(cfg, field) / sip_norm(cfg, field);
                sampled_ok = sampled_ok && ratio >= lo * (1 - 1e-10) && ratio <= hi * (1 + 1e-10);
            }
        }
        auto spread = [](const std::vector<double>& v) {
            return *std::max_element(v.begin(), v.end()) /
                   *std::min_element(v.begin(), v.end());
        };
        const bool pass = sampled_ok && spread(mins) < 1.25 && spread(maxs) < 1.25;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "c1 spread %.3f, c2 spread %.3f, samples in [c1,c2]: %s",
                      spread(mins), spread(maxs), sampled_ok ? "yes" : "no");
        report(11, "norm-equivalence", pass, buf);
    }

    // 12: implementation coefficients equal the oracle exactly
    {
        bool pass = true;
        for (int m : {1, 2}) {
            const FluxCoefficients fc = derivative_flux_coeffs(m);
            const auto c = oracle::c_coeffs(m);
            const auto ct = oracle::c_tilde_coeffs(m);
            const auto gamma = oracle::gamma_coeffs(m);
            for (std::size_t i = 0; i < c.size(); ++i)
                pass = pass && fc.c_minus[i] == c[i] && fc.c_plus[i] == ct[i];
            for (std::size_t i = 0; i < gamma.size(); ++i) pass = pass && fc.gamma[i] == gamma[i];
        }
        // ghost rule vs an independent pinned-trace derivation
        {
            RationalMatrix a(2, 2);
            a(0, 0) = Rational(1, 2);
            a(0, 1) = Rational(1, 3);
            a(1, 0) = Rational(3, 2);
            a(1, 1) = Rational(7, 3);
            const RationalMatrix inv = a.inverse();
            const GhostRule rule = dirichlet_ghost_rule(1);
            for (int j = 0; j < 2; ++j) {
                const Rational w = Rational(-1, 2) * inv(0, j) + Rational(1, 3) * inv(1, j);
                pass = pass && rule.coefficients[j] == w;
            }
            pass = pass && rule.coefficients[0] == Rational(-5, 2) &&
                   rule.coefficients[1] == Rational(1, 2);
        }
        report(12, "oracle-vs-implementation", pass);
    }

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
