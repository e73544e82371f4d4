#pragma once

#include "rdgfv/basis.hpp"
#include "rdgfv/rational.hpp"
#include "rdgfv/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace rdgfv {

enum class Verdict { pass, fail, not_applicable };

struct ClaimReport {
    std::string claim_id;
    int m = 0;
    Verdict verdict = Verdict::pass;
    std::string witness;

    bool passed() const { return verdict != Verdict::fail; }
};

namespace oracle {

/// Second derivative of the Lagrange node polynomial at a point, exact.
inline Rational lagrange_dd(int m, int node, const Rational& x) {
    return lagrange_basis(m, node).derivative().derivative()(x);
}

/// c_{s,m} = sum_{k=s}^{m} L''_{k+1}(0), s = -m..m. These are the derivative
/// weights of the reconstruction at the left node of the owner cell, built
/// from the Lagrange route rather than the moment solve.
inline std::vector<Rational> c_coeffs(int m) {
    std::vector<Rational> dd(2 * m + 2);  // dd[j+m] = L''_j(0), j = -m..m+1
    for (int j = -m; j <= m + 1; ++j) dd[j + m] = lagrange_dd(m, j, 0);
    std::vector<Rational> c(2 * m + 1);
    for (int s = -m; s <= m; ++s) {
        Rational sum = 0;
        for (int k = s; k <= m; ++k) sum += dd[k + 1 + m];
        c[s + m] = sum;
    }
    return c;
}

/// Same construction from the right node of the adjacent cell:
/// c~_{s,m} = sum_{k=s}^{m} L''_{k+1}(1).
inline std::vector<Rational> c_tilde_coeffs(int m) {
    std::vector<Rational> dd(2 * m + 2);
    for (int j = -m; j <= m + 1; ++j) dd[j + m] = lagrange_dd(m, j, 1);
    std::vector<Rational> c(2 * m + 1);
    for (int s = -m; s <= m; ++s) {
        Rational sum = 0;
        for (int k = s; k <= m; ++k) sum += dd[k + 1 + m];
        c[s + m] = sum;
    }
    return c;
}

/// gamma_{s,m} = sum_{k=s}^{m-1} c_{k,m}, s = -m+1..m-1.
inline std::vector<Rational> gamma_coeffs(int m) {
    const std::vector<Rational> c = c_coeffs(m);
    std::vector<Rational> gamma(2 * m - 1);
    for (int s = -m + 1; s <= m - 1; ++s) {
        Rational sum = 0;
        for (int k = s; k <= m - 1; ++k) sum += c[k + m];
        gamma[s + m - 1] = sum;
    }
    return gamma;
}

/// Closed form |L''_k(0)| = 2 (m!)^2 / (k^2 (m+k)! (m-k)!), k = 1..m.
inline Rational lagrange_dd_closed_form(int m, int k) {
    const BigInt mf = factorial(m);
    return Rational(2 * mf * mf, BigInt(k) * k * factorial(m + k) * factorial(m - k));
}

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace oracle

inline ClaimReport verify_sum_identity(int m) {
    ClaimReport rep{"sum-identity", m};
    Rational sum = 0;
    const auto c = oracle::c_coeffs(m);
    for (int s = -m; s <= m - 1; ++s) sum += c[s + m];
    if (sum != 0) {
        rep.verdict = Verdict::fail;
        rep.witness = "sum = " + oracle::to_string(sum);
    }
    return rep;
}

inline ClaimReport verify_symmetry(int m) {
    ClaimReport rep{"symmetry", m};
    if (m == 1) {
        rep.witness = "vacuous (no off-center gamma)";
        return rep;
    }
    const auto gamma = oracle::gamma_coeffs(m);
    for (int k = 1; k <= m - 1; ++k) {
        if (gamma[k + m - 1] != gamma[-k + m - 1]) {
            rep.verdict = Verdict::fail;
            rep.witness = "gamma_" + std::to_string(k) + " != gamma_" + std::to_string(-k);
            return rep;
        }
    }
    return rep;
}

inline ClaimReport verify_sign_alternation(int m) {
    ClaimReport rep{"sign-alternation", m};
    for (int k = 1; k <= m; ++k) {
        const Rational dd = oracle::lagrange_dd(m, k, 0);
        const bool want_positive = (k % 2 == 1);
        if ((want_positive && dd <= 0) || (!want_positive && dd >= 0)) {
            rep.verdict = Verdict::fail;
            rep.witness = "L''_" + std::to_string(k) + "(0) = " + oracle::to_string(dd);
            return rep;
        }
    }
    const auto gamma = oracle::gamma_coeffs(m);
    if (gamma[m - 1] <= 0) {
        rep.verdict = Verdict::fail;
        rep.witness = "gamma_0 = " + oracle::to_string(gamma[m - 1]);
        return rep;
    }
    for (int k = 1; k <= m - 1; ++k) {
        const Rational& g = gamma[k + m - 1];
        const bool want_positive = (k % 2 == 0);
        if ((want_positive && g <= 0) || (!want_positive && g >= 0)) {
            rep.verdict = Verdict::fail;
            rep.witness = "gamma_" + std::to_string(k) + " = " + oracle::to_string(g);
            return rep;
        }
    }
    return rep;
}

inline ClaimReport verify_monotonicity(int m) {
    ClaimReport rep{"monotonicity", m};
    if (m == 1) {
        rep.verdict = Verdict::not_applicable;
        rep.witness = "no ratio to check (L''_2(0) = 0)";
        return rep;
    }
    for (int k = 1; k <= m - 1; ++k) {
        const Rational lhs =
            abs(oracle::lagrange_dd(m, k + 1, 0)) / abs(oracle::lagrange_dd(m, k, 0));
        const Rational rhs =
            Rational(BigInt(k) * k * (m - k), BigInt(k + 1) * (k + 1) * (k + m + 1));
        if (lhs != rhs) {
            rep.verdict = Verdict::fail;
            rep.witness = "ratio at k=" + std::to_string(k) + ": " + oracle::to_string(lhs) +
                          " expected " + oracle::to_string(rhs);
            return rep;
        }
    }
    return rep;
}

inline ClaimReport verify_dominance(int m) {
    ClaimReport rep{"dominance", m};
    const auto gamma = oracle::gamma_coeffs(m);
    Rational off = 0;
    for (int k = -m + 1; k <= m - 1; ++k)
        if (k != 0) off += abs(gamma[k + m - 1]);
    const Rational center = gamma[m - 1];
    std::string gs = "gamma = (";
    for (std::size_t i = 0; i < gamma.size(); ++i)
        gs += (i ? ", " : "") + oracle::to_string(gamma[i]);
    rep.witness = gs + "), gamma_0 = " + oracle::to_string(center) +
                  ", sum|off| = " + oracle::to_string(off);
    if (center <= off) rep.verdict = Verdict::fail;
    return rep;
}

inline ClaimReport verify_flux_continuity(int m) {
    ClaimReport rep{"flux-continuity", m};
    const auto c = oracle::c_coeffs(m);
    const auto ct = oracle::c_tilde_coeffs(m);
    if (c[2 * m] != 0 || ct[0] != 0) {
        rep.verdict = Verdict::fail;
        rep.witness = "extreme coefficient nonzero";
        return rep;
    }
    for (int s = -m; s <= m - 1; ++s) {
        if (c[s + m] != ct[s + 1 + m]) {
            rep.verdict = Verdict::fail;
            rep.witness = "c_" + std::to_string(s) + " != c~_" + std::to_string(s + 1);
            return rep;
        }
    }
    return rep;
}

/// Randomized exactness property: the reconstruction reproduces every
/// polynomial of per-axis degree <= 2m exactly (in rational arithmetic) from
/// its window of cell averages.
inline ClaimReport verify_k_exactness(int m, int dim, int trials, unsigned seed) {
    ClaimReport rep{dim == 1 ? "k-exactness-1d" : "k-exactness-2d", m};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-9, 9);
    const int w = 2 * m + 1;
    auto avg_1d = [](const RationalPoly& p, int r) {
        return p.integral(Rational(r), Rational(r + 1));
    };
    for (int t = 0; t < trials; ++t) {
        if (dim == 1) {
            std::vector<Rational> c(w);
            for (auto& x : c) x = coef(rng);
            const RationalPoly p(c);
            std::vector<Rational> window(w);
            for (int r = -m; r <= m; ++r) window[r + m] = avg_1d(p, r);
            for (int num = 0; num <= 6; ++num) {
                const Rational xhat(num, 6);
                const auto wts = Stencil1D::get(m).value_weights(xhat);
                Rational v = 0;
                for (int s = 0; s < w; ++s) v += wts[s] * window[s];
                if (v != p(xhat)) {
                    rep.verdict = Verdict::fail;
                    rep.witness = "trial " + std::to_string(t) + " at xhat = " +
                                  oracle::to_string(xhat);
                    return rep;
                }
            }
        } else {
            RationalMatrix c(w, w);
            for (int p = 0; p < w; ++p)
                for (int q = 0; q < w; ++q) c(p, q) = coef(rng);
            RationalMatrix window(w, w);
            for (int r = -m; r <= m; ++r)
                for (int s = -m; s <= m; ++s) {
                    Rational sum = 0;
                    for (int p = 0; p < w; ++p) {
                        const RationalPoly xp = [&] {
                            std::vector<Rational> mono(p + 1);
                            mono[p] = 1;
                            return RationalPoly(mono);
                        }();
                        for (int q = 0; q < w; ++q) {
                            std::vector<Rational> monoq(q + 1);
                            monoq[q] = 1;
                            sum += c(p, q) * avg_1d(xp, r) * avg_1d(RationalPoly(monoq), s);
                        }
                    }
                    window(r + m, s + m) = sum;
                }
            if (!(reconstruct_2d_cell(m, window) == c)) {
                rep.verdict = Verdict::fail;
                rep.witness = "trial " + std::to_string(t) + ": coefficients differ";
                return rep;
            }
        }
    }
    rep.witness = std::to_string(trials) + " random polynomials reproduced exactly";
    return rep;
}

/// Cyclic Jacobi eigenvalues for a small symmetric matrix.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

struct MatrixMReport {
    RationalMatrix matrix;             // 8x8, exact
    bool symmetric = false;
    std::vector<double> eigenvalues;   // ascending
    double min_normalized = 0.0;       // smallest eigenvalue / largest
};

/// Re-derive the local 8x8 matrix of the 2D gradient energy on one cell.
/// The quadratic form int int (u_xhat^2 + u_yhat^2) over the reference cell
/// is assembled exactly in the 9 window averages of the m=1 tensor
/// reconstruction, then restricted to an 8-dimensional difference basis
/// (the six x-differences a1..a6 plus two y-differences linking the rows),
/// which spans the averages modulo constants.
inline MatrixMReport derive_matrix_m() {
    const int m = 1, w = 3;
    // Coefficient matrices of the reconstruction for each unit window average.
    std::vector<RationalMatrix> coeff(9);
    for (int k = 0; k < 9; ++k) {
        RationalMatrix window(w, w);
        window(k % 3, k / 3) = 1;  // (x-offset row, y-offset col)
        coeff[k] = reconstruct_2d_cell(m, window);
    }
    // Q(k,l) = int int (dx(k) dx(l) + dy(k) dy(l)) over [0,1]^2.
    RationalMatrix q(9, 9);
    auto gradient_energy = [&](const RationalMatrix& ck, const RationalMatrix& cl) {
        Rational sum = 0;
        for (int axis = 0; axis < 2; ++axis) {
            // derivative coefficient matrices along the axis
            RationalMatrix dk(w, w), dl(w, w);
            for (int p = 0; p < w; ++p)
                for (int qd = 0; qd < w; ++qd) {
                    if (axis == 0 && p + 1 < w) {
                        dk(p, qd) = ck(p + 1, qd) * (p + 1);
                        dl(p, qd) = cl(p + 1, qd) * (p + 1);
                    } else if (axis == 1 && qd + 1 < w) {
                        dk(p, qd) = ck(p, qd + 1) * (qd + 1);
                        dl(p, qd) = cl(p, qd + 1) * (qd + 1);
                    }
                }
            for (int p1 = 0; p1 < w; ++p1)
                for (int q1 = 0; q1 < w; ++q1)
                    for (int p2 = 0; p2 < w; ++p2)
                        for (int q2 = 0; q2 < w; ++q2)
                            sum += dk(p1, q1) * dl(p2, q2) /
                                   ((p1 + p2 + 1) * (q1 + q2 + 1));
        }
        return sum;
    };
    for (int k = 0; k < 9; ++k)
        for (int l = k; l < 9; ++l) {
            q(k, l) = gradient_energy(coeff[k], coeff[l]);
            q(l, k) = q(k, l);
        }

    // Difference basis: a1..a6 are the x-differences per window row (bottom,
    // middle, top); b1 links row -1 to row 0 in the left column, b4 links
    // row 0 to row 1. Map v -> window averages with the corner pinned to 0.
    RationalMatrix t(9, 8);
    auto set_avg = [&](int xoff, int yoff, std::initializer_list<std::pair<int, int>> terms) {
        const int k = (xoff + 1) + 3 * (yoff + 1);
        for (auto [var, sign] : terms) t(k, var) = sign;
    };
    // variables: 0..5 = a1..a6, 6 = b1, 7 = b4
    set_avg(-1, -1, {});
    set_avg(0, -1, {{0, 1}});
    set_avg(1, -1, {{0, 1}, {1, 1}});
    set_avg(-1, 0, {{6, 1}});
    set_avg(0, 0, {{6, 1}, {2, 1}});
    set_avg(1, 0, {{6, 1}, {2, 1}, {3, 1}});
    set_avg(-1, 1, {{6, 1}, {7, 1}});
    set_avg(0, 1, {{6, 1}, {7, 1}, {4, 1}});
    set_avg(1, 1, {{6, 1}, {7, 1}, {4, 1}, {5, 1}});

    MatrixMReport rep;
    rep.matrix = t.transpose() * q * t;
    rep.symmetric = (rep.matrix == rep.matrix.transpose());
    std::vector<std::vector<double>> md(8, std::vector<double>(8));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) md[i][j] = to_double(rep.matrix(i, j));
    rep.eigenvalues = jacobi_eigenvalues(md);
    rep.min_normalized = rep.eigenvalues.front() / rep.eigenvalues.back();
    return rep;
}

inline ClaimReport verify_matrix_M() {
    MatrixMReport mrep = derive_matrix_m();
    ClaimReport rep{"matrix-m", 1};
    std::ostringstream os;
    os << "eigenvalues:";
    for (double ev : mrep.eigenvalues) os << ' ' << ev;
    rep.witness = os.str();
    if (!mrep.symmetric || mrep.min_normalized <= 1e-10) rep.verdict = Verdict::fail;
    return rep;
}

}  // namespace rdgfv
