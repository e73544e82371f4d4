#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rdgfv {

/// Quadrature rule on the unit interval [0,1]. Weights sum to 1; a q-point
/// rule is exact for polynomials up to degree 2q-1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// q-point Gauss-Legendre rule mapped from [-1,1] to [0,1]. Nodes are found
/// by Newton iteration on the Legendre recurrence with the Chebyshev-like
/// initial guess; converges in a handful of steps for q <= 16.
inline QuadratureRule gauss_rule(int q) {
    if (q < 1 || q > 16) throw std::invalid_argument("gauss_rule: q must be in [1,16]");
    QuadratureRule rule;
    rule.nodes.resize(q);
    rule.weights.resize(q);
    for (int i = 0; i < q; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre P_q(x) and derivative via the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int n = 2; n <= q; ++n) {
                double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            dp = q * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Map to [0,1]; reverse so nodes come out ascending.
        rule.nodes[q - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[q - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    if (q == 1) {
        rule.nodes[0] = 0.5;
        rule.weights[0] = 1.0;
    }
    return rule;
}

/// Integrate f over [a,b] with the given unit-interval rule.
template <typename F>
double integrate(const QuadratureRule& rule, double a, double b, F&& f) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
        sum += rule.weights[i] * f(a + (b - a) * rule.nodes[i]);
    return (b - a) * sum;
}

}  // namespace rdgfv
