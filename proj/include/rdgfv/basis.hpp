#pragma once

#include "rdgfv/quadrature.hpp"
#include "rdgfv/rational.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace rdgfv {

/// Polynomial with exact rational coefficients in the monomial basis,
/// ascending degree. The reference coordinate convention is the one used by
/// the stencil machinery: stencil cells are the unit intervals [r, r+1],
/// r = -m..m, and the owner cell is [0,1].
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static RationalPoly constant(Rational c) { return RationalPoly({std::move(c)}); }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    Rational operator()(const Rational& x) const {
        Rational v = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
        return v;
    }

    RationalPoly derivative() const {
        if (coeffs_.size() <= 1) return RationalPoly{};
        std::vector<Rational> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * int(i);
        return RationalPoly(std::move(d));
    }

    /// Exact integral over [a,b].
    Rational integral(const Rational& a, const Rational& b) const {
        auto anti = [&](const Rational& x) -> Rational {
            Rational v = 0;
            for (std::size_t i = coeffs_.size(); i-- > 0;) v = v * x + coeffs_[i] / int(i + 1);
            return v * x;
        };
        return anti(b) - anti(a);
    }

    RationalPoly operator+(const RationalPoly& other) const {
        std::vector<Rational> c(std::max(coeffs_.size(), other.coeffs_.size()));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) c[i] += other.coeffs_[i];
        return RationalPoly(std::move(c));
    }

    RationalPoly operator-(const RationalPoly& other) const {
        std::vector<Rational> c(std::max(coeffs_.size(), other.coeffs_.size()));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) c[i] -= other.coeffs_[i];
        return RationalPoly(std::move(c));
    }

    RationalPoly operator*(const RationalPoly& other) const {
        if (is_zero() || other.is_zero()) return RationalPoly{};
        std::vector<Rational> c(coeffs_.size() + other.coeffs_.size() - 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
                c[i + j] += coeffs_[i] * other.coeffs_[j];
        return RationalPoly(std::move(c));
    }

    RationalPoly operator*(const Rational& s) const {
        std::vector<Rational> c = coeffs_;
        for (auto& x : c) x *= s;
        return RationalPoly(std::move(c));
    }

    bool operator==(const RationalPoly& other) const { return coeffs_ == other.coeffs_; }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

/// Lagrange basis polynomial L_k over the integer nodes {-m, ..., m+1},
/// degree 2m+1, satisfying L_k(r) = delta_{k,r}.
inline RationalPoly lagrange_basis(int m, int k) {
    if (m < 1) throw std::invalid_argument("lagrange_basis: m must be >= 1");
    if (k < -m || k > m + 1) throw std::invalid_argument("lagrange_basis: node out of range");
    RationalPoly p = RationalPoly::constant(1);
    Rational denom = 1;
    for (int r = -m; r <= m + 1; ++r) {
        if (r == k) continue;
        p = p * RationalPoly({Rational(-r), Rational(1)});
        denom *= (k - r);
    }
    return p * (Rational(1) / denom);
}

/// Legendre polynomial P_n on [-1,1], double precision.
inline double legendre_value(int n, double x) {
    if (n == 0) return 1.0;
    double p0 = 1.0, p1 = x;
    for (int i = 2; i <= n; ++i) {
        double p2 = ((2 * i - 1) * x * p1 - (i - 1) * p0) / i;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// Legendre moment I_K^alpha f = ((2*alpha+1)/h) * int_K L_K^alpha f dx on the
/// 1D cell [a,b]. Alpha = 0 is the plain cell average.
template <typename F>
double legendre_moment(F&& f, double a, double b, int alpha, int qpoints = 10) {
    const double h = b - a;
    const double xc = 0.5 * (a + b);
    const QuadratureRule rule = gauss_rule(qpoints);
    double integral = rdgfv::integrate(rule, a, b, [&](double x) {
        return legendre_value(alpha, 2.0 * (x - xc) / h) * f(x);
    });
    return (2.0 * alpha + 1.0) / h * integral;
}

/// Tensor-product Legendre moment on the 2D cell [ax,bx] x [ay,by].
template <typename F>
double legendre_moment_2d(F&& f, std::array<double, 2> lo, std::array<double, 2> hi,
                          std::array<int, 2> alpha, int qpoints = 10) {
    const double hx = hi[0] - lo[0], hy = hi[1] - lo[1];
    const double xc = 0.5 * (lo[0] + hi[0]), yc = 0.5 * (lo[1] + hi[1]);
    const QuadratureRule rule = gauss_rule(qpoints);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
        for (std::size_t j = 0; j < rule.size(); ++j) {
            const double x = lo[0] + hx * rule.nodes[i];
            const double y = lo[1] + hy * rule.nodes[j];
            sum += rule.weights[i] * rule.weights[j] *
                   legendre_value(alpha[0], 2.0 * (x - xc) / hx) *
                   legendre_value(alpha[1], 2.0 * (y - yc) / hy) * f(x, y);
        }
    return (2.0 * alpha[0] + 1.0) * (2.0 * alpha[1] + 1.0) * sum;
}

}  // namespace rdgfv
