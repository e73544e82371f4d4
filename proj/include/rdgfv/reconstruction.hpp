#pragma once

#include "rdgfv/basis.hpp"
#include "rdgfv/mesh.hpp"
#include "rdgfv/rational.hpp"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rdgfv {

enum class BoundaryCondition { dirichlet, periodic };

enum class StencilKind { point_value, derivative };

/// 1D moment-matching machinery for the centered stencil of half-width m.
/// A degree-2m polynomial on the reference line (stencil cells are the unit
/// intervals [r, r+1], r = -m..m; owner cell [0,1]) is determined by matching
/// the 2m+1 cell averages. The moment matrix is inverted exactly; a singular
/// matrix would contradict the uniqueness assumption and is a hard error.
class Stencil1D {
public:
    explicit Stencil1D(int m) : m_(m) {
        if (m < 1) throw std::invalid_argument("Stencil1D: m must be >= 1");
        const int n = 2 * m + 1;
        RationalMatrix moment(n, n);  // row r+m, col p: integral of x^p over [r,r+1]
        for (int r = -m; r <= m; ++r)
            for (int p = 0; p < n; ++p) {
                // int_r^{r+1} x^p dx = ((r+1)^{p+1} - r^{p+1}) / (p+1)
                BigInt hi = 1, lo = 1;
                for (int e = 0; e <= p; ++e) {
                    hi *= (r + 1);
                    lo *= r;
                }
                moment(r + m, p) = Rational(hi - lo, p + 1);
            }
        inv_t_ = moment.inverse().transpose();
    }

    int m() const { return m_; }
    int width() const { return 2 * m_ + 1; }

    /// Weights over the (2m+1)-average window for the reconstruction value at
    /// reference coordinate xhat. Index 0 of the result is the leftmost cell
    /// of the stencil (offset -m).
    std::vector<Rational> value_weights(const Rational& xhat) const {
        return inv_t_ * monomials(xhat, 0);
    }

    /// Weights for the reconstruction derivative (w.r.t. the reference
    /// coordinate) at xhat. Physical derivative weights carry an extra 1/h.
    std::vector<Rational> derivative_weights(const Rational& xhat) const {
        return inv_t_ * monomials(xhat, 1);
    }

    std::vector<Rational> weights(StencilKind kind, const Rational& xhat) const {
        return kind == StencilKind::point_value ? value_weights(xhat) : derivative_weights(xhat);
    }

    /// Double-precision weights at an arbitrary reference coordinate, using
    /// the exactly inverted moment matrix.
    std::vector<double> value_weights_f(double xhat) const { return apply_f(xhat, 0); }
    std::vector<double> derivative_weights_f(double xhat) const { return apply_f(xhat, 1); }

    /// Shared per-m instance.
    static const Stencil1D& get(int m) {
        static std::map<int, Stencil1D> cache;
        auto it = cache.find(m);
        if (it == cache.end()) it = cache.emplace(m, Stencil1D(m)).first;
        return it->second;
    }

private:
    std::vector<double> apply_f(double xhat, int deriv) const {
        const int n = width();
        if (inv_t_f_.empty()) {
            inv_t_f_.resize(static_cast<std::size_t>(n) * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    inv_t_f_[static_cast<std::size_t>(i) * n + j] = to_double(inv_t_(i, j));
        }
        std::vector<double> phi(n);
        for (int p = 0; p < n; ++p) {
            if (deriv == 0)
                phi[p] = std::pow(xhat, p);
            else
                phi[p] = p == 0 ? 0.0 : p * std::pow(xhat, p - 1);
        }
        std::vector<double> w(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w[i] += inv_t_f_[static_cast<std::size_t>(i) * n + j] * phi[j];
        return w;
    }

    std::vector<Rational> monomials(const Rational& xhat, int deriv) const {
        const int n = width();
        std::vector<Rational> phi(n);
        for (int p = 0; p < n; ++p) {
            if (deriv == 0) {
                Rational v = 1;
                for (int e = 0; e < p; ++e) v *= xhat;
                phi[p] = v;
            } else {
                if (p == 0) {
                    phi[p] = 0;
                } else {
                    Rational v = p;
                    for (int e = 0; e < p - 1; ++e) v *= xhat;
                    phi[p] = v;
                }
            }
        }
        return phi;
    }

    int m_;
    RationalMatrix inv_t_;
    mutable std::vector<double> inv_t_f_;
};

/// Precomputed weights mapping a window of cell averages to a sample of the
/// reconstruction (value or reference-coordinate derivative).
struct StencilOperator {
    int m = 1;
    StencilKind kind = StencilKind::point_value;
    Rational sample_location;
    std::vector<Rational> weights;
    std::vector<double> weights_f;

    template <typename T>
    T apply(const std::vector<T>& window) const;
};

template <>
inline Rational StencilOperator::apply(const std::vector<Rational>& window) const {
    Rational v = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) v += weights[i] * window[i];
    return v;
}

template <>
inline double StencilOperator::apply(const std::vector<double>& window) const {
    double v = 0.0;
    for (std::size_t i = 0; i < weights_f.size(); ++i) v += weights_f[i] * window[i];
    return v;
}

inline StencilOperator build_interior_stencil(int m, StencilKind kind, const Rational& xhat) {
    if (xhat < 0 || xhat > 1)
        throw std::invalid_argument("build_interior_stencil: sample must lie in the owner cell");
    StencilOperator op;
    op.m = m;
    op.kind = kind;
    op.sample_location = xhat;
    op.weights = Stencil1D::get(m).weights(kind, xhat);
    op.weights_f.reserve(op.weights.size());
    for (const auto& w : op.weights) op.weights_f.push_back(to_double(w));
    return op;
}

/// Coefficients of the reconstructed derivative flux at a node. c_minus are
/// the derivative weights seen from the cell right of the node (sample at
/// xhat=0), c_plus from the cell left of it (xhat=1); both are indexed by the
/// stencil offset s = -m..m of the owning cell. gamma expresses the same
/// derivative in first differences D across nodes, gamma[k+m-1] <-> offset k.
struct FluxCoefficients {
    int m = 1;
    std::vector<Rational> gamma;    // k = -m+1 .. m-1
    std::vector<Rational> c_minus;  // s = -m .. m
    std::vector<Rational> c_plus;   // s = -m .. m

    const Rational& gamma_at(int k) const { return gamma[k + m - 1]; }
    std::vector<double> gamma_f() const {
        std::vector<double> g;
        g.reserve(gamma.size());
        for (const auto& x : gamma) g.push_back(to_double(x));
        return g;
    }
};

inline FluxCoefficients derivative_flux_coeffs(int m) {
    const Stencil1D& st = Stencil1D::get(m);
    FluxCoefficients fc;
    fc.m = m;
    fc.c_minus = st.derivative_weights(0);
    fc.c_plus = st.derivative_weights(1);

    // Both one-sided constructions must express the same node derivative:
    // c_minus[s] = c_plus[s+1] after the one-cell shift, with the extreme
    // entries vanishing. This is the derivative-jump continuity statement.
    const int w = 2 * m + 1;
    if (fc.c_minus[w - 1] != 0 || fc.c_plus[0] != 0)
        throw std::runtime_error("derivative_flux_coeffs: extreme weight not zero");
    for (int i = 0; i + 1 < w; ++i)
        if (fc.c_minus[i] != fc.c_plus[i + 1])
            throw std::runtime_error("derivative_flux_coeffs: one-sided constructions disagree");

    // gamma_k = sum_{s>=k} c_s, valid because the weights sum to zero.
    Rational total = 0;
    for (const auto& c : fc.c_minus) total += c;
    if (total != 0) throw std::runtime_error("derivative_flux_coeffs: weights do not sum to zero");
    fc.gamma.resize(2 * m - 1);
    for (int k = -m + 1; k <= m - 1; ++k) {
        Rational g = 0;
        for (int s = k; s <= m; ++s) g += fc.c_minus[s + m];
        fc.gamma[k + m - 1] = g;
    }
    return fc;
}

/// Linear rule filling one ghost average from the first interior averages of
/// a boundary-normal line, chosen so the boundary-cell reconstruction trace
/// vanishes at the boundary point. Specified for m = 1 only.
struct GhostRule {
    int depth = 1;
    std::vector<Rational> coefficients;  // applied to the first 2m interior averages
    std::vector<double> coefficients_f;
};

inline GhostRule dirichlet_ghost_rule(int m) {
    if (m != 1) throw std::invalid_argument("dirichlet_ghost_rule: only m = 1 is supported");
    // Trace of the boundary cell at the boundary (xhat = 0 with window
    // (ghost, u0, u1)) must vanish: w[-1]*g + w[0]*u0 + w[1]*u1 = 0.
    const std::vector<Rational> w = Stencil1D::get(m).value_weights(0);
    GhostRule rule;
    rule.depth = 1;
    rule.coefficients = {-w[1] / w[0], -w[2] / w[0]};
    for (const auto& c : rule.coefficients) rule.coefficients_f.push_back(to_double(c));
    return rule;
}

namespace detail {
template <typename T>
T ghost_coeff(const GhostRule& rule, int i);
template <>
inline Rational ghost_coeff<Rational>(const GhostRule& rule, int i) {
    return rule.coefficients[i];
}
template <>
inline double ghost_coeff<double>(const GhostRule& rule, int i) {
    return rule.coefficients_f[i];
}
}  // namespace detail

/// Populate Dirichlet ghosts: per boundary-normal line, ghost = rule applied
/// to the two adjacent interior averages; 2D corner diagonal ghosts are then
/// filled by applying the x-rule along the already-filled ghost rows.
template <typename T>
void fill_ghosts_dirichlet(AvgField<T>& field) {
    const CartesianMesh& mesh = field.mesh();
    const int m = mesh.ghost_width();
    if (m != 1) throw std::invalid_argument("fill_ghosts_dirichlet: only m = 1 is supported");
    const GhostRule rule = dirichlet_ghost_rule(m);
    const T c0 = detail::ghost_coeff<T>(rule, 0);
    const T c1 = detail::ghost_coeff<T>(rule, 1);
    const int n = mesh.n();
    if (mesh.dim() == 1) {
        field.at1(-1) = c0 * field.at1(0) + c1 * field.at1(1);
        field.at1(n) = c0 * field.at1(n - 1) + c1 * field.at1(n - 2);
    } else {
        for (int j = 0; j < n; ++j) {
            field.at2(-1, j) = c0 * field.at2(0, j) + c1 * field.at2(1, j);
            field.at2(n, j) = c0 * field.at2(n - 1, j) + c1 * field.at2(n - 2, j);
        }
        for (int i = 0; i < n; ++i) {
            field.at2(i, -1) = c0 * field.at2(i, 0) + c1 * field.at2(i, 1);
            field.at2(i, n) = c0 * field.at2(i, n - 1) + c1 * field.at2(i, n - 2);
        }
        for (int j : {-1, n}) {
            field.at2(-1, j) = c0 * field.at2(0, j) + c1 * field.at2(1, j);
            field.at2(n, j) = c0 * field.at2(n - 1, j) + c1 * field.at2(n - 2, j);
        }
    }
}

/// Populate periodic ghosts: index g maps to g mod N per direction.
template <typename T>
void fill_ghosts_periodic(AvgField<T>& field) {
    const CartesianMesh& mesh = field.mesh();
    const int n = mesh.n();
    const int m = mesh.ghost_width();
    auto wrap = [n](int i) { return ((i % n) + n) % n; };
    if (mesh.dim() == 1) {
        for (int i = -m; i < n + m; ++i) {
            if (i >= 0 && i < n) continue;
            field.at1(i) = field.at1(wrap(i));
        }
    } else {
        for (int j = -m; j < n + m; ++j)
            for (int i = -m; i < n + m; ++i) {
                if (i >= 0 && i < n && j >= 0 && j < n) continue;
                field.at2(i, j) = field.at2(wrap(i), wrap(j));
            }
    }
}

template <typename T>
void fill_ghosts(AvgField<T>& field, BoundaryCondition bc) {
    if (bc == BoundaryCondition::dirichlet)
        fill_ghosts_dirichlet(field);
    else
        fill_ghosts_periodic(field);
}

/// Tensor-product coefficient matrix of the 2D reconstruction from a fully
/// populated (2m+1)x(2m+1) window of averages: C(p,q) multiplies x^p y^q,
/// C = (A^T)^{-1} U A^{-1} with a_{p,k} = int_k^{k+1} x^p. The window is
/// indexed window(r+m, s+m) for offsets (r,s).
inline RationalMatrix reconstruct_2d_cell(int m, const RationalMatrix& window) {
    const int w = 2 * m + 1;
    if (window.rows() != static_cast<std::size_t>(w) ||
        window.cols() != static_cast<std::size_t>(w))
        throw std::invalid_argument("reconstruct_2d_cell: window size mismatch");
    RationalMatrix a(w, w);  // a(p, k+m)
    for (int p = 0; p < w; ++p)
        for (int k = -m; k <= m; ++k) {
            BigInt hi = 1, lo = 1;
            for (int e = 0; e <= p; ++e) {
                hi *= (k + 1);
                lo *= k;
            }
            a(p, k + m) = Rational(hi - lo, p + 1);
        }
    const RationalMatrix ainv = a.inverse();
    return ainv.transpose() * window * ainv;
}

/// Evaluator for the reconstructed piecewise polynomial on a ghost-filled
/// average field. Weight vectors are rebuilt per reference coordinate; call
/// sites that sample many points at the same reference location (quadrature
/// loops) should cache the weights themselves via Stencil1D.
class Reconstructor {
public:
    Reconstructor(const CartesianMesh& mesh) : mesh_(&mesh), m_(mesh.ghost_width()) {}

    /// Owner cell of a physical coordinate, clamped so x = 1 belongs to the
    /// last cell. Also returns the reference coordinate within the owner.
    std::pair<int, double> locate(double x) const {
        if (x < 0.0 || x > 1.0) throw std::invalid_argument("evaluate: point outside [0,1]^d");
        int i = static_cast<int>(x * mesh_->n());
        if (i >= mesh_->n()) i = mesh_->n() - 1;
        return {i, x * mesh_->n() - i};
    }

    double value(const AvgField<double>& field, std::array<double, 2> point) const {
        return sample(field, point, -1);
    }

    /// Physical partial derivative along `axis`.
    double gradient(const AvgField<double>& field, std::array<double, 2> point, int axis) const {
        return sample(field, point, axis) * mesh_->n();
    }

    /// Value/derivative sample with per-axis windows; deriv_axis = -1 for a
    /// plain value, otherwise reference-coordinate derivative along that axis.
    double sample(const AvgField<double>& field, std::array<double, 2> point,
                  int deriv_axis) const {
        const Stencil1D& st = Stencil1D::get(m_);
        if (mesh_->dim() == 1) {
            auto [i, xhat] = locate(point[0]);
            const auto wx =
                deriv_axis == 0 ? st.derivative_weights_f(xhat) : st.value_weights_f(xhat);
            double v = 0.0;
            for (int r = -m_; r <= m_; ++r) v += wx[r + m_] * field.at1(i + r);
            return v;
        }
        auto [i, xhat] = locate(point[0]);
        auto [j, yhat] = locate(point[1]);
        const auto wx = deriv_axis == 0 ? st.derivative_weights_f(xhat) : st.value_weights_f(xhat);
        const auto wy = deriv_axis == 1 ? st.derivative_weights_f(yhat) : st.value_weights_f(yhat);
        double v = 0.0;
        for (int s = -m_; s <= m_; ++s) {
            double row = 0.0;
            for (int r = -m_; r <= m_; ++r) row += wx[r + m_] * field.at2(i + r, j + s);
            v += wy[s + m_] * row;
        }
        return v;
    }

private:
    const CartesianMesh* mesh_;
    int m_;
};

/// Reconstruction value at a point of a ghost-filled field.
inline double evaluate_solution(const AvgField<double>& field, std::array<double, 2> point) {
    return Reconstructor(field.mesh()).value(field, point);
}

}  // namespace rdgfv
