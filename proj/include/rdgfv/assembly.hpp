#pragma once

#include "rdgfv/mesh.hpp"
#include "rdgfv/quadrature.hpp"
#include "rdgfv/reconstruction.hpp"

#include <Eigen/Sparse>

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace rdgfv {

using SourceFunction = std::function<double(std::array<double, 2>)>;

struct SchemeConfig {
    int dim = 1;
    BoundaryCondition bc = BoundaryCondition::dirichlet;
    int order = 2;  // reconstruction degree k = 2m
    double eta = 0.0;
    int n = 8;

    int m() const { return order / 2; }

    /// The stability analysis covers eta in (-3/2, 5); values outside are
    /// accepted but flagged.
    bool eta_in_analyzed_range() const { return eta > -1.5 && eta < 5.0; }

    void validate() const {
        if (dim != 1 && dim != 2) throw std::invalid_argument("config: dim must be 1 or 2");
        if (order < 2 || order % 2 != 0) throw std::invalid_argument("config: order must be even");
        if (bc == BoundaryCondition::dirichlet && order != 2)
            throw std::invalid_argument("config: dirichlet supports order 2 only");
        if (bc == BoundaryCondition::periodic && order != 2 && order != 4)
            throw std::invalid_argument("config: periodic supports order 2 or 4");
        if (n < 2 * m() + 1) throw std::invalid_argument("config: n too small for the stencil");
    }

    CartesianMesh mesh() const { return build_mesh(dim, n, m()); }

    int quad_points() const { return order + 3; }
};

/// Assembled linear system: CSR matrix over the interior cell averages, plus
/// one bordered row/column for the periodic zero-mean multiplier.
struct SparseSystem {
    Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
    Eigen::VectorXd rhs;
    bool has_multiplier = false;
};

namespace detail {

/// Express an extended (possibly ghost) cell average as a linear combination
/// of interior averages under the boundary condition. Dirichlet folds the
/// ghost rule per out-of-range axis; periodic wraps.
inline void interior_closure(const CartesianMesh& mesh, BoundaryCondition bc, MultiIndex mi,
                             double coeff,
                             std::map<std::int64_t, double>& out) {
    const int n = mesh.n();
    if (bc == BoundaryCondition::periodic) {
        for (int a = 0; a < mesh.dim(); ++a) mi[a] = ((mi[a] % n) + n) % n;
        out[mesh.linearize(mi)] += coeff;
        return;
    }
    for (int a = 0; a < mesh.dim(); ++a) {
        if (mi[a] >= 0 && mi[a] < n) continue;
        const GhostRule rule = dirichlet_ghost_rule(mesh.ghost_width());
        MultiIndex first = mi, second = mi;
        if (mi[a] == -1) {
            first[a] = 0;
            second[a] = 1;
        } else if (mi[a] == n) {
            first[a] = n - 1;
            second[a] = n - 2;
        } else {
            throw std::invalid_argument("interior_closure: ghost depth > 1 under dirichlet");
        }
        interior_closure(mesh, bc, first, coeff * rule.coefficients_f[0], out);
        interior_closure(mesh, bc, second, coeff * rule.coefficients_f[1], out);
        return;
    }
    out[mesh.linearize(mi)] += coeff;
}

struct RowAccumulator {
    const CartesianMesh& mesh;
    BoundaryCondition bc;
    std::vector<std::map<std::int64_t, double>>& rows;

    void add(std::int64_t row, MultiIndex col, double coeff) {
        detail::interior_closure(mesh, bc, col, coeff, rows[row]);
    }
};

}  // namespace detail

/// Right-hand side vector of per-cell source integrals; the periodic system
/// appends a zero entry for the multiplier row.
inline Eigen::VectorXd rhs_only(const SchemeConfig& config, const SourceFunction& f) {
    config.validate();
    const CartesianMesh mesh = config.mesh();
    const std::int64_t cells = mesh.cell_count();
    const bool bordered = config.bc == BoundaryCondition::periodic;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(cells + (bordered ? 1 : 0));
    const QuadratureRule rule = gauss_rule(config.quad_points());
    const double h = mesh.h();
    for (std::int64_t lin = 0; lin < cells; ++lin) {
        const MultiIndex mi = mesh.delinearize(lin);
        double sum = 0.0;
        if (config.dim == 1) {
            for (std::size_t a = 0; a < rule.size(); ++a)
                sum += rule.weights[a] * f({(mi[0] + rule.nodes[a]) * h, 0.0});
            sum *= h;
        } else {
            for (std::size_t a = 0; a < rule.size(); ++a)
                for (std::size_t b = 0; b < rule.size(); ++b)
                    sum += rule.weights[a] * rule.weights[b] *
                           f({(mi[0] + rule.nodes[a]) * h, (mi[1] + rule.nodes[b]) * h});
            sum *= h * h;
        }
        rhs[lin] = sum;
    }
    return rhs;
}

/// Assemble the Petrov-Galerkin finite volume system. Each cell equation is
/// the outward sum of gamma-weighted difference fluxes over its faces plus
/// the jump penalty; ghost averages are eliminated into interior columns.
inline SparseSystem assemble(const SchemeConfig& config, const SourceFunction& f) {
    config.validate();
    const CartesianMesh mesh = config.mesh();
    const int n = config.n;
    const int m = config.m();
    const int dim = config.dim;
    const double h = mesh.h();
    const std::int64_t cells = mesh.cell_count();
    const bool bordered = config.bc == BoundaryCondition::periodic;
    const std::int64_t size = cells + (bordered ? 1 : 0);

    const FluxCoefficients fc = derivative_flux_coeffs(m);
    const std::vector<double> gamma = fc.gamma_f();
    const Stencil1D& st = Stencil1D::get(m);
    const std::vector<double> trace_left = st.value_weights_f(1.0);   // from the lower cell
    const std::vector<double> trace_right = st.value_weights_f(0.0);  // from the upper cell

    std::vector<std::map<std::int64_t, double>> rows(size);
    detail::RowAccumulator acc{mesh, config.bc, rows};

    const int tan_count = (dim == 1) ? 1 : n;
    const bool periodic = config.bc == BoundaryCondition::periodic;
    for (int axis = 0; axis < dim; ++axis) {
        const int node_end = periodic ? n - 1 : n;  // node n duplicates node 0 when wrapped
        for (int t = 0; t < tan_count; ++t) {
            for (int p = 0; p <= node_end; ++p) {
                auto cell_at = [&](int q) {
                    MultiIndex mi;
                    mi.dim = dim;
                    mi[axis] = q;
                    if (dim == 2) mi[1 - axis] = t;
                    return mi;
                };
                // Face flux: (1/h^{...}) sum_k gamma_k D_{p+k}. In 1D the flux
                // enters the cell equation as a point value scaled by 1/h; in
                // 2D the face-integrated normal derivative carries no h.
                const double flux_scale = (dim == 1) ? 1.0 / h : 1.0;
                auto add_flux = [&](std::int64_t row, double sign) {
                    for (int k = -m + 1; k <= m - 1; ++k) {
                        const double g = sign * flux_scale * gamma[k + m - 1];
                        acc.add(row, cell_at(p + k), g);
                        acc.add(row, cell_at(p + k - 1), -g);
                    }
                };
                const bool has_left = periodic || p > 0;
                const bool has_right = periodic || p < n;
                // Row of the cell left of the node sees the flux as outward
                // (-), the right cell as inward (+): row_i gets
                // flux(node_i) - flux(node_{i+1}).
                if (has_left) {
                    MultiIndex left = cell_at(p - 1);
                    if (periodic) left[axis] = (p - 1 + n) % n;
                    add_flux(mesh.linearize(left), -1.0);
                }
                if (has_right && p < n) add_flux(mesh.linearize(cell_at(p)), +1.0);

                // Jump penalty. Dirichlet boundary faces contribute exactly
                // zero (the enforced trace vanishes) and are skipped.
                if (config.eta != 0.0 && (periodic || (p > 0 && p < n))) {
                    const double factor = (dim == 1) ? config.eta / h : config.eta;
                    auto add_jump = [&](std::int64_t row, double sign) {
                        for (int s = -m; s <= m; ++s) {
                            acc.add(row, cell_at(p - 1 + s), sign * factor * trace_left[s + m]);
                            acc.add(row, cell_at(p + s), -sign * factor * trace_right[s + m]);
                        }
                    };
                    MultiIndex left = cell_at(p - 1);
                    if (periodic) left[axis] = (p - 1 + n) % n;
                    add_jump(mesh.linearize(left), +1.0);
                    if (p < n) add_jump(mesh.linearize(cell_at(p)), -1.0);
                }
            }
        }
    }

    SparseSystem system;
    system.has_multiplier = bordered;
    system.rhs = rhs_only(config, f);
    if (bordered) {
        const double cell_volume = std::pow(h, dim);
        for (std::int64_t i = 0; i < cells; ++i) {
            rows[i][cells] += cell_volume;      // b(lambda, v)
            rows[cells][i] += cell_volume;      // b(u, mu)
        }
    }

    std::vector<Eigen::Triplet<double>> triplets;
    for (std::int64_t i = 0; i < size; ++i)
        for (const auto& [j, v] : rows[i]) triplets.emplace_back(int(i), int(j), v);
    system.matrix.resize(int(size), int(size));
    system.matrix.setFromTriplets(triplets.begin(), triplets.end());
    return system;
}

/// Matrix-free action of the first N^d rows on a ghost-filled average field
/// (multiplier taken as zero). Cross-checks the assembled matrix.
inline std::vector<double> apply_operator(const SchemeConfig& config,
                                          const AvgField<double>& averages) {
    config.validate();
    const CartesianMesh mesh = averages.mesh();
    AvgField<double> field = averages;
    fill_ghosts(field, config.bc);

    const int n = config.n;
    const int m = config.m();
    const int dim = config.dim;
    const double h = mesh.h();
    const FluxCoefficients fcoef = derivative_flux_coeffs(m);
    const std::vector<double> gamma = fcoef.gamma_f();
    const Stencil1D& st = Stencil1D::get(m);
    const std::vector<double> trace_left = st.value_weights_f(1.0);
    const std::vector<double> trace_right = st.value_weights_f(0.0);
    const bool periodic = config.bc == BoundaryCondition::periodic;

    auto at = [&](int axis, int q, int t) {
        // wrap rather than rely on ghosts: the jump stencil at the wrap face
        // reaches one cell past the ghost layer
        if (periodic) q = ((q % n) + n) % n;
        MultiIndex mi;
        mi.dim = dim;
        mi[axis] = q;
        if (dim == 2) mi[1 - axis] = t;
        return field(mi);
    };
    auto flux = [&](int axis, int p, int t) {
        double sum = 0.0;
        for (int k = -m + 1; k <= m - 1; ++k)
            sum += gamma[k + m - 1] * (at(axis, p + k, t) - at(axis, p + k - 1, t));
        return (dim == 1) ? sum / h : sum;
    };
    auto jump = [&](int axis, int p, int t) {
        double left = 0.0, right = 0.0;
        for (int s = -m; s <= m; ++s) {
            left += trace_left[s + m] * at(axis, p - 1 + s, t);
            right += trace_right[s + m] * at(axis, p + s, t);
        }
        return left - right;
    };

    std::vector<double> out(static_cast<std::size_t>(mesh.cell_count()), 0.0);
    const int tan_count = (dim == 1) ? 1 : n;
    for (int axis = 0; axis < dim; ++axis)
        for (int t = 0; t < tan_count; ++t)
            for (int c = 0; c < n; ++c) {
                MultiIndex mi;
                mi.dim = dim;
                mi[axis] = c;
                if (dim == 2) mi[1 - axis] = t;
                double v = flux(axis, c, t) - flux(axis, c + 1, t);
                if (config.eta != 0.0) {
                    const double factor = (dim == 1) ? config.eta / h : config.eta;
                    // face at node c: this cell is the upper side (jump sign -)
                    if (periodic || c > 0) v -= factor * jump(axis, c, t);
                    // face at node c+1: this cell is the lower side (+)
                    if (periodic || c + 1 < n) v += factor * jump(axis, c + 1, t);
                }
                out[mesh.linearize(mi)] += v;
            }
    return out;
}

}  // namespace rdgfv
