#pragma once

#include "rdgfv/assembly.hpp"
#include "rdgfv/norms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdgfv {

/// Manufactured problem: exact solution, source f = -laplacian(u), gradient.
struct ProblemSpec {
    std::string name;
    int dim = 1;
    BoundaryCondition bc = BoundaryCondition::dirichlet;
    ScalarField u;
    SourceFunction f;
    VectorField grad;
};

namespace detail {

/// Registered problems must satisfy their boundary condition exactly;
/// checked by sampling so a bad registration fails fast.
inline void check_bc(const ProblemSpec& p) {
    const double tol = 1e-14;
    const std::vector<double> samples = {0.0, 0.125, 0.3, 0.5, 0.77, 1.0};
    auto expect = [&](bool ok, const char* what) {
        if (!ok) throw std::logic_error("problem " + p.name + ": " + what);
    };
    for (double t : samples) {
        if (p.bc == BoundaryCondition::dirichlet) {
            expect(std::abs(p.u({0.0, t})) < tol && std::abs(p.u({1.0, t})) < tol,
                   "nonzero trace on x boundary");
            if (p.dim == 2)
                expect(std::abs(p.u({t, 0.0})) < tol && std::abs(p.u({t, 1.0})) < tol,
                       "nonzero trace on y boundary");
        } else {
            expect(std::abs(p.u({0.0, t}) - p.u({1.0, t})) < tol, "not periodic in x");
            if (p.dim == 2)
                expect(std::abs(p.u({t, 0.0}) - p.u({t, 1.0})) < tol, "not periodic in y");
        }
    }
}

}  // namespace detail

inline const std::vector<ProblemSpec>& problem_registry() {
    using std::numbers::pi;
    static const std::vector<ProblemSpec> registry = [] {
        std::vector<ProblemSpec> list;

        // u = x sin(pi x), homogeneous Dirichlet on [0,1]
        auto g = [](double x) { return x * std::sin(pi * x); };
        auto dg = [](double x) { return std::sin(pi * x) + pi * x * std::cos(pi * x); };
        auto ddg = [](double x) {
            return 2.0 * pi * std::cos(pi * x) - pi * pi * x * std::sin(pi * x);
        };
        list.push_back({"xsinpix", 1, BoundaryCondition::dirichlet,
                        [=](std::array<double, 2> p) { return g(p[0]); },
                        [=](std::array<double, 2> p) { return -ddg(p[0]); },
                        [=](std::array<double, 2> p) {
                            return std::array<double, 2>{dg(p[0]), 0.0};
                        }});

        // u = x sin(pi x) * y sin(pi y)
        list.push_back({"xsinpixy", 2, BoundaryCondition::dirichlet,
                        [=](std::array<double, 2> p) { return g(p[0]) * g(p[1]); },
                        [=](std::array<double, 2> p) {
                            return -(ddg(p[0]) * g(p[1]) + g(p[0]) * ddg(p[1]));
                        },
                        [=](std::array<double, 2> p) {
                            return std::array<double, 2>{dg(p[0]) * g(p[1]),
                                                         g(p[0]) * dg(p[1])};
                        }});

        // u = sin(2 pi x), periodic, zero mean
        list.push_back({"sin2pix", 1, BoundaryCondition::periodic,
                        [](std::array<double, 2> p) { return std::sin(2 * pi * p[0]); },
                        [](std::array<double, 2> p) {
                            return 4 * pi * pi * std::sin(2 * pi * p[0]);
                        },
                        [](std::array<double, 2> p) {
                            return std::array<double, 2>{2 * pi * std::cos(2 * pi * p[0]), 0.0};
                        }});

        // u = sin(2 pi x) sin(4 pi y), periodic, zero mean
        list.push_back({"sin2pixsin4piy", 2, BoundaryCondition::periodic,
                        [](std::array<double, 2> p) {
                            return std::sin(2 * pi * p[0]) * std::sin(4 * pi * p[1]);
                        },
                        [](std::array<double, 2> p) {
                            return 20 * pi * pi * std::sin(2 * pi * p[0]) *
                                   std::sin(4 * pi * p[1]);
                        },
                        [](std::array<double, 2> p) {
                            return std::array<double, 2>{
                                2 * pi * std::cos(2 * pi * p[0]) * std::sin(4 * pi * p[1]),
                                4 * pi * std::sin(2 * pi * p[0]) * std::cos(4 * pi * p[1])};
                        }});

        for (const auto& p : list) detail::check_bc(p);
        return list;
    }();
    return registry;
}

inline const ProblemSpec& get_problem(const std::string& name, int dim, BoundaryCondition bc) {
    for (const auto& p : problem_registry())
        if (p.name == name) {
            if (p.dim != dim) throw std::invalid_argument("problem " + name + ": wrong --dim");
            if (p.bc != bc) throw std::invalid_argument("problem " + name + ": wrong --bc");
            return p;
        }
    throw std::invalid_argument("unknown problem: " + name);
}

/// Exact cell averages of a problem's solution, for k-exactness style tests
/// and initial diagnostics.
inline AvgField<double> exact_averages(const SchemeConfig& config, const ScalarField& u) {
    const CartesianMesh mesh = config.mesh();
    AvgField<double> field(mesh);
    const QuadratureRule rule = gauss_rule(config.quad_points());
    const double h = mesh.h();
    field.for_interior([&](const MultiIndex& mi) {
        double sum = 0.0;
        if (config.dim == 1) {
            for (std::size_t a = 0; a < rule.size(); ++a)
                sum += rule.weights[a] * u({(mi[0] + rule.nodes[a]) * h, 0.0});
        } else {
            for (std::size_t a = 0; a < rule.size(); ++a)
                for (std::size_t b = 0; b < rule.size(); ++b)
                    sum += rule.weights[a] * rule.weights[b] *
                           u({(mi[0] + rule.nodes[a]) * h, (mi[1] + rule.nodes[b]) * h});
        }
        field(mi) = sum;
    });
    return field;
}

}  // namespace rdgfv
