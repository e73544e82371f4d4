#pragma once

#include "rdgfv/assembly.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include <stdexcept>
#include <string>

namespace rdgfv {

struct SolveReport {
    Eigen::VectorXd solution;
    double residual = 0.0;  // ||Ax-b|| / max(||b||, 1)
    int iterations = 0;     // 0 for the direct path
    std::string method;
};

inline double residual(const SparseSystem& system, const Eigen::VectorXd& x) {
    const double num = (system.matrix * x - system.rhs).norm();
    return num / std::max(system.rhs.norm(), 1.0);
}

/// Direct sparse solve. The matrix is nonsymmetric in general (ghost
/// elimination and the bordered multiplier break symmetry), so LU it is.
inline SolveReport solve(const SparseSystem& system, double tol = 1e-12,
                         bool iterative = false) {
    SolveReport report;
    if (iterative) {
        Eigen::BiCGSTAB<Eigen::SparseMatrix<double, Eigen::RowMajor>> solver;
        solver.setTolerance(tol);
        solver.setMaxIterations(20000);
        solver.compute(system.matrix);
        report.solution = solver.solve(system.rhs);
        report.iterations = static_cast<int>(solver.iterations());
        report.method = "bicgstab";
    } else {
        Eigen::SparseMatrix<double> a = system.matrix;  // SparseLU wants column major
        Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
        solver.analyzePattern(a);
        solver.factorize(a);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("solve: LU factorization failed");
        report.solution = solver.solve(system.rhs);
        report.method = "sparselu";
    }
    report.residual = residual(system, report.solution);
    if (!(report.residual <= tol))
        throw std::runtime_error("solve: residual " + std::to_string(report.residual) +
                                 " exceeds tolerance");
    return report;
}

/// Strip the multiplier entry (if any) and return the averages as a field.
inline AvgField<double> to_field(const SchemeConfig& config, const Eigen::VectorXd& x) {
    const CartesianMesh mesh = config.mesh();
    AvgField<double> field(mesh);
    const std::int64_t cells = mesh.cell_count();
    for (std::int64_t lin = 0; lin < cells; ++lin)
        field(mesh.delinearize(lin)) = x[lin];
    return field;
}

}  // namespace rdgfv
