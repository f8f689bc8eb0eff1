#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "vem3/core.hpp"

namespace vem3 {

enum class SolverMethod { Auto, Direct, CG };
enum class Preconditioner { Jacobi, None };

struct SolverConfig {
    SolverMethod method = SolverMethod::Auto;
    /// Auto picks the direct solver below this many unknowns.
    long size_threshold = 2000;
    double tolerance = 1e-10;
    /// 0 selects 10 sqrt(N) + 100.
    long max_iterations = 0;
    Preconditioner preconditioner = Preconditioner::Jacobi;

    void validate() const
    {
        if (size_threshold <= 0) throw ConfigError("solver: size threshold must be positive");
        if (!(tolerance > 0.0 && tolerance < 1.0)) throw ConfigError("solver: tolerance must lie in (0,1)");
        if (max_iterations < 0) throw ConfigError("solver: max iterations must be non-negative");
    }
};

inline SolverMethod parse_solver_method(std::string_view s)
{
    if (s == "auto") return SolverMethod::Auto;
    if (s == "direct") return SolverMethod::Direct;
    if (s == "cg") return SolverMethod::CG;
    throw ConfigError("unknown solver '" + std::string(s) + "' (expected auto, direct or cg)");
}

inline Preconditioner parse_preconditioner(std::string_view s)
{
    if (s == "jacobi") return Preconditioner::Jacobi;
    if (s == "none") return Preconditioner::None;
    throw ConfigError("unknown preconditioner '" + std::string(s) + "' (expected jacobi or none)");
}

struct SolveResult {
    Eigen::VectorXd x;
    SolverMethod method = SolverMethod::Direct;
    long iterations = 0;
    /// ||b - A x|| / ||b||, or ||b - A x|| when b = 0.
    double residual = 0.0;
};

inline double relative_residual(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& b)
{
    const double r = (b - A * x).norm();
    const double nb = b.norm();
    return nb > 0.0 ? r / nb : r;
}

/// Sparse LDL^T with AMD ordering.
inline SolveResult solve_direct(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b)
{
    SolveResult res;
    res.method = SolverMethod::Direct;
    if (A.rows() == 0) {
        res.x.resize(0);
        return res;
    }
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() != Eigen::Success) throw SolverError("direct solver: factorization failed");
    if (!(ldlt.vectorD().minCoeff() > 0.0)) throw SolverError("direct solver: matrix is not positive definite");
    res.x = ldlt.solve(b);
    if (ldlt.info() != Eigen::Success) throw SolverError("direct solver: back-substitution failed");
    res.residual = relative_residual(A, res.x, b);
    return res;
}

/// Preconditioned conjugate gradients from a zero initial guess.
inline SolveResult solve_cg(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b, const SolverConfig& cfg)
{
    const Eigen::Index n = A.rows();
    SolveResult res;
    res.method = SolverMethod::CG;
    res.x = Eigen::VectorXd::Zero(n);
    const double nb = b.norm();
    if (n == 0 || nb == 0.0) return res;

    const long max_it = cfg.max_iterations > 0 ? cfg.max_iterations : long(10.0 * std::sqrt(double(n)) + 100.0);
    Eigen::VectorXd inv_diag = Eigen::VectorXd::Ones(n);
    if (cfg.preconditioner == Preconditioner::Jacobi) {
        const Eigen::VectorXd d = A.diagonal();
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!(d(i) > 0.0)) throw SolverError("cg: non-positive diagonal entry, matrix is not SPD");
            inv_diag(i) = 1.0 / d(i);
        }
    }

    Eigen::VectorXd r = b;
    Eigen::VectorXd z = inv_diag.cwiseProduct(r);
    Eigen::VectorXd p = z;
    Eigen::VectorXd Ap(n);
    double rz = r.dot(z);
    const double target = cfg.tolerance * nb;
    long it = 0;
    while (it < max_it) {
        Ap.noalias() = A * p;
        const double pAp = p.dot(Ap);
        if (!(pAp > 0.0)) throw SolverError("cg: breakdown (matrix is not positive definite)");
        const double alpha = rz / pAp;
        res.x += alpha * p;
        r -= alpha * Ap;
        ++it;
        if (r.norm() <= target) {
            // The recursive residual drifts; confirm with the true one.
            r = b - A * res.x;
            if (r.norm() <= target) break;
        }
        z = inv_diag.cwiseProduct(r);
        const double rz_new = r.dot(z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    res.iterations = it;
    res.residual = relative_residual(A, res.x, b);
    if (!(res.residual <= cfg.tolerance))
        throw SolverError("cg: no convergence after " + std::to_string(it) + " iterations (relative residual " +
                          std::to_string(res.residual) + ")");
    return res;
}

inline SolveResult solve(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b, const SolverConfig& cfg = {})
{
    cfg.validate();
    SolverMethod m = cfg.method;
    if (m == SolverMethod::Auto) m = A.rows() < cfg.size_threshold ? SolverMethod::Direct : SolverMethod::CG;
    return m == SolverMethod::Direct ? solve_direct(A, b) : solve_cg(A, b, cfg);
}

inline const char* to_string(SolverMethod m)
{
    switch (m) {
    case SolverMethod::Auto: return "auto";
    case SolverMethod::Direct: return "direct";
    case SolverMethod::CG: return "cg";
    }
    return "?";
}

} // namespace vem3
