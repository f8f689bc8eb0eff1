#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vem3/core.hpp"
#include "vem3/element_assembly.hpp"
#include "vem3/geometry.hpp"
#include "vem3/mesh.hpp"
#include "vem3/quadrature.hpp"

namespace vem3 {

/// Integrals of the projected error use degree 4.
inline constexpr int error_quadrature_degree = 4;

namespace detail {

inline Eigen::VectorXd restrict_to(const Eigen::VectorXd& u, const std::vector<VertexId>& dofs)
{
    Eigen::VectorXd out(Eigen::Index(dofs.size()));
    for (std::size_t i = 0; i < dofs.size(); ++i) out(Eigen::Index(i)) = u(Eigen::Index(dofs[i]));
    return out;
}

} // namespace detail

/// sqrt( sum_K || u - Pi_1 u_h ||_{0,K}^2 ).
inline double l2_error(const PolyhedralMesh& mesh, const Eigen::VectorXd& uh, std::span<const Matrix4X> Ph,
                       std::span<const std::vector<VertexId>> elem2dof,
                       const std::function<double(const Point&)>& exact)
{
    double sum = 0.0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const ElementMonomials m = element_monomials(element_geometry(mesh, e));
        const Eigen::Vector4d c = Ph[e] * detail::restrict_to(uh, elem2dof[e]);
        sum += integral_polyhedron(
            [&](const Point& x) {
                const double d = exact(x) - m(x).dot(c);
                return d * d;
            },
            error_quadrature_degree, mesh.nodes, mesh.elements[e]);
    }
    return std::sqrt(sum);
}

/// sqrt( sum_K | u - Pi_1 u_h |_{1,K}^2 ).
inline double h1_error(const PolyhedralMesh& mesh, const Eigen::VectorXd& uh, std::span<const Matrix4X> Ph,
                       std::span<const std::vector<VertexId>> elem2dof,
                       const std::function<Point(const Point&)>& exact_gradient)
{
    double sum = 0.0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const ElementMonomials m = element_monomials(element_geometry(mesh, e));
        const Eigen::Vector4d c = Ph[e] * detail::restrict_to(uh, elem2dof[e]);
        const Point grad_h = m.gradients().transpose() * c;
        sum += integral_polyhedron([&](const Point& x) { return (exact_gradient(x) - grad_h).squaredNorm(); },
                                   error_quadrature_degree, mesh.nodes, mesh.elements[e]);
    }
    return std::sqrt(sum);
}

/// Least-squares slope of log(err) against log(h).
inline double fit_rate(std::span<const double> h, std::span<const double> err)
{
    const std::size_t n = h.size();
    if (n < 2 || err.size() != n) return std::nan("");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(h[i]);
        my += std::log(err[i]);
    }
    mx /= double(n);
    my /= double(n);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(h[i]) - mx;
        sxy += dx * (std::log(err[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

struct ConvergenceLevel {
    long ndof = 0;
    double h = 0.0;
    double err_l2 = 0.0;
    double err_h1 = 0.0;
};

struct ConvergenceRecord {
    std::vector<ConvergenceLevel> levels;
    double rate_l2 = std::nan("");
    double rate_h1 = std::nan("");
};

inline void fit_rates(ConvergenceRecord& rec)
{
    std::vector<double> h, l2, h1;
    for (const auto& lv : rec.levels) {
        h.push_back(lv.h);
        l2.push_back(lv.err_l2);
        h1.push_back(lv.err_h1);
    }
    rec.rate_l2 = fit_rate(h, l2);
    rec.rate_h1 = fit_rate(h, h1);
}

} // namespace vem3
