#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "vem3/core.hpp"
#include "vem3/element_assembly.hpp"
#include "vem3/face_projection.hpp"
#include "vem3/mesh.hpp"
#include "vem3/pde.hpp"
#include "vem3/quadrature.hpp"

namespace vem3 {

/// Neumann face load Pifs^T * int_f g_N m_f, in face vertex order.
inline Eigen::VectorXd neumann_face_load(const FaceProjection& fp, const Face& face, const std::vector<Point>& nodes,
                                         const PdeData& pde)
{
    const Matrix3X pifs = fp.columns_for(face);
    const auto P = gather(nodes, face);
    const PolygonChart pc = polygon_chart(P);
    const Point nf = pc.normal();
    const Eigen::Vector3d Ff = integral_polygon(
        [&](const Point2& st) -> Eigen::Vector3d {
            const double gN = pde.gradient(pc.coord(st)).dot(nf);
            return gN * face_monomials(pc, st);
        },
        3, pc.nodef);
    return pifs.transpose() * Ff;
}

/// Adds the Neumann face loads to the global right-hand side.
inline void apply_neumann(LinearSystem& sys, const PolyhedralMesh& mesh, const BoundaryStruct& bd,
                          const std::vector<FaceProjection>& face_table, const PdeData& pde)
{
    for (std::size_t s = 0; s < bd.neumann_faces.size(); ++s) {
        const std::size_t id = bd.neumann_face_ids[s];
        if (id >= face_table.size())
            throw Error("apply_neumann: no face projection for boundary face " + std::to_string(id));
        const Face& face = bd.neumann_faces[s];
        const Eigen::VectorXd Ff = neumann_face_load(face_table[id], face, mesh.nodes, pde);
        for (std::size_t i = 0; i < face.size(); ++i) sys.rhs(Eigen::Index(face[i])) += Ff(Eigen::Index(i));
    }
}

/// Free-DOF block after lifting the Dirichlet values out of the system.
struct ReducedSystem {
    SparseMatrix matrix;
    Eigen::VectorXd rhs;
    /// Full-length vector: g_D on Dirichlet nodes, zero elsewhere until expanded.
    Eigen::VectorXd lifted;
    std::vector<Eigen::Index> free_dofs;
    std::vector<bool> is_dirichlet;

    /// Writes the free-DOF values into the lifted template.
    [[nodiscard]] Eigen::VectorXd expand(const Eigen::VectorXd& free_values) const
    {
        Eigen::VectorXd u = lifted;
        for (std::size_t k = 0; k < free_dofs.size(); ++k) u(free_dofs[k]) = free_values(Eigen::Index(k));
        return u;
    }
};

inline ReducedSystem apply_dirichlet(const LinearSystem& sys, const PolyhedralMesh& mesh, const BoundaryStruct& bd,
                                     const PdeData& pde)
{
    if (bd.dirichlet_nodes.empty())
        throw SolverError("no Dirichlet boundary nodes: the pure Neumann problem is singular and not supported");
    const Eigen::Index N = sys.size();
    ReducedSystem red;
    red.is_dirichlet.assign(std::size_t(N), false);
    red.lifted = Eigen::VectorXd::Zero(N);
    for (VertexId v : bd.dirichlet_nodes) {
        red.is_dirichlet[v] = true;
        red.lifted(Eigen::Index(v)) = pde.dirichlet(mesh.nodes[v]);
    }
    const Eigen::VectorXd rhs = sys.rhs - sys.matrix * red.lifted;

    std::vector<Eigen::Index> position(std::size_t(N), -1);
    for (Eigen::Index i = 0; i < N; ++i)
        if (!red.is_dirichlet[std::size_t(i)]) {
            position[std::size_t(i)] = Eigen::Index(red.free_dofs.size());
            red.free_dofs.push_back(i);
        }
    const auto nf = Eigen::Index(red.free_dofs.size());
    red.rhs.resize(nf);
    for (Eigen::Index k = 0; k < nf; ++k) red.rhs(k) = rhs(red.free_dofs[std::size_t(k)]);

    std::vector<Triplet> trip;
    trip.reserve(std::size_t(sys.matrix.nonZeros()));
    for (int col = 0; col < sys.matrix.outerSize(); ++col) {
        const Eigen::Index pc = position[std::size_t(col)];
        if (pc < 0) continue;
        for (SparseMatrix::InnerIterator it(sys.matrix, col); it; ++it) {
            const Eigen::Index pr = position[std::size_t(it.row())];
            if (pr >= 0) trip.emplace_back(int(pr), int(pc), it.value());
        }
    }
    red.matrix.resize(nf, nf);
    red.matrix.setFromTriplets(trip.begin(), trip.end());
    return red;
}

} // namespace vem3
