#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "vem3/core.hpp"
#include "vem3/face_projection.hpp"
#include "vem3/geometry.hpp"
#include "vem3/mesh.hpp"
#include "vem3/pde.hpp"
#include "vem3/quadrature.hpp"

namespace vem3 {

using Matrix4X = Eigen::Matrix<double, 4, Eigen::Dynamic>;
using MatrixX4 = Eigen::Matrix<double, Eigen::Dynamic, 4>;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// Scaled monomials (1, (x-x_K)/h_K, (y-y_K)/h_K, (z-z_K)/h_K) of an element.
struct ElementMonomials {
    Point center;
    double h = 1.0;

    [[nodiscard]] Eigen::Vector4d operator()(const Point& p) const
    {
        const Point d = (p - center) / h;
        return {1.0, d.x(), d.y(), d.z()};
    }

    /// Row a holds grad m_a (constant).
    [[nodiscard]] Eigen::Matrix<double, 4, 3> gradients() const
    {
        Eigen::Matrix<double, 4, 3> g = Eigen::Matrix<double, 4, 3>::Zero();
        g(1, 0) = g(2, 1) = g(3, 2) = 1.0 / h;
        return g;
    }
};

inline ElementMonomials element_monomials(const ElementGeometry& geom)
{
    return {geom.centroid, geom.diameter};
}

struct ElementMatrices {
    std::vector<VertexId> dofs; ///< sorted unique vertices; local DOF i <-> dofs[i]
    ElementGeometry geometry;
    MatrixX4 D;
    Matrix4X B;
    Matrix4X Bs;
    Eigen::Matrix4d G;
    Eigen::Matrix4d Gs;
    Matrix4X Pis;
    Eigen::MatrixXd Pi;
    Eigen::MatrixXd AK;
    Eigen::VectorXd fK;

    [[nodiscard]] Eigen::Index size() const { return Eigen::Index(dofs.size()); }
};

/// D, B, Bs, G, Gs, Pis and Pi of element `e`.
inline ElementMatrices element_projection(const PolyhedralMesh& mesh, const MeshTopology& topo,
                                          const std::vector<FaceProjection>& face_table, std::size_t e)
{
    const Element& elem = mesh.elements.at(e);
    ElementMatrices em;
    em.geometry = element_geometry(mesh, e);
    em.dofs = element_vertices(elem);
    const Eigen::Index n = em.size();
    const ElementMonomials m = element_monomials(em.geometry);
    const auto local = [&](VertexId v) {
        return Eigen::Index(std::lower_bound(em.dofs.begin(), em.dofs.end(), v) - em.dofs.begin());
    };

    em.D.resize(n, 4);
    for (Eigen::Index i = 0; i < n; ++i) em.D.row(i) = m(mesh.nodes[em.dofs[std::size_t(i)]]).transpose();

    // B = sum_f (grad m . n_f) (int_f Pi_f phi^T); the face integral vanishes
    // for vertices off the face.
    const Eigen::Matrix<double, 4, 3> gradm = m.gradients();
    em.B = Matrix4X::Zero(4, n);
    for (std::size_t s = 0; s < elem.size(); ++s) {
        const Face& face = elem[s];
        const auto P = gather(mesh.nodes, face);
        const Point nf = face_normal(P);
        const FaceProjection& fp = face_table.at(topo.elem2face[e][s]);
        const Eigen::RowVectorXd int_face = fp.area * fp.columns_for(face).row(0);
        const Eigen::Vector4d gn = gradm * nf;
        for (std::size_t j = 0; j < face.size(); ++j) em.B.col(local(face[j])) += gn * int_face(Eigen::Index(j));
    }
    em.Bs = em.B;
    em.Bs.row(0).setConstant(1.0 / double(n));
    em.G = em.B * em.D;
    em.Gs = em.Bs * em.D;

    Eigen::PartialPivLU<Eigen::Matrix4d> lu(em.Gs);
    if (!(std::abs(lu.determinant()) > 1e-14))
        throw GeometryError("element " + std::to_string(e) + ": singular projection system");
    em.Pis = lu.solve(em.Bs);
    em.Pi = em.D * em.Pis;
    return em;
}

/// Consistency part plus h_K-scaled vertex-value stabilisation of the
/// non-polynomial remainder.
inline Eigen::MatrixXd local_stiffness(const ElementMatrices& em, double hK)
{
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(em.size(), em.size());
    const Eigen::MatrixXd R = I - em.Pi;
    Eigen::MatrixXd AK = em.Pis.transpose() * em.G * em.Pis + hK * R.transpose() * R;
    return 0.5 * (AK + AK.transpose());
}

enum class RhsScheme { OnePoint, Quad3 };

inline RhsScheme parse_rhs_scheme(std::string_view s)
{
    if (s == "onepoint") return RhsScheme::OnePoint;
    if (s == "quad3") return RhsScheme::Quad3;
    throw ConfigError("unknown rhs scheme '" + std::string(s) + "' (expected onepoint or quad3)");
}

/// Pis^T * (int_K r m dx).
inline Eigen::VectorXd local_load(const PolyhedralMesh& mesh, std::size_t e, const ElementMatrices& em,
                                  const PdeData& pde, RhsScheme scheme)
{
    Eigen::Vector4d moments;
    if (scheme == RhsScheme::OnePoint) {
        moments << em.geometry.volume * pde.load(em.geometry.centroid), 0.0, 0.0, 0.0;
    } else {
        const ElementMonomials m = element_monomials(em.geometry);
        moments = integral_polyhedron(
            [&](const Point& x) -> Eigen::Vector4d { return pde.load(x) * m(x); }, 3, mesh.nodes,
            mesh.elements[e]);
    }
    return em.Pis.transpose() * moments;
}

/// Global stiffness matrix and load, plus what error evaluation needs.
struct LinearSystem {
    SparseMatrix matrix;
    Eigen::VectorXd rhs;
    std::vector<Triplet> triplets;        ///< element-ordered, before duplicate summation
    std::vector<Matrix4X> projections;    ///< Pis per element
    std::vector<std::vector<VertexId>> elem2dof;
    std::vector<ElementGeometry> geometry;

    [[nodiscard]] Eigen::Index size() const { return rhs.size(); }
};

inline LinearSystem assemble(const PolyhedralMesh& mesh, const MeshTopology& topo,
                             const std::vector<FaceProjection>& face_table, const PdeData& pde,
                             RhsScheme scheme = RhsScheme::Quad3)
{
    const auto N = Eigen::Index(mesh.num_nodes());
    LinearSystem sys;
    sys.rhs = Eigen::VectorXd::Zero(N);
    sys.projections.reserve(mesh.num_elements());
    sys.elem2dof.reserve(mesh.num_elements());
    sys.geometry.reserve(mesh.num_elements());

    std::size_t nnz = 0;
    for (const Element& elem : mesh.elements) {
        const std::size_t k = element_vertices(elem).size();
        nnz += k * k;
    }
    sys.triplets.reserve(nnz);

    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        ElementMatrices em = element_projection(mesh, topo, face_table, e);
        em.AK = local_stiffness(em, em.geometry.diameter);
        em.fK = local_load(mesh, e, em, pde, scheme);
        const Eigen::Index n = em.size();
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                sys.triplets.emplace_back(int(em.dofs[std::size_t(i)]), int(em.dofs[std::size_t(j)]), em.AK(i, j));
        for (Eigen::Index i = 0; i < n; ++i) sys.rhs(Eigen::Index(em.dofs[std::size_t(i)])) += em.fK(i);
        sys.projections.push_back(std::move(em.Pis));
        sys.elem2dof.push_back(std::move(em.dofs));
        sys.geometry.push_back(em.geometry);
    }
    sys.matrix.resize(N, N);
    sys.matrix.setFromTriplets(sys.triplets.begin(), sys.triplets.end());
    return sys;
}

} // namespace vem3
