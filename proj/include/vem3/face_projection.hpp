#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vem3/core.hpp"
#include "vem3/local_frame.hpp"
#include "vem3/mesh.hpp"

namespace vem3 {

using Matrix3X = Eigen::Matrix<double, 3, Eigen::Dynamic>;
using MatrixX3 = Eigen::Matrix<double, Eigen::Dynamic, 3>;

/// All intermediate matrices of the linear elliptic projection on one face,
/// columns in the face's own vertex order.
struct FaceProjectionMatrices {
    PolygonChart chart;
    MatrixX3 D;              ///< D(i,a) = m_a(vertex i)
    Matrix3X B;              ///< (grad m_a, grad phi_i)_f
    Matrix3X Bs;             ///< B with the first row replaced by the vertex average
    Eigen::Matrix3d G;       ///< B * D
    Eigen::Matrix3d Gs;      ///< Bs * D
    Matrix3X pifs;           ///< monomial coefficients of the projected basis
};

/// Face monomials (1, (s - s_f)/h_f, (t - t_f)/h_f) at a chart point.
inline Eigen::Vector3d face_monomials(const PolygonChart& pc, const Point2& st)
{
    return {1.0, (st.x() - pc.centroid.x()) / pc.diameter, (st.y() - pc.centroid.y()) / pc.diameter};
}

inline FaceProjectionMatrices face_projection_matrices(std::span<const Point> P)
{
    FaceProjectionMatrices fm;
    fm.chart = polygon_chart(P);
    const PolygonChart& pc = fm.chart;
    const Eigen::Index n = Eigen::Index(P.size());

    fm.D.resize(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) fm.D.row(i) = face_monomials(pc, pc.nodef[std::size_t(i)]).transpose();

    // grad phi_i integrates to half the sum of the scaled outward normals of
    // the two edges meeting at vertex i; the monomial gradients are constant.
    std::vector<Point2> edge_normal(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const Point2 d = pc.nodef[std::size_t((i + 1) % n)] - pc.nodef[std::size_t(i)];
        edge_normal[std::size_t(i)] = pc.orientation * Point2(d.y(), -d.x());
    }
    fm.B = Matrix3X::Zero(3, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Point2 w = 0.5 * (edge_normal[std::size_t((i + n - 1) % n)] + edge_normal[std::size_t(i)]);
        fm.B(1, i) = w.x() / pc.diameter;
        fm.B(2, i) = w.y() / pc.diameter;
    }
    fm.Bs = fm.B;
    fm.Bs.row(0).setConstant(1.0 / double(n));
    fm.G = fm.B * fm.D;
    fm.Gs = fm.Bs * fm.D;

    Eigen::PartialPivLU<Eigen::Matrix3d> lu(fm.Gs);
    if (!(std::abs(lu.determinant()) > 1e-14)) throw GeometryError("face projection: singular projection system");
    fm.pifs = lu.solve(fm.Bs);
    return fm;
}

/// Projection matrix of one face, columns in its own vertex order.
inline Matrix3X face_elliptic_projection(std::span<const Point> P)
{
    return face_projection_matrices(P).pifs;
}

/// Face projection stored with columns ordered by ascending global vertex id.
struct FaceProjection {
    Matrix3X pifs;
    Face sorted_vertices;
    double area = 0.0;
    PolygonChart chart;

    /// Columns rearranged to follow `order`, a permutation of the face's vertices.
    [[nodiscard]] Matrix3X columns_for(const Face& order) const
    {
        Matrix3X out(3, Eigen::Index(order.size()));
        for (std::size_t j = 0; j < order.size(); ++j) {
            const auto it = std::lower_bound(sorted_vertices.begin(), sorted_vertices.end(), order[j]);
            if (it == sorted_vertices.end() || *it != order[j])
                throw Error("face projection: vertex " + std::to_string(order[j]) + " does not belong to this face");
            out.col(Eigen::Index(j)) = pifs.col(it - sorted_vertices.begin());
        }
        return out;
    }
};

/// Sorts projection columns by ascending global vertex index.
inline FaceProjection make_face_projection(const Face& face, const Matrix3X& pifs, const PolygonChart& chart)
{
    std::vector<std::size_t> idx(face.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return face[a] < face[b]; });
    FaceProjection fp;
    fp.pifs.resize(3, Eigen::Index(face.size()));
    fp.sorted_vertices.resize(face.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
        fp.pifs.col(Eigen::Index(j)) = pifs.col(Eigen::Index(idx[j]));
        fp.sorted_vertices[j] = face[idx[j]];
    }
    fp.area = chart.area;
    fp.chart = chart;
    return fp;
}

struct DefaultFaceProjector {
    FaceProjectionMatrices operator()(std::span<const Point> P) const { return face_projection_matrices(P); }
};

/// One projection per unique face, indexed like topology.faces.
template <class Projector = DefaultFaceProjector>
std::vector<FaceProjection> build_face_projection_table(const PolyhedralMesh& mesh, const MeshTopology& topo,
                                                        Projector&& project = {})
{
    std::vector<FaceProjection> table;
    table.reserve(topo.num_faces());
    for (std::size_t f = 0; f < topo.num_faces(); ++f) {
        const Face& face = topo.faces[f];
        const auto P = gather(mesh.nodes, face);
        try {
            const FaceProjectionMatrices fm = project(std::span<const Point>(P));
            table.push_back(make_face_projection(face, fm.pifs, fm.chart));
        } catch (const GeometryError& ex) {
            throw GeometryError("face " + std::to_string(f) + ": " + ex.what());
        }
    }
    return table;
}

/// Integral of each projected basis function over the face, |f| times the
/// first row of the projection (sorted-column order).
inline Eigen::RowVectorXd face_integral_of_projection(const FaceProjection& fp)
{
    return fp.area * fp.pifs.row(0);
}

} // namespace vem3
