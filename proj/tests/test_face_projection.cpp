#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>

#include "vem3/face_projection.hpp"
#include "vem3/mesh.hpp"

using namespace vem3;

namespace {

std::vector<Point> regular_polygon(int n, double radius, const Point& c)
{
    std::vector<Point> P;
    for (int k = 0; k < n; ++k) {
        const double a = 2.0 * std::numbers::pi * k / n;
        P.push_back(c + radius * Point(std::cos(a), std::sin(a), 0.0));
    }
    return P;
}

std::vector<Point> test_faces_flat(std::mt19937& rng)
{
    std::normal_distribution<double> N;
    const Eigen::Matrix3d R = Eigen::Quaterniond(N(rng), N(rng), N(rng), N(rng)).normalized().toRotationMatrix();
    std::vector<Point> P = {{0, 0, 0}, {2, 0, 0}, {2.5, 1, 0}, {1, 2.2, 0}, {-0.4, 1, 0}};
    for (Point& p : P) p = R * p + Point(1, 2, 3);
    return P;
}

} // namespace

TEST(FaceProjection, ReproducesLinearsAndConsistency)
{
    std::mt19937 rng(1);
    std::vector<std::vector<Point>> faces = {regular_polygon(3, 1.0, Point::Zero()), regular_polygon(4, 0.1, Point(1, 1, 1)),
                                             regular_polygon(6, 3.0, Point(0, 0, -2))};
    for (int k = 0; k < 5; ++k) faces.push_back(test_faces_flat(rng));
    for (const auto& P : faces) {
        const FaceProjectionMatrices fm = face_projection_matrices(P);
        EXPECT_LT((fm.pifs * fm.D - Eigen::Matrix3d::Identity()).norm(), 1e-12);
        EXPECT_LT((fm.G - fm.B * fm.D).norm(), 1e-12 * std::max(1.0, fm.G.norm()));
        // Gradients of the vertex basis sum to zero, so the unmodified
        // gradient rows have zero row sums.
        EXPECT_LT(std::abs(fm.B.row(1).sum()), 1e-13);
        EXPECT_LT(std::abs(fm.B.row(2).sum()), 1e-13);
    }
}

TEST(FaceProjection, TriangleProjectionIsTheInverseOfD)
{
    const std::vector<Point> tri = {{0, 0, 0}, {1, 0, 0.5}, {0.2, 1, 0}};
    const FaceProjectionMatrices fm = face_projection_matrices(tri);
    ASSERT_EQ(fm.D.rows(), 3);
    const Eigen::Matrix3d Dinv = Eigen::Matrix3d(fm.D).inverse();
    EXPECT_LT((fm.pifs - Dinv).norm(), 1e-12);
}

TEST(FaceProjection, ConstantsMapToTheConstantMonomial)
{
    const auto hex = regular_polygon(6, 1.0, Point(0, 0, 4));
    const Matrix3X pifs = face_elliptic_projection(hex);
    const Eigen::Vector3d c = pifs * Eigen::VectorXd::Ones(6);
    EXPECT_LT((c - Eigen::Vector3d(1, 0, 0)).norm(), 1e-14);
}

TEST(FaceProjection, ColumnsAreSortedByGlobalVertexId)
{
    const Face face = {7, 2, 9, 4};
    const std::vector<Point> P = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    const FaceProjectionMatrices fm = face_projection_matrices(P);
    const FaceProjection fp = make_face_projection(face, fm.pifs, fm.chart);
    EXPECT_EQ(fp.sorted_vertices, (Face{2, 4, 7, 9}));
    // Sorted column j belongs to the vertex at position {1,3,0,2} of the loop.
    const int pos[] = {1, 3, 0, 2};
    for (int j = 0; j < 4; ++j) EXPECT_EQ(fp.pifs.col(j), fm.pifs.col(pos[j]));
    EXPECT_EQ(fp.columns_for(face), fm.pifs);
    const Face rotated = {9, 4, 7, 2};
    const Matrix3X got = fp.columns_for(rotated);
    for (int j = 0; j < 4; ++j) EXPECT_EQ(got.col(j), fm.pifs.col((j + 2) % 4));
    EXPECT_THROW(fp.columns_for(Face{1, 2, 4, 7}), Error);
}

TEST(FaceProjection, TableMatchesRecomputation)
{
    const PolyhedralMesh m = generate_tet_mesh(2);
    const MeshTopology t = build_topology(m);
    const auto table = build_face_projection_table(m, t);
    ASSERT_EQ(table.size(), t.num_faces());
    for (std::size_t f = 0; f < t.num_faces(); ++f) {
        const auto P = gather(m.nodes, t.faces[f]);
        const Matrix3X direct = face_elliptic_projection(P);
        EXPECT_LT((table[f].columns_for(t.faces[f]) - direct).norm(), 1e-14);
        EXPECT_TRUE(std::is_sorted(table[f].sorted_vertices.begin(), table[f].sorted_vertices.end()));
    }
}

TEST(FaceProjection, EachUniqueFaceIsProjectedOnce)
{
    const PolyhedralMesh m = generate_hex_mesh(3);
    const MeshTopology t = build_topology(m);
    std::size_t calls = 0;
    const auto counting = [&](std::span<const Point> P) {
        ++calls;
        return face_projection_matrices(P);
    };
    build_face_projection_table(m, t, counting);
    EXPECT_EQ(calls, t.num_faces());
    EXPECT_LT(calls, 6 * m.num_elements());
}

TEST(FaceProjection, FaceIntegralOfProjectedBasis)
{
    const Face face = {0, 1, 2, 3};
    const std::vector<Point> square = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    const FaceProjectionMatrices fm = face_projection_matrices(square);
    const Eigen::RowVectorXd w = face_integral_of_projection(make_face_projection(face, fm.pifs, fm.chart));
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(w(i), 0.25, 1e-15);

    std::mt19937 rng(9);
    const auto P = test_faces_flat(rng);
    const Face ids = {10, 11, 12, 13, 14};
    const FaceProjectionMatrices ref = face_projection_matrices(P);
    const Eigen::RowVectorXd w0 = face_integral_of_projection(make_face_projection(ids, ref.pifs, ref.chart));
    EXPECT_NEAR(w0.sum(), ref.chart.area, 1e-13);
    for (std::size_t r = 1; r < P.size(); ++r) {
        std::vector<Point> Q;
        Face rid;
        for (std::size_t i = 0; i < P.size(); ++i) {
            Q.push_back(P[(i + r) % P.size()]);
            rid.push_back(ids[(i + r) % ids.size()]);
        }
        const FaceProjectionMatrices fr = face_projection_matrices(Q);
        const Eigen::RowVectorXd wr = face_integral_of_projection(make_face_projection(rid, fr.pifs, fr.chart));
        EXPECT_LT((wr - w0).cwiseAbs().maxCoeff(), 1e-12);
    }
}
