#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <string>

#include "oracles.hpp"
#include "vem3/geometry.hpp"
#include "vem3/mesh.hpp"

using namespace vem3;

namespace {

std::string tmp_path(const std::string& name)
{
    return std::string(VEM3_TEST_TMPDIR) + "/" + name;
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream(path) << text;
}

/// Two unit cubes side by side along x, sharing the x=1 face.
PolyhedralMesh two_cubes()
{
    PolyhedralMesh m;
    for (int k = 0; k <= 1; ++k)
        for (int j = 0; j <= 1; ++j)
            for (int i = 0; i <= 2; ++i) m.nodes.emplace_back(i, j, k);
    const auto id = [](int i, int j, int k) -> VertexId { return VertexId(i + 3 * (j + 2 * k)); };
    for (int c = 0; c < 2; ++c) {
        const PolyhedralMesh unit = generate_hex_mesh(1);
        Element elem;
        for (const Face& f : unit.elements[0]) {
            Face g;
            for (VertexId v : f) {
                const Point& p = unit.nodes[v];
                g.push_back(id(int(p.x()) + c, int(p.y()), int(p.z())));
            }
            elem.push_back(g);
        }
        m.elements.push_back(elem);
    }
    return m;
}

} // namespace

TEST(Mesh, LoadSingleCube)
{
    const std::string path = tmp_path("cube.json");
    save_mesh(generate_hex_mesh(1), path);
    const PolyhedralMesh m = load_mesh(path);
    EXPECT_EQ(m.num_nodes(), 8u);
    EXPECT_EQ(m.num_elements(), 1u);
    EXPECT_NO_THROW(validate(m));
}

TEST(Mesh, HandWrittenCubeIsAccepted)
{
    const nlohmann::json j = nlohmann::json::parse(R"({
        "nodes": [[0,0,0], [1,0,0], [1,1,0], [0,1,0], [0,0,1], [1,0,1], [1,1,1], [0,1,1]],
        "elements": [[[0,1,2,3], [4,7,6,5], [0,4,5,1], [1,5,6,2], [2,6,7,3], [3,7,4,0]]]})");
    const PolyhedralMesh m = mesh_from_json(j);
    EXPECT_NEAR(element_geometry(m, 0).volume, 1.0, 1e-15);

    nlohmann::json flipped = j;
    for (auto& f : flipped["elements"][0]) std::reverse(f.begin(), f.end());
    EXPECT_THROW(element_geometry(mesh_from_json(flipped), 0), GeometryError);
}

TEST(Mesh, LoadRejectsOutOfRangeIndex)
{
    const std::string path = tmp_path("bad_index.json");
    write_file(path, R"({"nodes": [[0,0,0],[1,0,0],[1,1,0],[0,1,0],[0,0,1],[1,0,1],[1,1,1],[0,1,1]],
        "elements": [[[0,3,2,1],[4,5,6,8],[0,1,5,4],[1,2,6,5],[2,3,7,6],[3,0,4,7]]]})");
    try {
        load_mesh(path);
        FAIL() << "expected MeshError";
    } catch (const MeshError& e) {
        EXPECT_NE(std::string(e.what()).find("element 0"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("out of range"), std::string::npos) << e.what();
    }
}

TEST(Mesh, LoadRejectsMalformedInput)
{
    const std::string garbage = tmp_path("garbage.json");
    write_file(garbage, "{ not json");
    EXPECT_THROW(load_mesh(garbage), MeshError);
    EXPECT_THROW(load_mesh(tmp_path("missing.json")), MeshError);

    nlohmann::json j = mesh_to_json(generate_hex_mesh(1));
    j["elements"][0][1] = {4, 5};
    EXPECT_THROW(mesh_from_json(j), MeshError);
}

TEST(Mesh, LoadRejectsOpenSurface)
{
    nlohmann::json j = mesh_to_json(generate_hex_mesh(1));
    j["elements"][0].erase(5);
    j["elements"][0].push_back(j["elements"][0][0]); // duplicate a face instead of closing
    EXPECT_THROW(mesh_from_json(j), MeshError);
}

TEST(Mesh, LoadTwoByTwoByTwo)
{
    const std::string path = tmp_path("hex2.json");
    save_mesh(generate_hex_mesh(2), path);
    const PolyhedralMesh m = load_mesh(path);
    EXPECT_EQ(m.num_nodes(), 27u);
    EXPECT_EQ(m.num_elements(), 8u);
}

TEST(Mesh, JsonRoundTripIsExact)
{
    for (int n : {1, 3}) {
        const PolyhedralMesh hex = generate_hex_mesh(n);
        const PolyhedralMesh tet = generate_tet_mesh(n);
        save_mesh(hex, tmp_path("rt_hex.json"));
        save_mesh(tet, tmp_path("rt_tet.json"));
        EXPECT_EQ(load_mesh(tmp_path("rt_hex.json")), hex);
        EXPECT_EQ(load_mesh(tmp_path("rt_tet.json")), tet);
    }
}

TEST(Mesh, HexGeneratorCounts)
{
    const auto m1 = generate_hex_mesh(1);
    EXPECT_EQ(m1.num_nodes(), 8u);
    EXPECT_EQ(m1.num_elements(), 1u);
    EXPECT_EQ(build_topology(m1).num_faces(), 6u);

    const auto m2 = generate_hex_mesh(2);
    EXPECT_EQ(m2.num_nodes(), 27u);
    EXPECT_EQ(m2.num_elements(), 8u);
    EXPECT_EQ(oracle::unique_face_count(m2), 36u);
    EXPECT_EQ(build_topology(m2).num_faces(), 36u);

    const auto m4 = generate_hex_mesh(4);
    EXPECT_EQ(m4.num_elements(), 64u);
    EXPECT_DOUBLE_EQ(m4.nodes[1].x() - m4.nodes[0].x(), 0.25);
    EXPECT_THROW(generate_hex_mesh(0), ConfigError);
}

TEST(Mesh, TetGeneratorCountsAndVolume)
{
    const auto t1 = generate_tet_mesh(1);
    EXPECT_EQ(t1.num_elements(), 6u);
    double vol = 0.0;
    for (const Element& e : t1.elements) {
        std::vector<VertexId> v = element_vertices(e);
        ASSERT_EQ(v.size(), 4u);
        vol += std::abs(signed_tet_volume(t1.nodes[v[0]], t1.nodes[v[1]], t1.nodes[v[2]], t1.nodes[v[3]]));
    }
    EXPECT_NEAR(vol, 1.0, 1e-15);
    EXPECT_EQ(generate_tet_mesh(2).num_elements(), 48u);
    for (int n : {1, 2, 3}) EXPECT_NO_THROW(validate(generate_tet_mesh(n)));
}

TEST(Topology, SingleCube)
{
    const MeshTopology t = build_topology(generate_hex_mesh(1));
    ASSERT_EQ(t.num_faces(), 6u);
    EXPECT_EQ(t.elem2face[0], (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
    for (std::size_t f = 0; f < 6; ++f) EXPECT_TRUE(t.is_boundary(f));
}

TEST(Topology, TwoCubesShareOneFace)
{
    const PolyhedralMesh m = two_cubes();
    ASSERT_NO_THROW(validate(m));
    const MeshTopology t = build_topology(m);
    EXPECT_EQ(oracle::unique_face_count(m), 11u);
    ASSERT_EQ(t.num_faces(), 11u);
    std::size_t shared = 0;
    for (std::size_t f = 0; f < t.num_faces(); ++f)
        if (t.owners[f].size() == 2) ++shared;
    EXPECT_EQ(shared, 1u);
    // The shared face is stored in the orientation of its first contributor.
    const std::size_t sf = t.elem2face[1][0];
    EXPECT_EQ(t.elem2face[0][1], sf);
    EXPECT_EQ(t.faces[sf], m.elements[0][1]);
}

TEST(Topology, NonManifoldFaceIsRejected)
{
    PolyhedralMesh m = generate_hex_mesh(1);
    m.elements.push_back(m.elements[0]);
    m.elements.push_back(m.elements[0]);
    EXPECT_THROW(build_topology(m), MeshError);
}

TEST(Topology, ReferenceCountsAndIdempotence)
{
    for (int n : {1, 2, 3, 4}) {
        const PolyhedralMesh m = generate_hex_mesh(n);
        const MeshTopology a = build_topology(m);
        const MeshTopology b = build_topology(m);
        EXPECT_EQ(a.faces, b.faces);
        EXPECT_EQ(a.elem2face, b.elem2face);

        std::size_t refs = 0, slots = 0, boundary = 0;
        for (const auto& o : a.owners) refs += o.size();
        for (const auto& e : m.elements) slots += e.size();
        for (std::size_t f = 0; f < a.num_faces(); ++f) boundary += a.is_boundary(f);
        EXPECT_EQ(refs, slots);
        EXPECT_EQ(boundary, std::size_t(6 * n * n));
        EXPECT_EQ(boundary, oracle::boundary_face_count(m));
    }
}

TEST(Boundary, PredicateParsing)
{
    EXPECT_TRUE(BoundaryPredicate::parse("none").empty());
    const auto p = BoundaryPredicate::parse(" x==0 | z == 1 ");
    EXPECT_TRUE(p.contains(Point(0, 0.3, 0.2)));
    EXPECT_TRUE(p.contains(Point(0.5, 0.3, 1.0)));
    EXPECT_TRUE(p.contains(Point(5e-11, 0.3, 0.2)));
    EXPECT_FALSE(p.contains(Point(1e-9, 0.3, 0.2)));
    EXPECT_THROW(BoundaryPredicate::parse("x==2"), ConfigError);
    EXPECT_THROW(BoundaryPredicate::parse("x<0"), ConfigError);
    EXPECT_THROW(BoundaryPredicate::parse("x==0|"), ConfigError);
}

TEST(Boundary, UnitCube)
{
    const auto m = generate_hex_mesh(1);
    const auto t = build_topology(m);
    const auto bd = set_boundary(m, t, "x==0");
    ASSERT_EQ(bd.neumann_faces.size(), 1u);
    for (VertexId v : bd.neumann_faces[0]) EXPECT_EQ(m.nodes[v].x(), 0.0);
    EXPECT_EQ(bd.dirichlet_faces.size(), 5u);

    const auto none = set_boundary(m, t, "none");
    EXPECT_TRUE(none.neumann_faces.empty());
    EXPECT_EQ(none.dirichlet_faces.size(), 6u);
    EXPECT_EQ(none.dirichlet_nodes.size(), 8u);
}

TEST(Boundary, TwoByTwoByTwoNeumannOnXZero)
{
    const auto m = generate_hex_mesh(2);
    const auto t = build_topology(m);
    const auto bd = set_boundary(m, t, "x==0");
    EXPECT_EQ(bd.neumann_faces.size(), 4u);

    // Brute force over the 27-node grid: Dirichlet nodes are boundary nodes
    // except the centre of the x=0 face.
    std::vector<VertexId> expected;
    for (VertexId v = 0; v < m.num_nodes(); ++v) {
        const Point& p = m.nodes[v];
        const bool on_boundary = p.minCoeff() == 0.0 || p.maxCoeff() == 1.0;
        const bool x0_centre = p.x() == 0.0 && p.y() == 0.5 && p.z() == 0.5;
        if (on_boundary && !x0_centre) expected.push_back(v);
    }
    EXPECT_EQ(expected.size(), 25u);
    EXPECT_EQ(bd.dirichlet_nodes, expected);
}

TEST(Boundary, PartitionForEveryPredicate)
{
    const auto m = generate_tet_mesh(2);
    const auto t = build_topology(m);
    std::size_t boundary = 0;
    for (std::size_t f = 0; f < t.num_faces(); ++f) boundary += t.is_boundary(f);
    for (const char* pred : {"none", "x==0", "x==1|y==0", "x==0|x==1|y==0|y==1|z==0|z==1"}) {
        const auto bd = set_boundary(m, t, pred);
        EXPECT_EQ(bd.neumann_faces.size() + bd.dirichlet_faces.size(), boundary) << pred;
        EXPECT_TRUE(std::is_sorted(bd.dirichlet_nodes.begin(), bd.dirichlet_nodes.end()));
        EXPECT_EQ(std::adjacent_find(bd.dirichlet_nodes.begin(), bd.dirichlet_nodes.end()), bd.dirichlet_nodes.end());
    }
}

TEST(Mesh, FlatnessDiagnostic)
{
    PolyhedralMesh m = generate_hex_mesh(1);
    EXPECT_TRUE(flatness_warnings(m).empty());
    m.nodes[7].z() += 1e-3;
    EXPECT_FALSE(flatness_warnings(m).empty());
}
