#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "vem3/core.hpp"
#include "vem3/polygon3.hpp"

namespace vem3 {

/// Vertex coordinates plus, per element, its ordered list of faces.
struct PolyhedralMesh {
    std::vector<Point> nodes;
    std::vector<Element> elements;

    [[nodiscard]] std::size_t num_nodes() const { return nodes.size(); }
    [[nodiscard]] std::size_t num_elements() const { return elements.size(); }

    bool operator==(const PolyhedralMesh&) const = default;
};

namespace detail {

inline std::string where(std::size_t e, std::size_t f)
{
    return "element " + std::to_string(e) + ", face " + std::to_string(f);
}

} // namespace detail

/// Checks index bounds, face sizes and that every element surface is closed
/// and consistently oriented (each directed edge used exactly once).
inline void validate(const PolyhedralMesh& mesh)
{
    const std::size_t N = mesh.nodes.size();
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const Element& elem = mesh.elements[e];
        if (elem.size() < 4)
            throw MeshError("element " + std::to_string(e) + " has fewer than 4 faces");
        std::map<std::pair<VertexId, VertexId>, int> directed;
        for (std::size_t f = 0; f < elem.size(); ++f) {
            const Face& face = elem[f];
            if (face.size() < 3) throw MeshError(detail::where(e, f) + ": face has fewer than 3 vertices");
            for (VertexId v : face)
                if (v >= N)
                    throw MeshError(detail::where(e, f) + ": vertex index " + std::to_string(v) +
                                    " out of range (mesh has " + std::to_string(N) + " nodes)");
            std::set<VertexId> distinct(face.begin(), face.end());
            if (distinct.size() != face.size()) throw MeshError(detail::where(e, f) + ": repeated vertex in face");
            for (std::size_t i = 0; i < face.size(); ++i)
                ++directed[{face[i], face[(i + 1) % face.size()]}];
        }
        for (const auto& [edge, count] : directed) {
            const auto rev = directed.find({edge.second, edge.first});
            const int back = rev == directed.end() ? 0 : rev->second;
            if (count + back != 2)
                throw MeshError("element " + std::to_string(e) + ": edge (" + std::to_string(edge.first) + "," +
                                std::to_string(edge.second) + ") is shared by " + std::to_string(count + back) +
                                " faces; surface is not closed");
            if (count != 1)
                throw MeshError("element " + std::to_string(e) + ": faces are not consistently oriented along edge (" +
                                std::to_string(edge.first) + "," + std::to_string(edge.second) + ")");
        }
    }
}

/// Faces whose vertices deviate from their plane by more than 1e-8 h_f.
inline std::vector<std::string> flatness_warnings(const PolyhedralMesh& mesh)
{
    std::vector<std::string> out;
    for (std::size_t e = 0; e < mesh.elements.size(); ++e)
        for (std::size_t f = 0; f < mesh.elements[e].size(); ++f) {
            const auto P = gather(mesh.nodes, mesh.elements[e][f]);
            const double hf = max_pairwise_distance<Point>(P);
            const double dev = out_of_plane_deviation(P);
            if (dev > 1e-8 * hf) {
                std::ostringstream os;
                os << detail::where(e, f) << ": face is not planar (deviation " << dev << ", diameter " << hf << ")";
                out.push_back(os.str());
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// JSON mesh format
//   { "nodes": [[x,y,z], ...], "elements": [ [ [i,j,k,...], ... ], ... ] }
// ---------------------------------------------------------------------------

inline PolyhedralMesh mesh_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("nodes") || !j.contains("elements"))
        throw MeshError("mesh JSON must be an object with \"nodes\" and \"elements\"");
    const auto& jn = j.at("nodes");
    const auto& je = j.at("elements");
    if (!jn.is_array() || !je.is_array()) throw MeshError("\"nodes\" and \"elements\" must be arrays");

    PolyhedralMesh mesh;
    mesh.nodes.reserve(jn.size());
    for (std::size_t i = 0; i < jn.size(); ++i) {
        const auto& p = jn[i];
        if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() || !p[2].is_number())
            throw MeshError("node " + std::to_string(i) + " must be an array of 3 numbers");
        mesh.nodes.emplace_back(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
    }
    mesh.elements.reserve(je.size());
    for (std::size_t e = 0; e < je.size(); ++e) {
        if (!je[e].is_array()) throw MeshError("element " + std::to_string(e) + " must be an array of faces");
        Element elem;
        for (std::size_t f = 0; f < je[e].size(); ++f) {
            const auto& jf = je[e][f];
            if (!jf.is_array()) throw MeshError(detail::where(e, f) + ": face must be an array of indices");
            Face face;
            for (const auto& v : jf) {
                if (!v.is_number_integer() || v.get<long long>() < 0)
                    throw MeshError(detail::where(e, f) + ": vertex indices must be non-negative integers");
                face.push_back(static_cast<VertexId>(v.get<long long>()));
            }
            elem.push_back(std::move(face));
        }
        mesh.elements.push_back(std::move(elem));
    }
    validate(mesh);
    return mesh;
}

inline nlohmann::json mesh_to_json(const PolyhedralMesh& mesh)
{
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (const Point& p : mesh.nodes) j["nodes"].push_back({p.x(), p.y(), p.z()});
    j["elements"] = nlohmann::json::array();
    for (const Element& elem : mesh.elements) j["elements"].push_back(elem);
    return j;
}

inline PolyhedralMesh load_mesh(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw MeshError("cannot open mesh file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw MeshError("failed to parse mesh file '" + path + "': " + ex.what());
    }
    return mesh_from_json(j);
}

inline void save_mesh(const PolyhedralMesh& mesh, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write mesh file '" + path + "'");
    out << mesh_to_json(mesh).dump() << '\n';
}

// ---------------------------------------------------------------------------
// Structured generators on the unit cube
// ---------------------------------------------------------------------------

namespace detail {

/// Reverses the loop (keeping the first vertex) if its right-hand normal
/// points away from `interior`.
inline void orient_inward(Face& face, const std::vector<Point>& nodes, const Point& interior)
{
    const Point& p0 = nodes[face[0]];
    const Point n = (nodes[face[1]] - p0).cross(nodes[face[2]] - p0);
    if (n.dot(interior - p0) < 0.0) std::reverse(face.begin() + 1, face.end());
}

inline std::vector<Point> lattice_nodes(int n)
{
    std::vector<Point> nodes;
    nodes.reserve(static_cast<std::size_t>((n + 1) * (n + 1) * (n + 1)));
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i)
                nodes.emplace_back(double(i) / n, double(j) / n, double(k) / n);
    return nodes;
}

} // namespace detail

/// Uniform n x n x n partition of [0,1]^3 into hexahedra; mesh size 1/n.
inline PolyhedralMesh generate_hex_mesh(int n)
{
    if (n < 1) throw ConfigError("generate_hex_mesh: n must be >= 1");
    PolyhedralMesh mesh;
    mesh.nodes = detail::lattice_nodes(n);
    const auto id = [n](int i, int j, int k) -> VertexId { return VertexId(i + (n + 1) * (j + (n + 1) * k)); };
    mesh.elements.reserve(std::size_t(n) * n * n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const Point center((i + 0.5) / n, (j + 0.5) / n, (k + 0.5) / n);
                Element elem = {
                    {id(i, j, k), id(i, j + 1, k), id(i, j + 1, k + 1), id(i, j, k + 1)},                 // x-
                    {id(i + 1, j, k), id(i + 1, j + 1, k), id(i + 1, j + 1, k + 1), id(i + 1, j, k + 1)}, // x+
                    {id(i, j, k), id(i + 1, j, k), id(i + 1, j, k + 1), id(i, j, k + 1)},                 // y-
                    {id(i, j + 1, k), id(i + 1, j + 1, k), id(i + 1, j + 1, k + 1), id(i, j + 1, k + 1)}, // y+
                    {id(i, j, k), id(i + 1, j, k), id(i + 1, j + 1, k), id(i, j + 1, k)},                 // z-
                    {id(i, j, k + 1), id(i + 1, j, k + 1), id(i + 1, j + 1, k + 1), id(i, j + 1, k + 1)}, // z+
                };
                for (Face& f : elem) detail::orient_inward(f, mesh.nodes, center);
                mesh.elements.push_back(std::move(elem));
            }
    return mesh;
}

/// Each hex cell of generate_hex_mesh(n) split into 6 tetrahedra along its
/// main diagonal (Kuhn split).
inline PolyhedralMesh generate_tet_mesh(int n)
{
    if (n < 1) throw ConfigError("generate_tet_mesh: n must be >= 1");
    PolyhedralMesh mesh;
    mesh.nodes = detail::lattice_nodes(n);
    const auto id = [n](const std::array<int, 3>& c) -> VertexId {
        return VertexId(c[0] + (n + 1) * (c[1] + (n + 1) * c[2]));
    };
    mesh.elements.reserve(std::size_t(6) * n * n * n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                std::array<int, 3> axes = {0, 1, 2};
                do {
                    std::array<std::array<int, 3>, 4> corner;
                    corner[0] = {i, j, k};
                    for (int s = 0; s < 3; ++s) {
                        corner[s + 1] = corner[s];
                        ++corner[s + 1][axes[s]];
                    }
                    std::array<VertexId, 4> v;
                    for (int s = 0; s < 4; ++s) v[s] = id(corner[s]);
                    Element elem;
                    for (int skip = 0; skip < 4; ++skip) {
                        Face f;
                        for (int s = 0; s < 4; ++s)
                            if (s != skip) f.push_back(v[s]);
                        detail::orient_inward(f, mesh.nodes, mesh.nodes[v[skip]]);
                        elem.push_back(std::move(f));
                    }
                    mesh.elements.push_back(std::move(elem));
                } while (std::next_permutation(axes.begin(), axes.end()));
            }
    return mesh;
}

// ---------------------------------------------------------------------------
// Topology
// ---------------------------------------------------------------------------

/// Reference to one face slot of one element.
struct FaceSlot {
    std::size_t element;
    std::size_t local_face;
    bool operator==(const FaceSlot&) const = default;
};

struct MeshTopology {
    /// Unique faces, vertex order taken from the first contributing element.
    std::vector<Face> faces;
    /// Per element: local face position -> global face index.
    std::vector<std::vector<std::size_t>> elem2face;
    /// Ascending-sorted vertex tuple of each face.
    std::vector<Face> face_keys;
    /// One (boundary) or two (interior) slots per face.
    std::vector<std::vector<FaceSlot>> owners;

    [[nodiscard]] std::size_t num_faces() const { return faces.size(); }
    [[nodiscard]] bool is_boundary(std::size_t f) const { return owners[f].size() == 1; }
};

inline MeshTopology build_topology(const PolyhedralMesh& mesh)
{
    MeshTopology topo;
    std::map<Face, std::size_t> index;
    topo.elem2face.resize(mesh.elements.size());
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const Element& elem = mesh.elements[e];
        topo.elem2face[e].reserve(elem.size());
        for (std::size_t lf = 0; lf < elem.size(); ++lf) {
            Face key = elem[lf];
            std::sort(key.begin(), key.end());
            auto [it, inserted] = index.try_emplace(key, topo.faces.size());
            if (inserted) {
                topo.faces.push_back(elem[lf]);
                topo.face_keys.push_back(std::move(key));
                topo.owners.emplace_back();
            }
            auto& owners = topo.owners[it->second];
            if (owners.size() == 2)
                throw MeshError(detail::where(e, lf) + ": face is shared by more than two elements (non-manifold)");
            owners.push_back({e, lf});
            topo.elem2face[e].push_back(it->second);
        }
    }
    return topo;
}

// ---------------------------------------------------------------------------
// Boundary identification
// ---------------------------------------------------------------------------

/// Union of coordinate-plane predicates such as "x==0|y==1". Empty means "none".
class BoundaryPredicate {
public:
    static constexpr double tolerance = 1e-10;

    static BoundaryPredicate parse(std::string_view text)
    {
        BoundaryPredicate pred;
        const auto trim = [](std::string_view s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
            return s;
        };
        const std::string_view whole = trim(text);
        if (whole == "none") return pred;
        std::size_t start = 0;
        while (start <= whole.size()) {
            const std::size_t bar = whole.find('|', start);
            const std::string_view term = trim(whole.substr(start, bar == std::string_view::npos ? whole.npos : bar - start));
            pred.planes_.push_back(parse_term(term, text));
            if (bar == std::string_view::npos) break;
            start = bar + 1;
        }
        return pred;
    }

    [[nodiscard]] bool empty() const { return planes_.empty(); }

    [[nodiscard]] bool contains(const Point& p) const
    {
        return std::any_of(planes_.begin(), planes_.end(), [&](const Plane& pl) {
            return std::abs(p[pl.axis] - pl.value) <= tolerance;
        });
    }

    /// All vertices of the face lie on a single plane of the predicate.
    [[nodiscard]] bool contains_face(const std::vector<Point>& nodes, const Face& face) const
    {
        return std::any_of(planes_.begin(), planes_.end(), [&](const Plane& pl) {
            return std::all_of(face.begin(), face.end(), [&](VertexId v) {
                return std::abs(nodes[v][pl.axis] - pl.value) <= tolerance;
            });
        });
    }

private:
    struct Plane {
        int axis;
        double value;
    };

    static Plane parse_term(std::string_view term, std::string_view whole)
    {
        static constexpr std::array<std::string_view, 6> known = {"x==0", "x==1", "y==0", "y==1", "z==0", "z==1"};
        std::string t;
        for (char c : term)
            if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
        for (std::size_t i = 0; i < known.size(); ++i)
            if (t == known[i]) return {int(i / 2), double(i % 2)};
        throw ConfigError("unsupported boundary predicate '" + std::string(whole) +
                          "' (expected x==0, x==1, y==0, y==1, z==0, z==1 joined by '|', or none)");
    }

    std::vector<Plane> planes_;
};

struct BoundaryStruct {
    std::vector<Face> neumann_faces;
    std::vector<std::size_t> neumann_face_ids;
    std::vector<Face> dirichlet_faces;
    std::vector<std::size_t> dirichlet_face_ids;
    /// Sorted, unique vertices of the Dirichlet faces.
    std::vector<VertexId> dirichlet_nodes;
};

/// A boundary face is Neumann iff all of its vertices satisfy the predicate.
inline BoundaryStruct set_boundary(const PolyhedralMesh& mesh, const MeshTopology& topo, const BoundaryPredicate& neumann)
{
    BoundaryStruct bd;
    std::set<VertexId> dnodes;
    for (std::size_t f = 0; f < topo.num_faces(); ++f) {
        if (!topo.is_boundary(f)) continue;
        const Face& face = topo.faces[f];
        if (neumann.contains_face(mesh.nodes, face)) {
            bd.neumann_faces.push_back(face);
            bd.neumann_face_ids.push_back(f);
        } else {
            bd.dirichlet_faces.push_back(face);
            bd.dirichlet_face_ids.push_back(f);
            dnodes.insert(face.begin(), face.end());
        }
    }
    bd.dirichlet_nodes.assign(dnodes.begin(), dnodes.end());
    return bd;
}

inline BoundaryStruct set_boundary(const PolyhedralMesh& mesh, const MeshTopology& topo, std::string_view neumann)
{
    return set_boundary(mesh, topo, BoundaryPredicate::parse(neumann));
}

} // namespace vem3
