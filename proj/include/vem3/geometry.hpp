#pragma once

#include <array>
#include <cmath>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "vem3/core.hpp"
#include "vem3/local_frame.hpp"
#include "vem3/mesh.hpp"
#include "vem3/polygon3.hpp"

namespace vem3 {

struct ElementGeometry {
    Point centroid;
    double volume = 0.0;
    double diameter = 0.0;
};

/// Vertices of one sub-tetrahedron, positively oriented, and its volume.
struct Tetrahedron {
    std::array<Point, 4> v;
    double volume;
};

inline double signed_tet_volume(const Point& a, const Point& b, const Point& c, const Point& d)
{
    return (b - a).dot((c - a).cross(d - a)) / 6.0;
}

/// Sorted unique vertex indices of an element.
inline std::vector<VertexId> element_vertices(const Element& elem)
{
    std::set<VertexId> s;
    for (const Face& f : elem) s.insert(f.begin(), f.end());
    return {s.begin(), s.end()};
}

/// Splits an element into tetrahedra (apex, face mean, a_{i+1}, a_i) over all
/// face edges, with the apex at the element's vertex mean.
///
/// Requires the element to be star-shaped w.r.t. the vertex mean; a
/// negatively oriented piece raises GeometryError.
inline std::vector<Tetrahedron> tetrahedralize(const std::vector<Point>& nodes, const Element& elem)
{
    const auto verts = element_vertices(elem);
    Point apex = Point::Zero();
    for (VertexId v : verts) apex += nodes[v];
    apex /= double(verts.size());

    double h = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) h = std::max(h, (nodes[verts[i]] - nodes[verts[j]]).norm());
    const double tol = 1e-14 * h * h * h;

    std::vector<Tetrahedron> tets;
    double total = 0.0;
    double negative = 0.0;
    for (const Face& face : elem) {
        Point mf = Point::Zero();
        for (VertexId v : face) mf += nodes[v];
        mf /= double(face.size());
        for (std::size_t i = 0, n = face.size(); i < n; ++i) {
            const Point& a = nodes[face[i]];
            const Point& b = nodes[face[(i + 1) % n]];
            const double vol = signed_tet_volume(apex, mf, b, a);
            total += vol;
            if (vol < -tol) negative += vol;
            tets.push_back({{apex, mf, b, a}, vol});
        }
    }
    if (total < -tol)
        throw GeometryError("element faces are oriented clockwise as seen from the interior (negative volume)");
    if (negative < 0.0)
        throw GeometryError("element is not star-shaped with respect to its vertex mean");
    return tets;
}

inline ElementGeometry element_geometry(const std::vector<Point>& nodes, const Element& elem)
{
    const auto verts = element_vertices(elem);
    ElementGeometry g;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            g.diameter = std::max(g.diameter, (nodes[verts[i]] - nodes[verts[j]]).norm());

    const auto tets = tetrahedralize(nodes, elem);
    Point c = Point::Zero();
    for (const Tetrahedron& t : tets) {
        g.volume += t.volume;
        c += t.volume * 0.25 * (t.v[0] + t.v[1] + t.v[2] + t.v[3]);
    }
    if (std::abs(g.volume) < 1e-14 * g.diameter * g.diameter * g.diameter)
        throw GeometryError("degenerate element (volume " + std::to_string(g.volume) + ")");
    g.centroid = c / g.volume;
    return g;
}

inline ElementGeometry element_geometry(const PolyhedralMesh& mesh, std::size_t e)
{
    try {
        return element_geometry(mesh.nodes, mesh.elements.at(e));
    } catch (const GeometryError& ex) {
        throw GeometryError("element " + std::to_string(e) + ": " + ex.what());
    }
}

/// Area of a planar face, via the shoelace formula in its local chart.
inline double face_area(std::span<const Point> P)
{
    return polygon_chart(P).area;
}

} // namespace vem3
