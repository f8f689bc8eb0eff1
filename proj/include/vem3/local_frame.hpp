#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "vem3/core.hpp"
#include "vem3/polygon3.hpp"

namespace vem3 {

/// Orthonormal chart on the plane of a face, anchored at its first vertex.
///
/// t_e runs along the first edge, normal is the outward face normal and
/// n_e = t_e x normal completes the in-plane pair. A point a maps to
/// s = (a - origin).n_e, t = (a - origin).t_e.
struct LocalFrame {
    Point origin;
    Point n_e;
    Point t_e;
    Point normal;

    [[nodiscard]] Point2 chart(const Point& a) const
    {
        const Point d = a - origin;
        return {d.dot(n_e), d.dot(t_e)};
    }

    [[nodiscard]] Point coord(double s, double t) const { return origin + s * n_e + t * t_e; }
    [[nodiscard]] Point coord(const Point2& st) const { return coord(st.x(), st.y()); }
};

inline LocalFrame build_frame(std::span<const Point> P)
{
    if (P.size() < 3) throw GeometryError("build_frame: face has fewer than 3 vertices");
    const Point e1 = P[1] - P[0];
    const double len = e1.norm();
    if (len < 1e-14) throw GeometryError("build_frame: degenerate first edge");
    LocalFrame fr;
    fr.origin = P[0];
    fr.t_e = e1 / len;
    fr.normal = face_normal(P);
    fr.n_e = fr.t_e.cross(fr.normal);
    return fr;
}

/// Signed shoelace area of a 2-D loop.
inline double signed_area(std::span<const Point2> p)
{
    double a = 0.0;
    for (std::size_t i = 0, n = p.size(); i < n; ++i) {
        const Point2& u = p[i];
        const Point2& v = p[(i + 1) % n];
        a += u.x() * v.y() - v.x() * u.y();
    }
    return 0.5 * a;
}

/// A 3-D face expressed in its local chart.
struct PolygonChart {
    LocalFrame frame;
    std::vector<Point2> nodef;
    double area = 0.0;
    /// +1 if nodef runs counterclockwise in (s,t), -1 otherwise.
    double orientation = 1.0;
    Point2 centroid;
    double diameter = 0.0;

    [[nodiscard]] const Point& normal() const { return frame.normal; }
    [[nodiscard]] Point coord(double s, double t) const { return frame.coord(s, t); }
    [[nodiscard]] Point coord(const Point2& st) const { return frame.coord(st); }
};

inline PolygonChart polygon_chart(std::span<const Point> P)
{
    PolygonChart pc;
    pc.frame = build_frame(P);
    pc.nodef.reserve(P.size());
    for (const Point& a : P) pc.nodef.push_back(pc.frame.chart(a));

    const double sa = signed_area(pc.nodef);
    pc.diameter = max_pairwise_distance<Point2>(pc.nodef);
    if (std::abs(sa) <= 1e-14 * pc.diameter * pc.diameter) throw GeometryError("polygon_chart: polygon has zero area");
    pc.area = std::abs(sa);
    pc.orientation = sa > 0.0 ? 1.0 : -1.0;

    Point2 c = Point2::Zero();
    for (std::size_t i = 0, n = pc.nodef.size(); i < n; ++i) {
        const Point2& u = pc.nodef[i];
        const Point2& v = pc.nodef[(i + 1) % n];
        c += (u + v) * (u.x() * v.y() - v.x() * u.y());
    }
    pc.centroid = c / (6.0 * sa);
    return pc;
}

} // namespace vem3
