#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "vem3/core.hpp"

namespace vem3 {

/// Unit normal of a face from its first edge and its closing edge.
///
/// For vertices ordered counterclockwise as seen from inside the element the
/// result points outward.
inline Point face_normal(std::span<const Point> P)
{
    if (P.size() < 3) throw GeometryError("face_normal: face has fewer than 3 vertices");
    const Point e1 = P[1] - P[0];
    const Point en = P[0] - P.back();
    const Point n = e1.cross(en);
    const double len = n.norm();
    if (len < 1e-14) throw GeometryError("face_normal: degenerate face (first edge and closing edge are collinear)");
    return n / len;
}

/// Largest pairwise distance of a point set.
template <class Vec>
double max_pairwise_distance(std::span<const Vec> P)
{
    double d = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = i + 1; j < P.size(); ++j)
            d = std::max(d, (P[i] - P[j]).norm());
    return d;
}

/// Max distance of the vertices from the plane through P[0] with the face normal.
inline double out_of_plane_deviation(std::span<const Point> P)
{
    const Point n = face_normal(P);
    double dev = 0.0;
    for (const Point& p : P) dev = std::max(dev, std::abs(n.dot(p - P[0])));
    return dev;
}

} // namespace vem3
