#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "vem3/core.hpp"
#include "vem3/geometry.hpp"
#include "vem3/local_frame.hpp"

namespace vem3 {

/// Symmetric simplex rule in barycentric coordinates. Weights sum to the
/// measure of the reference simplex (1/2 for triangles, 1/6 for tetrahedra).
template <int Vertices>
struct QuadratureRule {
    std::vector<std::array<double, Vertices>> points;
    std::vector<double> weights;
    int degree = 0;

    [[nodiscard]] std::size_t size() const { return weights.size(); }
};

using TriangleRule = QuadratureRule<3>;
using TetrahedronRule = QuadratureRule<4>;

namespace detail {

inline void add_orbit3(TriangleRule& r, double a, double w)
{
    const double b = 1.0 - 2.0 * a;
    r.points.push_back({a, a, b});
    r.points.push_back({a, b, a});
    r.points.push_back({b, a, a});
    r.weights.insert(r.weights.end(), 3, w);
}

inline void add_orbit4(TetrahedronRule& r, double a, double w)
{
    const double b = 1.0 - 3.0 * a;
    r.points.push_back({a, a, a, b});
    r.points.push_back({a, a, b, a});
    r.points.push_back({a, b, a, a});
    r.points.push_back({b, a, a, a});
    r.weights.insert(r.weights.end(), 4, w);
}

inline void add_orbit6(TetrahedronRule& r, double a, double w)
{
    const double b = 0.5 - a;
    r.points.push_back({a, a, b, b});
    r.points.push_back({a, b, a, b});
    r.points.push_back({a, b, b, a});
    r.points.push_back({b, a, a, b});
    r.points.push_back({b, a, b, a});
    r.points.push_back({b, b, a, a});
    r.weights.insert(r.weights.end(), 6, w);
}

inline TriangleRule make_triangle_rule(int degree)
{
    TriangleRule r;
    switch (degree) {
    case 1:
        r.points = {{1.0 / 3, 1.0 / 3, 1.0 / 3}};
        r.weights = {0.5};
        r.degree = 1;
        break;
    case 2:
        add_orbit3(r, 1.0 / 6, 1.0 / 6);
        r.degree = 2;
        break;
    case 3:
    case 4:
        // 6-point degree-4 rule, all weights positive.
        add_orbit3(r, 0.44594849091596488632, 0.11169079483900573285);
        add_orbit3(r, 0.091576213509770743460, 0.054975871827660933819);
        r.degree = 4;
        break;
    default:
        throw ConfigError("triangle quadrature: degree must be in 1..4, got " + std::to_string(degree));
    }
    return r;
}

inline TetrahedronRule make_tetrahedron_rule(int degree)
{
    TetrahedronRule r;
    switch (degree) {
    case 1:
        r.points = {{0.25, 0.25, 0.25, 0.25}};
        r.weights = {1.0 / 6};
        r.degree = 1;
        break;
    case 2:
        add_orbit4(r, 0.13819660112501051518, 1.0 / 24);
        r.degree = 2;
        break;
    case 3:
    case 4:
        // 14-point degree-5 rule, all weights positive.
        add_orbit4(r, 0.092735250310891226402, 0.012248840519393658257);
        add_orbit4(r, 0.31088591926330060980, 0.018781320953002641800);
        add_orbit6(r, 0.045503704125649649492, 0.0070910034628469110730);
        r.degree = 5;
        break;
    default:
        throw ConfigError("tetrahedron quadrature: degree must be in 1..4, got " + std::to_string(degree));
    }
    return r;
}

} // namespace detail

inline const TriangleRule& triangle_rule(int degree)
{
    static const std::array<TriangleRule, 4> rules = {detail::make_triangle_rule(1), detail::make_triangle_rule(2),
                                                      detail::make_triangle_rule(3), detail::make_triangle_rule(4)};
    if (degree < 1 || degree > 4)
        throw ConfigError("triangle quadrature: degree must be in 1..4, got " + std::to_string(degree));
    return rules[std::size_t(degree - 1)];
}

inline const TetrahedronRule& tetrahedron_rule(int degree)
{
    static const std::array<TetrahedronRule, 4> rules = {
        detail::make_tetrahedron_rule(1), detail::make_tetrahedron_rule(2), detail::make_tetrahedron_rule(3),
        detail::make_tetrahedron_rule(4)};
    if (degree < 1 || degree > 4)
        throw ConfigError("tetrahedron quadrature: degree must be in 1..4, got " + std::to_string(degree));
    return rules[std::size_t(degree - 1)];
}

namespace detail {

/// Adds w*value to acc, initialising acc from the first contribution so that
/// dynamically sized results need no explicit zero.
template <class R>
void accumulate(std::optional<R>& acc, double w, const R& value)
{
    if (acc) *acc += w * value;
    else acc = R(w * value);
}

} // namespace detail

/// Integral over a 2-D polygon of fun(Point2), fan-triangulated from its
/// shoelace centroid. The polygon may be oriented either way.
template <class F>
auto integral_polygon(F&& fun, int degree, std::span<const Point2> nodef)
{
    using R = std::decay_t<std::invoke_result_t<F&, const Point2&>>;
    const TriangleRule& rule = triangle_rule(degree);

    const double sa = signed_area(nodef);
    const double orient = sa >= 0.0 ? 1.0 : -1.0;
    Point2 c = Point2::Zero();
    for (std::size_t i = 0, n = nodef.size(); i < n; ++i) {
        const Point2& u = nodef[i];
        const Point2& v = nodef[(i + 1) % n];
        c += (u + v) * (u.x() * v.y() - v.x() * u.y());
    }
    c /= 6.0 * sa;
    const double tol = 1e-14 * std::abs(sa);

    std::optional<R> acc;
    for (std::size_t i = 0, n = nodef.size(); i < n; ++i) {
        const Point2& a = nodef[i];
        const Point2& b = nodef[(i + 1) % n];
        const double area = orient * 0.5 * ((a - c).x() * (b - c).y() - (b - c).x() * (a - c).y());
        if (area < -tol) throw GeometryError("integral_polygon: polygon is not star-shaped w.r.t. its centroid");
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const auto& l = rule.points[q];
            const Point2 x = l[0] * c + l[1] * a + l[2] * b;
            detail::accumulate<R>(acc, 2.0 * area * rule.weights[q], fun(x));
        }
    }
    return *acc;
}

template <class F>
auto integral_polygon(F&& fun, int degree, const std::vector<Point2>& nodef)
{
    return integral_polygon(std::forward<F>(fun), degree, std::span<const Point2>(nodef));
}

/// Integral over a polyhedral element of fun(Point), via the same
/// tetrahedral decomposition used for element volumes and centroids.
template <class F>
auto integral_polyhedron(F&& fun, int degree, const std::vector<Point>& nodes, const Element& elem)
{
    using R = std::decay_t<std::invoke_result_t<F&, const Point&>>;
    const TetrahedronRule& rule = tetrahedron_rule(degree);
    std::optional<R> acc;
    for (const Tetrahedron& t : tetrahedralize(nodes, elem)) {
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const auto& l = rule.points[q];
            const Point x = l[0] * t.v[0] + l[1] * t.v[1] + l[2] * t.v[2] + l[3] * t.v[3];
            detail::accumulate<R>(acc, 6.0 * t.volume * rule.weights[q], fun(x));
        }
    }
    return *acc;
}

} // namespace vem3
