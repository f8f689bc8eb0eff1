#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "vem3/core.hpp"

namespace vem3 {

/// Data of -Lap u = r in the domain, u = g_D on the Dirichlet part and
/// du/dn = grad(u).n on the Neumann part.
struct PdeData {
    std::function<double(const Point&)> load;
    std::function<double(const Point&)> exact;        ///< may be empty
    std::function<Point(const Point&)> gradient;      ///< supplies the Neumann datum
    std::function<double(const Point&)> dirichlet;

    [[nodiscard]] bool has_exact() const { return static_cast<bool>(exact); }
};

/// u = c0 + cx x + cy y + cz z.
inline PdeData affine_solution(double c0, double cx, double cy, double cz)
{
    PdeData pde;
    pde.exact = [=](const Point& p) { return c0 + cx * p.x() + cy * p.y() + cz * p.z(); };
    pde.gradient = [=](const Point&) { return Point(cx, cy, cz); };
    pde.load = [](const Point&) { return 0.0; };
    pde.dirichlet = pde.exact;
    return pde;
}

/// u = x^2 + y^2 + z^2, r = -6.
inline PdeData quadratic_solution()
{
    PdeData pde;
    pde.exact = [](const Point& p) { return p.squaredNorm(); };
    pde.gradient = [](const Point& p) { return Point(2.0 * p); };
    pde.load = [](const Point&) { return -6.0; };
    pde.dirichlet = pde.exact;
    return pde;
}

/// u = sin(pi x) sin(pi y) sin(pi z), r = 3 pi^2 u.
inline PdeData trig_solution()
{
    using std::numbers::pi;
    PdeData pde;
    pde.exact = [](const Point& p) { return std::sin(pi * p.x()) * std::sin(pi * p.y()) * std::sin(pi * p.z()); };
    pde.gradient = [](const Point& p) {
        const double sx = std::sin(pi * p.x()), sy = std::sin(pi * p.y()), sz = std::sin(pi * p.z());
        const double cx = std::cos(pi * p.x()), cy = std::cos(pi * p.y()), cz = std::cos(pi * p.z());
        return Point(pi * cx * sy * sz, pi * sx * cy * sz, pi * sx * sy * cz);
    };
    pde.load = [](const Point& p) {
        return 3.0 * pi * pi * std::sin(pi * p.x()) * std::sin(pi * p.y()) * std::sin(pi * p.z());
    };
    pde.dirichlet = pde.exact;
    return pde;
}

/// Named solution: "zero", "linear", "quadratic", "trig", or
/// "affine:c0,cx,cy,cz".
inline PdeData make_preset(const std::string& name)
{
    if (name == "zero") return affine_solution(0, 0, 0, 0);
    if (name == "linear") return affine_solution(0, 1, 2, 3);
    if (name == "quadratic") return quadratic_solution();
    if (name == "trig") return trig_solution();
    if (name.rfind("affine:", 0) == 0) {
        std::vector<double> c;
        std::stringstream ss(name.substr(7));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                c.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw ConfigError("bad coefficient '" + item + "' in solution '" + name + "'");
            }
        }
        if (c.size() != 4) throw ConfigError("solution '" + name + "' needs exactly 4 coefficients c0,cx,cy,cz");
        return affine_solution(c[0], c[1], c[2], c[3]);
    }
    throw ConfigError("unknown solution preset '" + name +
                      "' (expected zero, linear, quadratic, trig or affine:c0,cx,cy,cz)");
}

} // namespace vem3
