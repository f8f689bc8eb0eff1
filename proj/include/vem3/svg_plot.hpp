#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vem3/core.hpp"
#include "vem3/error_norms.hpp"

namespace vem3 {

namespace detail {

inline std::string fmt_num(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

} // namespace detail

/// Log-log plot of both error norms against h, with reference-slope
/// triangles for orders 1 and 2.
inline std::string convergence_svg(const ConvergenceRecord& rec)
{
    constexpr double W = 640, H = 480, left = 80, right = 30, top = 40, bottom = 60;
    std::vector<double> hs, es;
    for (const auto& lv : rec.levels) {
        hs.push_back(lv.h);
        es.push_back(lv.err_l2);
        es.push_back(lv.err_h1);
    }
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
       << W << ' ' << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (hs.empty()) {
        os << "</svg>\n";
        return os.str();
    }
    const auto positive_min = [](const std::vector<double>& v) {
        double m = HUGE_VAL;
        for (double x : v)
            if (x > 0) m = std::min(m, x);
        return m == HUGE_VAL ? 1e-16 : m;
    };
    double hx0 = std::floor(std::log10(*std::min_element(hs.begin(), hs.end())));
    double hx1 = std::ceil(std::log10(*std::max_element(hs.begin(), hs.end())));
    double ey0 = std::floor(std::log10(positive_min(es)));
    double ey1 = std::ceil(std::log10(*std::max_element(es.begin(), es.end())));
    if (hx1 <= hx0) hx1 = hx0 + 1;
    if (ey1 <= ey0) ey1 = ey0 + 1;
    const auto X = [&](double h) { return left + (std::log10(h) - hx0) / (hx1 - hx0) * (W - left - right); };
    const auto Y = [&](double e) {
        const double le = std::log10(std::max(e, std::pow(10.0, ey0)));
        return H - bottom - (le - ey0) / (ey1 - ey0) * (H - top - bottom);
    };

    os << "<g stroke=\"black\" fill=\"none\">\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << W - left - right << "\" height=\""
       << H - top - bottom << "\"/>\n</g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n";
    for (double d = hx0; d <= hx1 + 1e-9; d += 1)
        os << "<text x=\"" << X(std::pow(10.0, d)) << "\" y=\"" << H - bottom + 18 << "\">1e" << int(d) << "</text>\n";
    for (double d = ey0; d <= ey1 + 1e-9; d += 1)
        os << "<text x=\"" << left - 30 << "\" y=\"" << Y(std::pow(10.0, d)) + 4 << "\">1e" << int(d) << "</text>\n";
    os << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 15 << "\">h</text>\n";
    os << "<text x=\"" << left + 10 << "\" y=\"" << top - 15 << "\" text-anchor=\"start\">Error</text>\n</g>\n";

    const auto polyline = [&](auto get, const char* color, const std::string& label, double ly) {
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& lv : rec.levels) os << X(lv.h) << ',' << Y(get(lv)) << ' ';
        os << "\"/>\n";
        for (const auto& lv : rec.levels)
            os << "<circle cx=\"" << X(lv.h) << "\" cy=\"" << Y(get(lv)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        os << "<text x=\"" << W - right - 170 << "\" y=\"" << ly << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
           << color << "\">" << label << "</text>\n";
    };
    const auto rate_label = [](double r) { return std::isnan(r) ? std::string("n/a") : detail::fmt_num("%.2f", r); };
    polyline([](const ConvergenceLevel& lv) { return lv.err_l2; }, "#1f77b4",
             "||u-u_h||, rate " + rate_label(rec.rate_l2), H - bottom - 30);
    polyline([](const ConvergenceLevel& lv) { return lv.err_h1; }, "#d62728",
             "|u-u_h|_1, rate " + rate_label(rec.rate_h1), H - bottom - 12);

    // Slope triangles anchored below the last point of each curve.
    const ConvergenceLevel& last = rec.levels.back();
    const double h0 = last.h, h1 = last.h * 2.0;
    const auto triangle = [&](double e0, double order, const char* color) {
        const double ea = e0 * 0.5, eb = ea * std::pow(2.0, order);
        os << "<polygon fill=\"none\" stroke=\"" << color << "\" stroke-dasharray=\"4 2\" points=\"" << X(h0) << ','
           << Y(ea) << ' ' << X(h1) << ',' << Y(ea) << ' ' << X(h1) << ',' << Y(eb) << "\"/>\n";
        os << "<text x=\"" << X(h1) + 4 << "\" y=\"" << (Y(ea) + Y(eb)) / 2 << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
           << color << "\">" << int(order) << "</text>\n";
    };
    if (last.err_l2 > 0) triangle(last.err_l2, 2, "#1f77b4");
    if (last.err_h1 > 0) triangle(last.err_h1, 1, "#d62728");
    os << "</svg>\n";
    return os.str();
}

inline void write_convergence_svg(const ConvergenceRecord& rec, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << convergence_svg(rec);
}

} // namespace vem3
