#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "vem3/core.hpp"
#include "vem3/element_assembly.hpp"
#include "vem3/error_norms.hpp"
#include "vem3/mesh.hpp"
#include "vem3/pde.hpp"
#include "vem3/poisson.hpp"
#include "vem3/solver.hpp"
#include "vem3/svg_plot.hpp"

namespace vem3 {

enum class MeshGenerator { Hex, Tet };

inline MeshGenerator parse_generator(std::string_view s)
{
    if (s == "hex") return MeshGenerator::Hex;
    if (s == "tet") return MeshGenerator::Tet;
    throw ConfigError("unknown mesh generator '" + std::string(s) + "' (expected hex or tet)");
}

inline PolyhedralMesh generate_mesh(MeshGenerator kind, int n)
{
    return kind == MeshGenerator::Hex ? generate_hex_mesh(n) : generate_tet_mesh(n);
}

struct StudyConfig {
    /// Either generator levels or mesh files; files win when both are set.
    MeshGenerator generator = MeshGenerator::Hex;
    std::vector<int> levels;
    std::vector<std::string> mesh_files;
    std::string solution = "trig";
    std::string neumann = "x==0";
    RhsScheme rhs = RhsScheme::Quad3;
    SolverConfig solver;
    std::string out_csv;
    std::string out_svg;

    [[nodiscard]] std::size_t num_levels() const { return mesh_files.empty() ? levels.size() : mesh_files.size(); }

    void validate() const
    {
        if (num_levels() == 0) throw ConfigError("study needs at least one level");
        for (int n : levels)
            if (n < 1) throw ConfigError("mesh levels must be >= 1");
        solver.validate();
        (void)make_preset(solution);
        (void)BoundaryPredicate::parse(neumann);
    }
};

namespace detail {

/// Runs f, prefixing any library error with `context` while keeping its kind.
template <class F>
auto with_context(const std::string& context, F&& f)
{
    try {
        return f();
    } catch (const SolverError& e) {
        throw SolverError(context + ": " + e.what());
    } catch (const GeometryError& e) {
        throw GeometryError(context + ": " + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(context + ": " + e.what());
    } catch (const MeshError& e) {
        throw MeshError(context + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(context + ": " + e.what());
    }
}

inline std::string sci(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits, v);
    return buf;
}

inline std::string full(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

/// Aligned table with columns #Dof, h, ||u-u_h||, |u-u_h|_1 and a rate row.
inline void print_table(const ConvergenceRecord& rec, std::ostream& out)
{
    out << "Table: Error\n";
    out << std::setw(10) << "#Dof" << std::setw(14) << "h" << std::setw(16) << "||u-u_h||" << std::setw(16)
        << "|u-u_h|_1" << '\n';
    for (const auto& lv : rec.levels)
        out << std::setw(10) << lv.ndof << std::setw(14) << detail::sci(lv.h, 5) << std::setw(16)
            << detail::sci(lv.err_l2, 5) << std::setw(16) << detail::sci(lv.err_h1, 5) << '\n';
    if (rec.levels.size() >= 2) {
        char buf[64];
        out << std::setw(10) << "rate" << std::setw(14) << "";
        std::snprintf(buf, sizeof buf, "%.4f", rec.rate_l2);
        out << std::setw(16) << buf;
        std::snprintf(buf, sizeof buf, "%.4f", rec.rate_h1);
        out << std::setw(16) << buf << '\n';
    }
}

inline std::string convergence_csv(const ConvergenceRecord& rec)
{
    std::ostringstream os;
    os << "level,ndof,h,err_l2,err_h1\n";
    for (std::size_t k = 0; k < rec.levels.size(); ++k) {
        const auto& lv = rec.levels[k];
        os << k + 1 << ',' << lv.ndof << ',' << detail::full(lv.h) << ',' << detail::full(lv.err_l2) << ','
           << detail::full(lv.err_h1) << '\n';
    }
    if (rec.levels.size() >= 2)
        os << "rate,,," << detail::full(rec.rate_l2) << ',' << detail::full(rec.rate_h1) << '\n';
    return os.str();
}

inline void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

/// Solves on every level, computes both error norms and fits the rates.
/// Writes CSV/SVG when paths are set; the table goes to `out`.
inline ConvergenceRecord run_study(const StudyConfig& cfg, std::ostream& out)
{
    cfg.validate();
    const PdeData pde = make_preset(cfg.solution);
    const BoundaryPredicate neumann = BoundaryPredicate::parse(cfg.neumann);
    ConvergenceRecord rec;
    for (std::size_t k = 0; k < cfg.num_levels(); ++k) {
        const std::string context = "level " + std::to_string(k + 1);
        rec.levels.push_back(detail::with_context(context, [&] {
            const PolyhedralMesh mesh =
                cfg.mesh_files.empty() ? generate_mesh(cfg.generator, cfg.levels[k]) : load_mesh(cfg.mesh_files[k]);
            const PoissonSolution sol = solve_poisson(mesh, pde, neumann, cfg.rhs, cfg.solver);
            ConvergenceLevel lv;
            lv.ndof = long(sol.u.size());
            lv.h = std::cbrt(1.0 / double(mesh.num_elements()));
            lv.err_l2 = l2_error(mesh, sol.u, sol.system.projections, sol.system.elem2dof, pde.exact);
            lv.err_h1 = h1_error(mesh, sol.u, sol.system.projections, sol.system.elem2dof, pde.gradient);
            return lv;
        }));
    }
    fit_rates(rec);
    print_table(rec, out);
    if (!cfg.out_csv.empty()) write_text(cfg.out_csv, convergence_csv(rec));
    if (!cfg.out_svg.empty()) write_convergence_svg(rec, cfg.out_svg);
    return rec;
}

struct SolveConfig {
    std::string mesh_file;
    std::string solution = "linear";
    std::string neumann = "none";
    RhsScheme rhs = RhsScheme::Quad3;
    SolverConfig solver;
    std::string out;
};

/// Nodal solution as CSV: node,x,y,z,u_h.
inline std::string solution_csv(const PolyhedralMesh& mesh, const Eigen::VectorXd& u)
{
    std::ostringstream os;
    os << "node,x,y,z,u_h\n";
    for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
        const Point& p = mesh.nodes[i];
        os << i << ',' << detail::full(p.x()) << ',' << detail::full(p.y()) << ',' << detail::full(p.z()) << ','
           << detail::full(u(Eigen::Index(i))) << '\n';
    }
    return os.str();
}

inline PoissonSolution run_solve(const SolveConfig& cfg, const PolyhedralMesh& mesh, std::ostream& out)
{
    cfg.solver.validate();
    const PdeData pde = make_preset(cfg.solution);
    const BoundaryPredicate neumann = BoundaryPredicate::parse(cfg.neumann);
    PoissonSolution sol = solve_poisson(mesh, pde, neumann, cfg.rhs, cfg.solver);
    out << "N = " << sol.u.size() << " (free " << sol.reduced.free_dofs.size() << ")\n";
    out << "solver = " << to_string(sol.stats.method) << ", iterations = " << sol.stats.iterations
        << ", relative residual = " << detail::sci(sol.stats.residual, 3) << '\n';
    if (pde.has_exact()) {
        out << "ErrL2 = " << detail::sci(l2_error(mesh, sol.u, sol.system.projections, sol.system.elem2dof, pde.exact), 5)
            << ", ErrH1 = "
            << detail::sci(h1_error(mesh, sol.u, sol.system.projections, sol.system.elem2dof, pde.gradient), 5)
            << '\n';
    }
    if (!cfg.out.empty()) write_text(cfg.out, solution_csv(mesh, sol.u));
    return sol;
}

inline PoissonSolution run_solve(const SolveConfig& cfg, std::ostream& out)
{
    const PolyhedralMesh mesh = load_mesh(cfg.mesh_file);
    for (const auto& w : flatness_warnings(mesh)) out << "warning: " << w << '\n';
    return run_solve(cfg, mesh, out);
}

} // namespace vem3
