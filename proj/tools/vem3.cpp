// Command-line front end: convergence studies, single solves and mesh generation.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "vem3/vem3.hpp"

namespace {

struct SolverOptions {
    std::string method = "auto";
    long threshold = 2000;
    double tol = 1e-10;
    long max_iter = 0;
    std::string precond = "jacobi";

    void add_to(CLI::App& app)
    {
        app.add_option("--solver", method, "auto | direct | cg")->capture_default_str();
        app.add_option("--direct-threshold", threshold, "auto uses the direct solver below this size")
            ->capture_default_str();
        app.add_option("--cg-tol", tol, "relative residual tolerance for cg")->capture_default_str();
        app.add_option("--cg-maxit", max_iter, "cg iteration cap (0: 10 sqrt(N) + 100)")->capture_default_str();
        app.add_option("--precond", precond, "jacobi | none")->capture_default_str();
    }

    [[nodiscard]] vem3::SolverConfig config() const
    {
        vem3::SolverConfig c;
        c.method = vem3::parse_solver_method(method);
        c.size_threshold = threshold;
        c.tolerance = tol;
        c.max_iterations = max_iter;
        c.preconditioner = vem3::parse_preconditioner(precond);
        return c;
    }
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lowest-order virtual element solver for the 3-D Poisson equation"};
    app.require_subcommand(1);

    // study
    auto* study = app.add_subcommand("study", "multi-level convergence study");
    std::string gen = "hex";
    std::vector<int> levels;
    std::vector<std::string> meshes;
    std::string study_solution = "trig", study_neumann = "x==0", study_rhs = "quad3";
    std::string out_csv, out_svg;
    SolverOptions study_solver;
    study->add_option("--gen", gen, "hex | tet")->capture_default_str();
    study->add_option("--levels", levels, "subdivisions per axis, e.g. 2,4,8")->delimiter(',');
    study->add_option("--mesh", meshes, "JSON mesh files, one per level (instead of --gen)")->delimiter(',');
    study->add_option("--solution", study_solution, "zero | linear | quadratic | trig | affine:c0,cx,cy,cz")
        ->capture_default_str();
    study->add_option("--neumann", study_neumann, "Neumann faces, e.g. \"x==0|y==1\" or none")->capture_default_str();
    study->add_option("--rhs", study_rhs, "onepoint | quad3")->capture_default_str();
    study->add_option("--out-csv", out_csv, "write the error table as CSV");
    study->add_option("--out-svg", out_svg, "write a log-log convergence plot");
    study_solver.add_to(*study);

    // solve
    auto* solve = app.add_subcommand("solve", "single solve on a JSON mesh");
    std::string mesh_path, solve_solution = "linear", solve_neumann = "none", solve_rhs = "quad3", out_path;
    SolverOptions solve_solver;
    solve->add_option("--mesh", mesh_path, "JSON mesh file")->required();
    solve->add_option("--solution", solve_solution, "zero | linear | quadratic | trig | affine:c0,cx,cy,cz")
        ->capture_default_str();
    solve->add_option("--neumann", solve_neumann, "Neumann faces, e.g. \"x==0\" or none")->capture_default_str();
    solve->add_option("--rhs", solve_rhs, "onepoint | quad3")->capture_default_str();
    solve->add_option("--out", out_path, "write nodal values as CSV (node,x,y,z,u_h)");
    solve_solver.add_to(*solve);

    // mesh-gen
    auto* mesh_gen = app.add_subcommand("mesh-gen", "write a structured unit-cube mesh as JSON");
    std::string kind = "hex", mesh_out;
    int n = 1;
    mesh_gen->add_option("--kind", kind, "hex | tet")->capture_default_str();
    mesh_gen->add_option("--n", n, "subdivisions per axis")->capture_default_str();
    mesh_gen->add_option("--out", mesh_out, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*study) {
            vem3::StudyConfig cfg;
            cfg.generator = vem3::parse_generator(gen);
            cfg.levels = levels;
            cfg.mesh_files = meshes;
            cfg.solution = study_solution;
            cfg.neumann = study_neumann;
            cfg.rhs = vem3::parse_rhs_scheme(study_rhs);
            cfg.solver = study_solver.config();
            cfg.out_csv = out_csv;
            cfg.out_svg = out_svg;
            vem3::run_study(cfg, std::cout);
        } else if (*solve) {
            vem3::SolveConfig cfg;
            cfg.mesh_file = mesh_path;
            cfg.solution = solve_solution;
            cfg.neumann = solve_neumann;
            cfg.rhs = vem3::parse_rhs_scheme(solve_rhs);
            cfg.solver = solve_solver.config();
            cfg.out = out_path;
            vem3::run_solve(cfg, std::cout);
        } else if (*mesh_gen) {
            const auto mesh = vem3::generate_mesh(vem3::parse_generator(kind), n);
            vem3::save_mesh(mesh, mesh_out);
            std::cout << "wrote " << mesh_out << ": " << mesh.num_nodes() << " nodes, " << mesh.num_elements()
                      << " elements\n";
        }
    } catch (const vem3::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
