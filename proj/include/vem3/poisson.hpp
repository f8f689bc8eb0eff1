#pragma once

#include <vector>

#include <Eigen/Dense>

#include "vem3/boundary.hpp"
#include "vem3/element_assembly.hpp"
#include "vem3/face_projection.hpp"
#include "vem3/mesh.hpp"
#include "vem3/pde.hpp"
#include "vem3/solver.hpp"

namespace vem3 {

/// Everything produced by one solve, kept for error evaluation and inspection.
struct PoissonSolution {
    MeshTopology topology;
    BoundaryStruct boundary;
    std::vector<FaceProjection> face_table;
    LinearSystem system;
    ReducedSystem reduced;
    SolveResult stats;
    Eigen::VectorXd u;
};

inline PoissonSolution solve_poisson(const PolyhedralMesh& mesh, const PdeData& pde, const BoundaryPredicate& neumann,
                                     RhsScheme scheme = RhsScheme::Quad3, const SolverConfig& solver = {})
{
    PoissonSolution sol;
    sol.topology = build_topology(mesh);
    sol.boundary = set_boundary(mesh, sol.topology, neumann);
    sol.face_table = build_face_projection_table(mesh, sol.topology);
    sol.system = assemble(mesh, sol.topology, sol.face_table, pde, scheme);
    apply_neumann(sol.system, mesh, sol.boundary, sol.face_table, pde);
    sol.reduced = apply_dirichlet(sol.system, mesh, sol.boundary, pde);
    sol.stats = solve(sol.reduced.matrix, sol.reduced.rhs, solver);
    sol.u = sol.reduced.expand(sol.stats.x);
    return sol;
}

} // namespace vem3
