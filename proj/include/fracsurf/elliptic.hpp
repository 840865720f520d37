#pragma once

#include "fracsurf/calculus.hpp"

#include <functional>

namespace fracsurf {

enum class BoundaryKind { dirichlet, neumann_mean_zero };

struct SolverOptions {
    double tol = 1e-10; // relative residual target
    int max_iter = 0;   // 0 -> 20 * n^2
};

struct SolveReport {
    ScalarField solution;
    double residual = 0.0; // discrete-equation max norm, relative
    int iterations = 0;
    BoundaryKind boundary = BoundaryKind::dirichlet;
    bool converged = false;
};

/// 5-point Laplacian, zero Dirichlet imposed through ghost values at the mask
/// boundary; conjugate gradients to residual <= tol * ||rhs||.
SolveReport poisson_dirichlet(const ScalarField& rhs, const SolverOptions& opt = {});

/// Wente equation: RHS = <perp-grad a, grad b> pointwise, then the Dirichlet
/// solve above.
SolveReport wente_solve(const ScalarField& a, const ScalarField& b, const SolverOptions& opt = {});

struct NeumannReport {
    ScalarField theta; // mean zero over the energy nodes
    double minimum = 0.0;  // achieved ||grad theta + g||_{L^2(B_r)}
    double residual = 0.0; // relative normal-equation residual
    /// Normal-equation residual restricted to the energy-region edge rows:
    /// the discrete weak form of the zero-flux boundary condition.
    double boundary_residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Least-squares gauge problem: minimize ||grad theta + g||_{L^2(B_r)} over
/// theta with mean zero. The gradient operator is the one attached to g's
/// grid and the energy is summed over nodes with |x - center| < sub_radius,
/// so minima over nested radii are nested (monotone) by construction.
/// sub_radius <= 0 means the whole mask.
NeumannReport neumann_poisson(const VecField2& g, double sub_radius = 0.0,
                              const SolverOptions& opt = {});

/// Dirichlet harmonic extension: fix the trace on the mask-edge ring, solve
/// the 5-point Laplace equation at the remaining masked nodes.
SolveReport harmonic_extension(const GridPtr& grid, const std::vector<double>& ring_trace,
                               const SolverOptions& opt = {});
SolveReport harmonic_extension(const GridPtr& grid,
                               const std::function<double(double, double)>& trace,
                               const SolverOptions& opt = {});

/// Extract the values of f on the edge ring (the discrete trace).
std::vector<double> ring_trace_of(const ScalarField& f);

struct SupBoundReport {
    double sup_K = 0.0;        // sup over B(0, K_radius)
    double int_plus = 0.0;     // integral of f_+
    double int_minus = 0.0;    // integral of f_-
    double harmonic_residual = 0.0;
    /// Smallest C1 for the inequality at C2 = 0 (only defined when
    /// int_plus > 0); feasibility for general (C1,C2) is
    /// sup_K <= C1*int_plus - C2*int_minus.
    double c1_at_zero_c2 = 0.0;
};

/// Data for the harmonic sup bound sup_K f <= C1 int f_+ - C2 int f_-.
/// Rejects inputs whose interior 5-point Laplacian exceeds harmonic_tol
/// (relative to the field scale).
SupBoundReport harmonic_sup_bound_check(const ScalarField& f, double K_radius,
                                        double harmonic_tol = 1e-7);

/// Interior 5-point Laplacian residual, max norm over interior4 nodes,
/// normalized by max|f|/h^2.
double harmonic_residual(const ScalarField& f);

} // namespace fracsurf
