#pragma once

#include "fracsurf/elliptic.hpp"
#include "fracsurf/sobolev.hpp"

namespace fracsurf {

/// Pointwise orthonormal triple (e1, e2, u) with u = e1 ^ e2.
struct Frame {
    VecField3 e1, e2, u;

    /// Worst deviation from the orthonormal-triple invariants.
    double invariant_defect() const;
};

/// Conformal immersion together with its derived conformal factor and frame.
struct ConformalData {
    VecField3 phi;
    ScalarField lambda; // log |d1 phi|
    Frame frame;
    double conformality_residual = 0.0;
};

struct GaugeResult {
    ScalarField theta; // on the restricted grid, mean zero
    Frame rotated;     // on the restricted grid
    double f_r = 0.0;  // achieved minimal value ||grad theta + g||_{L^2(B_r)}
    double div_residual = 0.0;  // relative normal-equation residual of the minimizer
    double flux_residual = 0.0; // edge rows of the normal equations (weak zero-flux)
    bool converged = false;
};

enum class LiftBranch { lower, upper, indeterminate };

struct LiftDiagnostics {
    std::vector<double> radii;
    std::vector<double> f_values;
    std::vector<double> F1, F2;          // root curves (constant in r)
    std::vector<double> wente_norms;     // ||grad lambda_r||_{L^2(B_r)}
    LiftBranch branch = LiftBranch::indeterminate;
    bool smallness_violated = false;     // discriminant negative for this C
    double C_used = 0.0;
    double epsilon = 0.0;                // [u]_{W^{s,2/s}(B)}
    double smallness_threshold = 0.0;    // sqrt(1/(4C)): largest admissible epsilon
    double final_connection_norm = 0.0;  // ||<e1~, grad e2~>||_{L^2} at the top radius
    double final_ratio = 0.0;            // final_connection_norm / epsilon^2
};

/// Canonical conformal test map: inverse stereographic projection onto the
/// unit sphere; conformal factor e^lambda = 2/(1+|x|^2).
ConformalData stereographic_immersion(const GridPtr& grid);

/// Derive (e1, e2, u, lambda) from an immersion by finite differences.
/// The pair (e1, e2) is Gram-Schmidt orthonormalized so the Frame invariants
/// hold exactly; the measured conformality defect is stored separately.
ConformalData frame_from_immersion(const VecField3& phi);

/// Connection form <e1, grad e2> (two components).
VecField2 connection_form(const Frame& frame);

/// In-plane rotation e~_alpha = P_{alpha beta}(theta) e_beta; u unchanged.
Frame rotate_frame(const Frame& frame, const ScalarField& theta);

/// Coulomb gauge on B(0,r): minimize ||grad theta + <e1, grad e2>||_{L^2(B_r)}.
GaugeResult coulomb_gauge(const Frame& frame, double r, const SolverOptions& opt = {});

/// f(r) for each radius (gauge minimal values).
LiftDiagnostics gauge_curve(const Frame& frame, const std::vector<double>& radii,
                            const SolverOptions& opt = {});

/// Full continuity-argument pipeline: epsilon = [u]_{W^{s,2/s}}, per-radius
/// gauge + Wente solves, root curves for the configured constant C, branch
/// classification with the given relative margin.
LiftDiagnostics lifting_pipeline(const Frame& frame, double s, const std::vector<double>& radii,
                                 double C, double margin = 0.1, const SolverOptions& opt = {});

struct LambdaDecomposition {
    ScalarField lambda_h;      // harmonic part (trace of lambda on the edge ring)
    ScalarField lambda_0;      // lambda - lambda_h, zero on the ring
    double grad_l0_norm = 0.0; // ||grad lambda_0||_{L^2}
    double sup_lambda_h_half = 0.0; // sup over B(0, R/2)
    double int_lambda_h_minus = 0.0;
    double moser_integral = 0.0;    // int e^{2|lambda_0|}
    double jacobian_residual = 0.0; // max |Delta lambda_0 - <perp-grad e1, grad e2>| (interior)
};

LambdaDecomposition lambda_decomposition(const ConformalData& conformal,
                                         const SolverOptions& opt = {});

/// Scalar contraction <perp-grad a, grad b> summed over R^3 components:
/// d1 a . d2 b - d2 a . d1 b.
ScalarField jacobian_contraction(const VecField3& a, const VecField3& b);

} // namespace fracsurf
