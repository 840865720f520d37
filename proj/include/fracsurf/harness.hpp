#pragma once

#include "fracsurf/frames.hpp"
#include "fracsurf/rng.hpp"
#include "fracsurf/spectral.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fracsurf {

/// Deterministic sampling configuration: identical spec => identical bits.
struct SampleSpec {
    std::uint64_t seed = 1;
    double smoothness = 3.0; // spectral decay exponent, must exceed 1
    double amplitude = 0.1;
    int count = 50; // trials
};

/// One empirical inequality: per-trial LHS/RHS ratios, the fitted constant,
/// and the violation bookkeeping.
struct ConstantReport {
    std::string inequality_id;
    std::vector<double> ratios;
    double max_ratio = 0.0;
    long violations = 0;        // RHS ~ 0 with LHS > tol, or ratio above fitted C
    long skipped_small_denominator = 0;
    std::map<std::string, double> fitted; // named fitted constants
    std::map<std::string, double> extra;  // auxiliary observables
    std::vector<std::string> notes;

    void finish(); // fills max_ratio from ratios
};

/// Random Fourier series with coefficient decay |k|^{-smoothness}; the field
/// standard deviation equals amplitude. stream selects the trial.
ScalarField gen_scalar(const SampleSpec& spec, const GridPtr& grid, std::uint64_t stream);

/// Normalized perturbation of the constant vector (0,0,1).
VecField3 gen_unit_field(const SampleSpec& spec, const GridPtr& grid, std::uint64_t stream);

/// Constant frame rotated nodewise by two smooth random angle fields.
Frame gen_frame(const SampleSpec& spec, const GridPtr& grid, std::uint64_t stream);

/// Prop: smallness of the fractional normal-curvature quantity makes
/// [u]_{W^{s,2/s}} and W_{s,2/s}^{s/2} two-sidedly comparable. Also checks
/// the trivial-direction estimate pointwise and the Lagrange split on random
/// node pairs.
ConstantReport check_uwu_equivalence(const SampleSpec& spec, double s, const GridPtr& grid,
                                     std::int64_t lagrange_pairs = 1000000);

/// Orthonormal-system estimate: [e1]+[e2] vs ||<e1,grad e2>|| + [u] + product
/// term; small-[u] trials also report the simplified bound.
ConstantReport check_frame_estimate(const SampleSpec& spec, double s, const GridPtr& grid);

/// Wente constant ||grad lambda_0|| / ([a][b]) per s, plus a frequency sweep
/// up to Nyquist/4.
std::vector<ConstantReport> check_wente_constant(const SampleSpec& spec,
                                                 const std::vector<double>& s_list,
                                                 const GridPtr& grid);

/// Appendix kernel lemmas, pointwise randomized with a calibration /
/// validation split over [-2,2]^2 triples.
std::vector<ConstantReport> check_kernel_lemmas(std::uint64_t seed, std::int64_t trials);

/// Appendix B operator bounds on a coarse grid (n <= 32): Riesz-difference
/// kernels, commutator operator, and the signed-kernel identity.
std::vector<ConstantReport> check_operator_bounds(const SampleSpec& spec, double s, double t,
                                                  int grid_n = 16);

/// Dyadic block bounds for T(h_j) with both geometric-decay estimates and the
/// Triebel-sum consistency check on a tiny grid.
std::vector<ConstantReport> check_dyadic_blocks(const SampleSpec& spec, double s, double t);

/// Harmonic sup bound with fitted (C1, C2), calibration/validation split.
ConstantReport check_harmonic_bound(std::uint64_t seed, int trials, int grid_n, double K_radius);

struct CollapseStep {
    double scale = 0.0;
    double w_s = 0.0;          // frac normal energy (scale invariant)
    double grad_phi_l2 = 0.0;  // ||grad Phi_k||_{L^2}
    double lambda_shift_defect = 0.0; // max |lambda_k - lambda_0 + k log 2|
    double int_lambda_h_minus = 0.0;
};

struct CollapseReport {
    std::vector<CollapseStep> steps;
    double w_max_rel_drift = 0.0;
    double grad_scaling_defect = 0.0; // worst |grad ratio - c_k/c_0| / (c_k/c_0)
    double slope = 0.0;               // growth of int (lambda_h)_- per halving, tail fit
    double slope_expected = 0.0;      // pi_discrete * log 2
};

/// Shrinking immersions Phi_k = c_k * Phi on the stereographic patch,
/// c_list decreasing positive scales (c_0 need not be 1).
CollapseReport collapse_experiment(const std::vector<double>& c_list, int grid_n,
                                   double s = 0.75);

/// Dyadic convenience wrapper: c_k = 2^{-k}, k = 0..k_max.
CollapseReport collapse_experiment(int k_max, int grid_n, double s = 0.75);

struct LiftConstants {
    double C_direct = 0.0;   // max of f, ||grad lambda_r|| over (f^2 + eps^2)
    double C_composed = 0.0; // 2 * C_wente * C_frame^2
    double c_wente = 0.0;
    double c_frame = 0.0;
};

/// Empirical constant for the continuity-argument polynomial, fitted on
/// seeded calibration trials.
LiftConstants calibrate_lift_constant(const SampleSpec& spec, double s,
                                      const std::vector<double>& radii, const GridPtr& grid);

} // namespace fracsurf
