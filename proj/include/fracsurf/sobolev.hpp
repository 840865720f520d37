#pragma once

#include "fracsurf/calculus.hpp"

#include <vector>

namespace fracsurf {

/// Value of a seminorm/energy together with the quadrature metadata needed to
/// reproduce it.
struct EnergyReport {
    double value = 0.0;
    double s = 0.0;
    double p = 0.0;
    GridKind grid_kind = GridKind::disk;
    double grid_R = 0.0;
    double mask_radius = 0.0;
    int grid_n = 0;
    bool diagonal_excluded = true;
    std::int64_t pair_count = 0; // ordered pairs entering the double sum
};

/// Gagliardo seminorm [f]_{W^{s,p}}. s = 1 dispatches to ||grad f||_{L^p}.
EnergyReport gagliardo_seminorm(const ScalarField& f, double s, double p);
EnergyReport gagliardo_seminorm(const VecField3& f, double s, double p);

/// Fractional normal-curvature energy: double sum of
/// |u(x) ^ u(y)|^p / |x-y|^{2+sp} over distinct masked pairs (the raw double
/// integral, no 1/p power). Requires |u| = 1 nodewise and s in (1/2, 1).
/// p defaults to 2/s when passed as 0.
EnergyReport frac_normal_energy(const VecField3& u, double s, double p = 0.0);

/// Extension by sphere inversion: v(x) = u(x) inside the unit disk and
/// u(x/|x|^2) outside, sampled on a disk grid of radius lambda with matching
/// spacing. Inner values are fetched by bilinear interpolation.
ScalarField inversion_extension(const ScalarField& u, double lambda);
VecField3 inversion_extension(const VecField3& u, double lambda);

struct BbmReport {
    std::vector<double> s_values;
    std::vector<double> weighted; // (1-s) * W_{s,2}(u)
    double w12 = 0.0;             // ||u ^ grad u||_{L^2}^2
    double extrapolated = 0.0;    // linear-in-(1-s) fit evaluated at s = 1
    double fitted_constant = 0.0; // extrapolated / w12
};

/// Limit diagnostics for (1-s) W_{s,2}(u) as s -> 1.
BbmReport bbm_limit(const VecField3& u, const std::vector<double>& s_list);

} // namespace fracsurf
