#pragma once

#include "fracsurf/fields.hpp"

#include <array>
#include <complex>
#include <vector>

namespace fracsurf {

/// Real samples on a periodic square [-side/2, side/2)^2, cell-centered,
/// n a power of two.
struct PeriodicField {
    double side = 0.0;
    int n = 0;
    std::vector<double> v; // row-major, n*n

    PeriodicField() = default;
    PeriodicField(double side_, int n_);

    double spacing() const { return side / n; }
    double x(int i) const { return -0.5 * side + (i + 0.5) * spacing(); }
    double& at(int i, int j) { return v[static_cast<std::size_t>(j) * n + i]; }
    double at(int i, int j) const { return v[static_cast<std::size_t>(j) * n + i]; }

    double l2() const;
    double lp(double p) const;
    double mean() const;
};

/// Zero-extension periodization of a compactly supported grid field onto a
/// periodic square of side 2*pad*R (nodes of an aligned lattice coincide
/// with grid nodes).
PeriodicField periodize(const ScalarField& f, double pad);

/// Seminorm-preserving embedding: inversion extension of a unit-disk field,
/// multiplied by a smooth cutoff (1 on B(0,1), 0 outside B(0,1.5)), laid out
/// on a periodic square of side 2*pad. Requires pad >= 2.
PeriodicField embed(const ScalarField& f, double pad);
std::array<PeriodicField, 3> embed(const VecField3& f, double pad);

/// Fourier multiplier |xi|^s (fractional Laplacian), zero mode zeroed.
PeriodicField frac_laplacian(const PeriodicField& f, double s);

/// Fourier multiplier |xi|^{-s} (Riesz potential), zero mode zeroed.
PeriodicField riesz_potential(const PeriodicField& f, double s);

/// Vectorial Riesz transform, multiplier -i xi_alpha / |xi|.
std::array<PeriodicField, 2> riesz_transform(const PeriodicField& f);

/// Representable dyadic range [j_min, j_max] for this transform size.
std::pair<int, int> lp_level_range(const PeriodicField& f);

/// Littlewood-Paley band j: multiplier psi(|xi| / 2^j), psi supported in
/// [1/2, 2] and telescoping to a partition of unity. See README for the
/// concrete bump profile.
PeriodicField lp_project(const PeriodicField& f, int j);

struct TriebelReport {
    double value = 0.0;
    double tail = 0.0; // relative energy outside the decomposition range
    bool tail_warning = false;
    int j_min = 0, j_max = 0;
};

/// Homogeneous Triebel seminorm (sum_j 2^{jsp} ||f_j||_p^p)^{1/p} over the
/// representable dyadic range. s may be negative. Optional explicit range
/// for tail experiments.
TriebelReport triebel_seminorm(const PeriodicField& f, double s, double p,
                               int j_min_override = 1, int j_max_override = 0);

/// Direct singular-integral fractional Laplacian on a grid field
/// (compact support in the grid interior assumed): the Gamma-normalized
/// kernel sum with a curvature correction for the diagonal cell and an
/// analytic far-field tail. Cross-validates the multiplier operator.
ScalarField singular_integral_frac_laplacian(const ScalarField& f, double s);

/// Normalizing constant c_{2,s} of the singular-integral representation.
double frac_laplacian_constant(double s);

/// Riesz potential kernel normalization gamma(2,t): I_t has kernel
/// |x|^{t-2} / gamma(2,t).
double riesz_kernel_constant(double t);

/// In-place 2D FFT helpers (power-of-two sizes).
void fft2(std::vector<std::complex<double>>& a, int n, bool inverse);

/// Smooth LP cutoff profile phi: 1 on r <= 1, 0 on r >= 2 (see README).
double lp_phi(double r);

} // namespace fracsurf
