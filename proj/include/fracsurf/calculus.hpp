#pragma once

#include "fracsurf/fields.hpp"

namespace fracsurf {

/// Central differences at interior nodes, second-order one-sided stencils
/// where a neighbor is unmasked (first-order fallback on very thin masks).
VecField2 gradient(const ScalarField& f);

/// (-d/dy, d/dx) with the same stencil family.
VecField2 perp_gradient(const ScalarField& f);

/// Component-wise gradient of a vector field: column alpha is d_alpha.
struct Jacobian3 {
    VecField3 d1; // d/dx of (x,y,z) components
    VecField3 d2; // d/dy
};
Jacobian3 gradient(const VecField3& f);

ScalarField divergence(const VecField2& v);

/// Midpoint rule: h^2 * sum over masked nodes, pairwise-tree reduced.
double integrate(const ScalarField& f);

double l2_norm(const ScalarField& f);
double l2_norm(const VecField2& f);
double lp_norm(const ScalarField& f, double p);
double max_abs(const ScalarField& f);

double mean(const ScalarField& f);

} // namespace fracsurf
