#include "fracsurf/frames.hpp"

#include <cmath>
#include <stdexcept>

namespace fracsurf {

double Frame::invariant_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < u.v.size(); ++i) {
        const Vec3 a = e1.v[i], b = e2.v[i], n = u.v[i];
        worst = std::max(worst, std::abs(a.norm() - 1.0));
        worst = std::max(worst, std::abs(b.norm() - 1.0));
        worst = std::max(worst, std::abs(n.norm() - 1.0));
        worst = std::max(worst, std::abs(a.dot(b)));
        worst = std::max(worst, std::abs(a.dot(n)));
        worst = std::max(worst, std::abs(b.dot(n)));
        worst = std::max(worst, (a.cross(b) - n).norm());
    }
    return worst;
}

ConformalData stereographic_immersion(const GridPtr& grid) {
    if (grid->kind != GridKind::disk)
        throw std::invalid_argument("stereographic_immersion: disk grid required");
    VecField3 phi = make_field<Vec3>(grid, [](double x, double y) {
        const double r2 = x * x + y * y;
        const double d = 1.0 + r2;
        return Vec3{2.0 * x / d, 2.0 * y / d, (r2 - 1.0) / d};
    });
    return frame_from_immersion(phi);
}

ConformalData frame_from_immersion(const VecField3& phi) {
    ConformalData out;
    out.phi = phi;
    const Jacobian3 jac = gradient(phi);
    const std::size_t N = phi.v.size();
    out.lambda = ScalarField(phi.grid);
    out.frame.e1 = VecField3(phi.grid);
    out.frame.e2 = VecField3(phi.grid);
    out.frame.u = VecField3(phi.grid);
    double residual = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const Vec3 d1 = jac.d1.v[i], d2 = jac.d2.v[i];
        const double m1 = d1.norm(), m2 = d2.norm();
        if (m1 < 1e-12 || m2 < 1e-12)
            throw std::invalid_argument("frame_from_immersion: degenerate node |dPhi| < 1e-12");
        out.lambda.v[i] = std::log(m1);
        const Vec3 e1 = d1 * (1.0 / m1);
        // Gram-Schmidt so the frame invariants hold exactly; the conformality
        // defect is recorded, not silently absorbed
        Vec3 e2 = d2 - e1 * e1.dot(d2);
        const double m2p = e2.norm();
        if (m2p < 1e-12)
            throw std::invalid_argument("frame_from_immersion: tangent plane collapsed");
        e2 = e2 * (1.0 / m2p);
        out.frame.e1.v[i] = e1;
        out.frame.e2.v[i] = e2;
        out.frame.u.v[i] = e1.cross(e2);
        residual = std::max(residual, std::abs(m1 - m2) / m1 + std::abs(d1.dot(d2)) / (m1 * m1));
    }
    out.conformality_residual = residual;
    return out;
}

VecField2 connection_form(const Frame& frame) {
    const Jacobian3 jac = gradient(frame.e2);
    VecField2 out(frame.e1.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i) {
        out.v[i].x = frame.e1.v[i].dot(jac.d1.v[i]);
        out.v[i].y = frame.e1.v[i].dot(jac.d2.v[i]);
    }
    return out;
}

Frame rotate_frame(const Frame& frame, const ScalarField& theta) {
    Frame out;
    out.e1 = VecField3(frame.e1.grid);
    out.e2 = VecField3(frame.e1.grid);
    out.u = frame.u;
    for (std::size_t i = 0; i < theta.v.size(); ++i) {
        const double c = std::cos(theta.v[i]), s = std::sin(theta.v[i]);
        out.e1.v[i] = frame.e1.v[i] * c - frame.e2.v[i] * s;
        out.e2.v[i] = frame.e1.v[i] * s + frame.e2.v[i] * c;
    }
    return out;
}

namespace {

Frame restrict_frame(const Frame& frame, double r) {
    return Frame{restrict_field(frame.e1, r), restrict_field(frame.e2, r),
                 restrict_field(frame.u, r)};
}

} // namespace

GaugeResult coulomb_gauge(const Frame& frame, double r, const SolverOptions& opt) {
    const Grid& g = *frame.e1.grid;
    if (!(r > 0.0) || r > g.R) throw std::invalid_argument("coulomb_gauge: radius out of range");
    const VecField2 conn = connection_form(frame);
    const NeumannReport nr = neumann_poisson(conn, r < g.mask_radius ? r : 0.0, opt);
    GaugeResult out;
    out.theta = restrict_field(nr.theta, r);
    // recenter on the restricted mask
    const double m = mean(out.theta);
    for (double& x : out.theta.v) x -= m;
    out.rotated = rotate_frame(restrict_frame(frame, r), out.theta);
    out.f_r = nr.minimum;
    out.div_residual = nr.residual;
    out.flux_residual = nr.boundary_residual;
    out.converged = nr.converged;
    return out;
}

LiftDiagnostics gauge_curve(const Frame& frame, const std::vector<double>& radii,
                            const SolverOptions& opt) {
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1])
            throw std::invalid_argument("gauge_curve: radii must be strictly increasing");
    LiftDiagnostics d;
    d.radii = radii;
    for (double r : radii) {
        const GaugeResult gr = coulomb_gauge(frame, r, opt);
        if (!gr.converged) throw std::runtime_error("gauge_curve: gauge solve did not converge");
        d.f_values.push_back(gr.f_r);
    }
    return d;
}

ScalarField jacobian_contraction(const VecField3& a, const VecField3& b) {
    const Jacobian3 ja = gradient(a);
    const Jacobian3 jb = gradient(b);
    ScalarField out(a.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i)
        out.v[i] = ja.d1.v[i].dot(jb.d2.v[i]) - ja.d2.v[i].dot(jb.d1.v[i]);
    return out;
}

LiftDiagnostics lifting_pipeline(const Frame& frame, double s, const std::vector<double>& radii,
                                 double C, double margin, const SolverOptions& opt) {
    if (!(s > 0.5) || !(s < 1.0))
        throw std::invalid_argument("lifting_pipeline: s must lie in (1/2,1)");
    if (!(C > 0.0)) throw std::invalid_argument("lifting_pipeline: C must be positive");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1])
            throw std::invalid_argument("lifting_pipeline: radii must be strictly increasing");
    LiftDiagnostics d;
    d.C_used = C;
    d.radii = radii;
    d.epsilon = gagliardo_seminorm(frame.u, s, 2.0 / s).value;
    d.smallness_threshold = std::sqrt(1.0 / (4.0 * C));

    const double disc = 1.0 / (4.0 * C * C) - d.epsilon * d.epsilon / C;
    if (disc < 0.0) {
        d.smallness_violated = true;
        d.branch = LiftBranch::indeterminate;
    }
    const double f1 = d.smallness_violated ? 0.0 : 1.0 / (2.0 * C) - std::sqrt(disc);
    const double f2 = d.smallness_violated ? 0.0 : 1.0 / (2.0 * C) + std::sqrt(disc);

    bool all_lower = true, any_upper = false;
    for (double r : radii) {
        const GaugeResult gr = coulomb_gauge(frame, r, opt);
        if (!gr.converged)
            throw std::runtime_error("lifting_pipeline: gauge solve did not converge");
        d.f_values.push_back(gr.f_r);
        d.F1.push_back(f1);
        d.F2.push_back(f2);

        // Wente problem for the rotated connection potential on B_r
        const ScalarField rhs = jacobian_contraction(gr.rotated.e1, gr.rotated.e2);
        const SolveReport sr = poisson_dirichlet(rhs, opt);
        d.wente_norms.push_back(l2_norm(gradient(sr.solution)));

        if (!(gr.f_r <= f1 * (1.0 + margin) + 1e-12)) all_lower = false;
        if (!d.smallness_violated && gr.f_r >= f2) any_upper = true;
    }
    if (!d.smallness_violated)
        d.branch = all_lower ? LiftBranch::lower
                             : (any_upper ? LiftBranch::upper : LiftBranch::indeterminate);

    if (!radii.empty()) {
        d.final_connection_norm = d.f_values.back();
        d.final_ratio =
            d.epsilon > 1e-14 ? d.final_connection_norm / (d.epsilon * d.epsilon) : 0.0;
    }
    return d;
}

LambdaDecomposition lambda_decomposition(const ConformalData& conformal,
                                         const SolverOptions& opt) {
    const GridPtr grid = conformal.lambda.grid;
    LambdaDecomposition out;
    const SolveReport hr = harmonic_extension(grid, ring_trace_of(conformal.lambda), opt);
    if (!hr.converged)
        throw std::runtime_error("lambda_decomposition: harmonic solve did not converge");
    out.lambda_h = hr.solution;
    out.lambda_0 = ScalarField(grid);
    for (std::size_t i = 0; i < out.lambda_0.v.size(); ++i)
        out.lambda_0.v[i] = conformal.lambda.v[i] - out.lambda_h.v[i];
    out.grad_l0_norm = l2_norm(gradient(out.lambda_0));

    const Grid& g = *grid;
    const double half = 0.5 * g.mask_radius;
    bool have = false;
    for (std::int32_t c = 0; c < g.masked_count(); ++c) {
        double px, py;
        g.xy(c, px, py);
        const double dx = px - g.cx, dy = py - g.cy;
        if (dx * dx + dy * dy < half * half) {
            if (!have || out.lambda_h.v[c] > out.sup_lambda_h_half)
                out.sup_lambda_h_half = out.lambda_h.v[c];
            have = true;
        }
    }
    ScalarField lm(grid);
    ScalarField ex(grid);
    for (std::size_t i = 0; i < lm.v.size(); ++i) {
        lm.v[i] = std::max(-out.lambda_h.v[i], 0.0);
        ex.v[i] = std::exp(2.0 * std::abs(out.lambda_0.v[i]));
    }
    out.int_lambda_h_minus = integrate(lm);
    out.moser_integral = integrate(ex);

    // identity check: Delta lambda_0 = -(d1 e1 . d2 e2 - d2 e1 . d1 e2)
    // (curl of the conformal connection relation); measured where composed
    // stencils are central
    const ScalarField rhs = jacobian_contraction(conformal.frame.e1, conformal.frame.e2);
    const double ih2 = 1.0 / (g.h * g.h);
    double worst = 0.0;
    for (std::int32_t c = 0; c < g.masked_count(); ++c) {
        if (!g.interior_box(c, 2)) continue;
        auto [i, j] = g.ij(c);
        const double lap = (out.lambda_0.v[g.at(i + 1, j)] + out.lambda_0.v[g.at(i - 1, j)] +
                            out.lambda_0.v[g.at(i, j + 1)] + out.lambda_0.v[g.at(i, j - 1)] -
                            4.0 * out.lambda_0.v[c]) * ih2;
        worst = std::max(worst, std::abs(lap + rhs.v[c]));
    }
    out.jacobian_residual = worst;
    return out;
}

} // namespace fracsurf
