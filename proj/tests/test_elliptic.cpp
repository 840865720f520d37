#include "fracsurf/elliptic.hpp"
#include "fracsurf/harness.hpp"

#include <doctest.h>

#include <cmath>

using namespace fracsurf;

TEST_SUITE_BEGIN("elliptic");

TEST_CASE("poisson: zero rhs, closed form, linearity") {
    GridPtr g = make_grid(GridKind::disk, 1.0, 64);
    const SolveReport zero = poisson_dirichlet(ScalarField(g, 0.0));
    CHECK(max_abs(zero.solution) == 0.0);

    // rhs = -4 -> 1 - |x|^2 with O(h) staircase-boundary error
    const SolveReport r = poisson_dirichlet(ScalarField(g, -4.0));
    CHECK(r.converged);
    double worst = 0.0;
    for (std::int32_t c = 0; c < g->masked_count(); ++c) {
        double x, y;
        g->xy(c, x, y);
        worst = std::max(worst, std::abs(r.solution.v[c] - (1.0 - x * x - y * y)));
    }
    CHECK(worst < 2.0 * g->h); // fitted constant ~1.3 over n in {32..128}

    SampleSpec spec;
    spec.seed = 31;
    const ScalarField f1 = gen_scalar(spec, g, 0);
    const ScalarField f2 = gen_scalar(spec, g, 1);
    ScalarField combo(g);
    for (std::size_t i = 0; i < combo.v.size(); ++i)
        combo.v[i] = 2.0 * f1.v[i] - 0.5 * f2.v[i];
    const SolveReport rc = poisson_dirichlet(combo);
    const SolveReport r1 = poisson_dirichlet(f1);
    const SolveReport r2 = poisson_dirichlet(f2);
    double defect = 0.0;
    for (std::size_t i = 0; i < combo.v.size(); ++i)
        defect = std::max(defect, std::abs(rc.solution.v[i] - 2.0 * r1.solution.v[i] +
                                           0.5 * r2.solution.v[i]));
    CHECK(defect < 1e-9);
}

TEST_CASE("poisson: discrete maximum principle") {
    GridPtr g = make_grid(GridKind::disk, 1.0, 48);
    SampleSpec spec;
    spec.seed = 12;
    ScalarField rhs = gen_scalar(spec, g, 0);
    for (double& x : rhs.v) x = -std::abs(x); // rhs <= 0
    const SolveReport r = poisson_dirichlet(rhs);
    for (double x : r.solution.v) CHECK(x > -1e-11);
}

TEST_CASE("wente: constant input, exact antisymmetry of the discrete Jacobian") {
    GridPtr g = make_grid(GridKind::disk, 1.0, 48);
    SampleSpec spec;
    spec.seed = 7;
    const ScalarField a = gen_scalar(spec, g, 0);
    const ScalarField b = gen_scalar(spec, g, 1);
    CHECK(max_abs(wente_solve(ScalarField(g, 3.0), b).solution) == 0.0);

    // a = b: the discrete Jacobian vanishes identically
    CHECK(max_abs(wente_solve(a, a).solution) == 0.0);

    const SolveReport ab = wente_solve(a, b);
    const SolveReport ba = wente_solve(b, a);
    double defect = 0.0;
    for (std::size_t i = 0; i < ab.solution.v.size(); ++i)
        defect = std::max(defect, std::abs(ab.solution.v[i] + ba.solution.v[i]));
    CHECK(defect < 1e-9);
}

TEST_CASE("wente estimate against seminorm product") {
    GridPtr g = make_grid(GridKind::disk, 1.0, 48);
    SampleSpec spec;
    spec.seed = 19;
    spec.count = 20;
    const auto reports = check_wente_constant(spec, {0.75}, g);
    const ConstantReport& rep = reports.front();
    CHECK(rep.max_ratio > 0.0);
    CHECK(rep.max_ratio < 1.0); // empirical Wente constant is well below 1 here
    CHECK(rep.violations == 0);
}

TEST_CASE("neumann gauge: zero input, discrete-gradient cancellation, competitor bound") {
    GridPtr g = make_grid(GridKind::disk, 1.0, 48);
    const NeumannReport z = neumann_poisson(VecField2(g, Vec2{0.0, 0.0}));
    CHECK(z.minimum == 0.0);
    CHECK(max_abs(z.theta) == 0.0);

    // discrete gradient input cancels to solver tolerance
    const ScalarField phi = make_scalar(g, [](double x, double y) {
        return std::sin(1.2 * x) * std::cos(0.8 * y);
    });
    const NeumannReport ng = neumann_poisson(gradient(phi));
    CHECK(ng.converged);
    CHECK(ng.minimum < 1e-8);

    // analytic gradient samples cancel to truncation order
    const VecField2 ga = make_field<Vec2>(g, [](double x, double y) {
        return Vec2{1.2 * std::cos(1.2 * x) * std::cos(0.8 * y),
                    -0.8 * std::sin(1.2 * x) * std::sin(0.8 * y)};
    });
    const NeumannReport na = neumann_poisson(ga);
    CHECK(na.minimum < 20.0 * g->h * g->h);

    // theta = 0 competitor: minimum never exceeds ||g||_{L^2}
    SampleSpec spec;
    spec.seed = 40;
    for (int t = 0; t < 5; ++t) {
        VecField2 rnd(g);
        const ScalarField w1 = gen_scalar(spec, g, 2 * t);
        const ScalarField w2 = gen_scalar(spec, g, 2 * t + 1);
        for (std::size_t i = 0; i < rnd.v.size(); ++i) rnd.v[i] = Vec2{w1.v[i], w2.v[i]};
        const NeumannReport nr = neumann_poisson(rnd);
        CHECK(nr.minimum <= l2_norm(rnd) * (1.0 + 1e-12));
    }
}

TEST_CASE("neumann gauge: Hodge orthogonality for boundary-flat potentials") {
    GridPtr g = make_grid(GridKind::disk, 1.0, 64);
    // phi vanishes to second order on the rim, so perp-grad phi has no
    // tangential boundary flux and cannot be cancelled by any gradient
    const ScalarField phi = make_scalar(g, [](double x, double y) {
        const double q = 1.0 - x * x - y * y;
        return q * q * (1.0 + 0.5 * x + 0.3 * y);
    });
    const VecField2 pg = perp_gradient(phi);
    const NeumannReport nr = neumann_poisson(pg);
    CHECK(nr.minimum == doctest::Approx(l2_norm(pg)).epsilon(0.02));
}

TEST_CASE("harmonic extension: constant trace, discrete-harmonic polynomial, mean value") {
    GridPtr g = make_grid(GridKind::disk, 1.0, 128);
    const SolveReport c = harmonic_extension(g, [](double, double) { return 2.5; });
    for (double x : c.solution.v) CHECK(x == doctest::Approx(2.5).epsilon(1e-6));

    // x^2 - y^2 is in the 5-point kernel: reproduced to solver accuracy
    const SolveReport h = harmonic_extension(g, [](double x, double y) { return x * x - y * y; });
    double worst = 0.0;
    for (std::int32_t cc = 0; cc < g->masked_count(); ++cc) {
        double x, y;
        g->xy(cc, x, y);
        worst = std::max(worst, std::abs(h.solution.v[cc] - (x * x - y * y)));
    }
    CHECK(worst < 1e-8);
    CHECK(harmonic_residual(h.solution) < 1e-9);

    // smooth trace outside the 5-point kernel: O(h) reproduction
    const SolveReport ec =
        harmonic_extension(g, [](double x, double y) { return std::exp(x) * std::cos(y); });
    double eworst = 0.0;
    for (std::int32_t cc = 0; cc < g->masked_count(); ++cc) {
        double x, y;
        g->xy(cc, x, y);
        eworst = std::max(eworst, std::abs(ec.solution.v[cc] - std::exp(x) * std::cos(y)));
    }
    CHECK(eworst < 2.0 * g->h);

    // smooth non-polynomial trace: center value matches the trace average
    const SolveReport e =
        harmonic_extension(g, [](double x, double y) { return std::exp(x) * std::cos(y); });
    double avg = 0.0;
    for (std::int32_t cc : g->edge_ring()) avg += e.solution.v[cc];
    avg /= static_cast<double>(g->edge_ring().size());
    const std::int32_t center = g->at(g->n / 2, g->n / 2);
    CHECK(e.solution.v[center] == doctest::Approx(avg).epsilon(0.01));
}

TEST_CASE("harmonic sup bound: constant fields pin the constants") {
    GridPtr g = make_grid(GridKind::disk, 1.0, 64);
    const double area = integrate(ScalarField(g, 1.0)); // discrete pi

    const SupBoundReport plus = harmonic_sup_bound_check(ScalarField(g, 1.0), 0.5);
    CHECK(plus.sup_K == 1.0);
    CHECK(plus.int_plus == doctest::Approx(area));
    CHECK(plus.int_minus == 0.0);
    CHECK(plus.c1_at_zero_c2 == doctest::Approx(1.0 / area)); // C1 >= 1/pi

    // f = -1: sup = -1 <= -C2 * pi requires C2 <= 1/pi
    const SupBoundReport minus = harmonic_sup_bound_check(ScalarField(g, -1.0), 0.5);
    CHECK(minus.sup_K == -1.0);
    CHECK(minus.int_minus == doctest::Approx(area));
    const double c2_max = 1.0 / area;
    CHECK(minus.sup_K <= 0.0 * plus.int_plus - (c2_max - 1e-9) * minus.int_minus + 1e-12);
    CHECK(minus.sup_K > -(c2_max + 1e-3) * minus.int_minus - 1e-12);

    CHECK_THROWS(harmonic_sup_bound_check(
        make_scalar(g, [](double x, double y) { return x * x + y * y; }), 0.5));
}

TEST_CASE("harmonic sup bound harness: fitted constants, zero violations") {
    const ConstantReport rep = check_harmonic_bound(77, 60, 48, 0.5);
    CHECK(rep.violations == 0);
    CHECK(rep.fitted.at("C1") > 0.0);
    CHECK(rep.fitted.at("C2") > 0.0);
}

TEST_SUITE_END();
