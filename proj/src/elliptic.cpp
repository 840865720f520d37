#include "fracsurf/elliptic.hpp"
#include "fracsurf/summation.hpp"

#include <cmath>
#include <stdexcept>

namespace fracsurf {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> t(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) t[i] = a[i] * b[i];
    return pairwise_sum(t);
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

int default_iters(const Grid& g, const SolverOptions& opt) {
    return opt.max_iter > 0 ? opt.max_iter : 20 * g.n * g.n;
}

/// Unpreconditioned CG on an SPD (or positive semidefinite with b in range)
/// operator. Returns (iterations, converged); x holds the solution.
template <class Apply>
std::pair<int, bool> conjugate_gradient(const Apply& A, const std::vector<double>& b,
                                        std::vector<double>& x, double tol, int max_iter) {
    const std::size_t N = b.size();
    x.assign(N, 0.0);
    std::vector<double> r = b, p = b, Ap(N);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) return {0, true};
    double rr = dot(r, r);
    int it = 0;
    for (; it < max_iter; ++it) {
        if (std::sqrt(rr) <= tol * bnorm) break;
        A(p, Ap);
        const double alpha = rr / dot(p, Ap);
        for (std::size_t i = 0; i < N; ++i) x[i] += alpha * p[i];
        for (std::size_t i = 0; i < N; ++i) r[i] -= alpha * Ap[i];
        const double rr_new = dot(r, r);
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < N; ++i) p[i] = r[i] + beta * p[i];
    }
    // recompute the true residual; the recursive one can drift
    A(x, Ap);
    for (std::size_t i = 0; i < N; ++i) Ap[i] -= b[i];
    return {it, norm2(Ap) <= 2.0 * tol * bnorm};
}

/// Negative 5-point Laplacian with ghost-zero outside the mask (SPD).
struct LaplaceGhostZero {
    const Grid& g;
    void operator()(const std::vector<double>& u, std::vector<double>& out) const {
        const double ih2 = 1.0 / (g.h * g.h);
        for (std::int32_t c = 0; c < g.masked_count(); ++c) {
            auto [i, j] = g.ij(c);
            double acc = 4.0 * u[c];
            const std::int32_t e = g.at(i + 1, j), w = g.at(i - 1, j);
            const std::int32_t n_ = g.at(i, j + 1), s_ = g.at(i, j - 1);
            if (e >= 0) acc -= u[e];
            if (w >= 0) acc -= u[w];
            if (n_ >= 0) acc -= u[n_];
            if (s_ >= 0) acc -= u[s_];
            out[c] = acc * ih2;
        }
    }
};

double equation_max_residual(const Grid& g, const std::vector<double>& x,
                             const std::vector<double>& b) {
    LaplaceGhostZero A{g};
    std::vector<double> Ax(x.size());
    A(x, Ax);
    double m = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        m = std::max(m, std::abs(Ax[i] - b[i]));
        scale = std::max(scale, std::abs(b[i]));
    }
    return scale > 0.0 ? m / scale : m;
}

} // namespace

SolveReport poisson_dirichlet(const ScalarField& rhs, const SolverOptions& opt) {
    const Grid& g = *rhs.grid;
    SolveReport rep;
    rep.boundary = BoundaryKind::dirichlet;
    rep.solution = ScalarField(rhs.grid, 0.0);
    // A x = -rhs with A = -Laplacian
    std::vector<double> b(rhs.v.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = -rhs.v[i];
    LaplaceGhostZero A{g};
    auto [it, ok] = conjugate_gradient(A, b, rep.solution.v, opt.tol, default_iters(g, opt));
    rep.iterations = it;
    rep.converged = ok;
    rep.residual = equation_max_residual(g, rep.solution.v, b);
    return rep;
}

SolveReport wente_solve(const ScalarField& a, const ScalarField& b, const SolverOptions& opt) {
    const VecField2 pga = perp_gradient(a);
    const VecField2 gb = gradient(b);
    ScalarField rhs(a.grid);
    for (std::size_t i = 0; i < rhs.v.size(); ++i) rhs.v[i] = pga.v[i].dot(gb.v[i]);
    return poisson_dirichlet(rhs, opt);
}

namespace {

/// Row description of the discrete gradient: out[c] = sum w_k u[node_k].
struct GradRow {
    std::int32_t node[3];
    double w[3];
    int count = 0;
};

GradRow grad_row(const Grid& g, std::int32_t c, int di, int dj) {
    GradRow r;
    auto [i, j] = g.ij(c);
    const double h = g.h;
    const std::int32_t p1 = g.at(i + di, j + dj);
    const std::int32_t m1 = g.at(i - di, j - dj);
    auto add = [&](std::int32_t node, double w) {
        r.node[r.count] = node;
        r.w[r.count] = w;
        ++r.count;
    };
    if (p1 >= 0 && m1 >= 0) {
        add(p1, 0.5 / h);
        add(m1, -0.5 / h);
        return r;
    }
    const std::int32_t p2 = g.at(i + 2 * di, j + 2 * dj);
    if (p1 >= 0 && p2 >= 0) {
        add(c, -1.5 / h);
        add(p1, 2.0 / h);
        add(p2, -0.5 / h);
        return r;
    }
    const std::int32_t m2 = g.at(i - 2 * di, j - 2 * dj);
    if (m1 >= 0 && m2 >= 0) {
        add(c, 1.5 / h);
        add(m1, -2.0 / h);
        add(m2, 0.5 / h);
        return r;
    }
    if (p1 >= 0) {
        add(p1, 1.0 / h);
        add(c, -1.0 / h);
        return r;
    }
    if (m1 >= 0) {
        add(c, 1.0 / h);
        add(m1, -1.0 / h);
        return r;
    }
    return r;
}

struct GaugeOperator {
    const Grid& g;
    std::vector<GradRow> rows_x, rows_y;
    std::vector<std::uint8_t> active; // energy nodes (|x-c| < sub_radius)
    std::size_t active_count = 0;

    GaugeOperator(const Grid& grid, double sub_radius) : g(grid) {
        const std::int32_t N = g.masked_count();
        rows_x.resize(N);
        rows_y.resize(N);
        active.assign(N, 1);
        for (std::int32_t c = 0; c < N; ++c) {
            rows_x[c] = grad_row(g, c, 1, 0);
            rows_y[c] = grad_row(g, c, 0, 1);
            if (sub_radius > 0.0) {
                double px, py;
                g.xy(c, px, py);
                const double dx = px - g.cx, dy = py - g.cy;
                active[c] = (dx * dx + dy * dy < sub_radius * sub_radius) ? 1 : 0;
            }
        }
        for (std::int32_t c = 0; c < N; ++c) active_count += active[c];
    }

    /// (Gu)_c for active c, zero elsewhere.
    void apply_grad(const std::vector<double>& u, std::vector<double>& gx,
                    std::vector<double>& gy) const {
        const std::int32_t N = g.masked_count();
        for (std::int32_t c = 0; c < N; ++c) {
            double ax = 0.0, ay = 0.0;
            if (active[c]) {
                const GradRow& rx = rows_x[c];
                for (int k = 0; k < rx.count; ++k) ax += rx.w[k] * u[rx.node[k]];
                const GradRow& ry = rows_y[c];
                for (int k = 0; k < ry.count; ++k) ay += ry.w[k] * u[ry.node[k]];
            }
            gx[c] = ax;
            gy[c] = ay;
        }
    }

    /// G^T applied to an active-node vector pair.
    void apply_grad_t(const std::vector<double>& gx, const std::vector<double>& gy,
                      std::vector<double>& out) const {
        const std::int32_t N = g.masked_count();
        std::fill(out.begin(), out.end(), 0.0);
        for (std::int32_t c = 0; c < N; ++c) {
            if (!active[c]) continue;
            const GradRow& rx = rows_x[c];
            for (int k = 0; k < rx.count; ++k) out[rx.node[k]] += rx.w[k] * gx[c];
            const GradRow& ry = rows_y[c];
            for (int k = 0; k < ry.count; ++k) out[ry.node[k]] += ry.w[k] * gy[c];
        }
    }

    void remove_mean(std::vector<double>& u) const {
        std::vector<double> act;
        act.reserve(active_count);
        for (std::size_t i = 0; i < u.size(); ++i)
            if (active[i]) act.push_back(u[i]);
        const double m = pairwise_sum(act) / static_cast<double>(active_count);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] -= m;
    }
};

} // namespace

NeumannReport neumann_poisson(const VecField2& gfield, double sub_radius,
                              const SolverOptions& opt) {
    const Grid& g = *gfield.grid;
    const std::int32_t N = g.masked_count();
    GaugeOperator op(g, sub_radius);
    if (op.active_count == 0) throw std::invalid_argument("neumann_poisson: empty energy set");

    // b = -G^T g restricted to active nodes
    std::vector<double> gx(N, 0.0), gy(N, 0.0), b(N, 0.0);
    for (std::int32_t c = 0; c < N; ++c) {
        if (op.active[c]) {
            gx[c] = gfield.v[c].x;
            gy[c] = gfield.v[c].y;
        }
    }
    op.apply_grad_t(gx, gy, b);
    for (double& x : b) x = -x;

    std::vector<double> tx(N), ty(N);
    auto A = [&](const std::vector<double>& u, std::vector<double>& out) {
        op.apply_grad(u, tx, ty);
        op.apply_grad_t(tx, ty, out);
    };

    NeumannReport rep;
    rep.theta = ScalarField(gfield.grid, 0.0);
    auto [it, ok] = conjugate_gradient(A, b, rep.theta.v, opt.tol, default_iters(g, opt));
    rep.iterations = it;
    rep.converged = ok;
    op.remove_mean(rep.theta.v);

    // achieved value and true normal-equation residual
    op.apply_grad(rep.theta.v, tx, ty);
    std::vector<double> sq;
    sq.reserve(op.active_count);
    for (std::int32_t c = 0; c < N; ++c) {
        if (!op.active[c]) continue;
        const double rx = tx[c] + gfield.v[c].x;
        const double ry = ty[c] + gfield.v[c].y;
        sq.push_back(rx * rx + ry * ry);
    }
    rep.minimum = std::sqrt(g.h * g.h * pairwise_sum(sq));

    std::vector<double> res(N);
    for (std::int32_t c = 0; c < N; ++c) {
        tx[c] += op.active[c] ? gfield.v[c].x : 0.0;
        ty[c] += op.active[c] ? gfield.v[c].y : 0.0;
    }
    op.apply_grad_t(tx, ty, res);
    const double bnorm = norm2(b);
    rep.residual = bnorm > 0.0 ? norm2(res) / bnorm : norm2(res);

    // edge rows of the energy region carry the natural boundary condition
    double ring = 0.0;
    for (std::int32_t c = 0; c < N; ++c) {
        if (!op.active[c]) continue;
        auto [i, j] = g.ij(c);
        bool edge = false;
        for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
            const std::int32_t nb = g.at(i + di, j + dj);
            if (nb < 0 || !op.active[nb]) edge = true;
        }
        if (edge) ring = std::max(ring, std::abs(res[c]));
    }
    double binf = 0.0;
    for (double x : b) binf = std::max(binf, std::abs(x));
    rep.boundary_residual = binf > 0.0 ? ring / binf : ring;
    return rep;
}

namespace {

SolveReport harmonic_core(const GridPtr& grid, const std::vector<double>& ring_values,
                          const SolverOptions& opt) {
    const Grid& g = *grid;
    const auto& ring = g.edge_ring();
    if (ring_values.size() != ring.size())
        throw std::invalid_argument("harmonic_extension: trace length mismatch");
    const std::int32_t N = g.masked_count();
    std::vector<std::int8_t> fixed(N, 0);
    std::vector<double> value(N, 0.0);
    for (std::size_t k = 0; k < ring.size(); ++k) {
        fixed[ring[k]] = 1;
        value[ring[k]] = ring_values[k];
    }

    const double ih2 = 1.0 / (g.h * g.h);
    auto A = [&](const std::vector<double>& u, std::vector<double>& out) {
        for (std::int32_t c = 0; c < N; ++c) {
            if (fixed[c]) {
                out[c] = u[c];
                continue;
            }
            auto [i, j] = g.ij(c);
            double acc = 4.0 * u[c];
            for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
                const std::int32_t nb = g.at(i + di, j + dj);
                if (nb >= 0 && !fixed[nb]) acc -= u[nb];
            }
            out[c] = acc * ih2;
        }
    };
    std::vector<double> b(N, 0.0);
    for (std::int32_t c = 0; c < N; ++c) {
        if (fixed[c]) continue;
        auto [i, j] = g.ij(c);
        double acc = 0.0;
        for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
            const std::int32_t nb = g.at(i + di, j + dj);
            if (nb >= 0 && fixed[nb]) acc += value[nb];
        }
        b[c] = acc * ih2;
    }

    SolveReport rep;
    rep.boundary = BoundaryKind::dirichlet;
    rep.solution = ScalarField(grid, 0.0);
    auto [it, ok] = conjugate_gradient(A, b, rep.solution.v, opt.tol, default_iters(g, opt));
    rep.iterations = it;
    rep.converged = ok;
    for (std::int32_t c = 0; c < N; ++c)
        if (fixed[c]) rep.solution.v[c] = value[c];
    rep.residual = harmonic_residual(rep.solution);
    return rep;
}

} // namespace

SolveReport harmonic_extension(const GridPtr& grid, const std::vector<double>& ring_trace,
                               const SolverOptions& opt) {
    return harmonic_core(grid, ring_trace, opt);
}

SolveReport harmonic_extension(const GridPtr& grid,
                               const std::function<double(double, double)>& trace,
                               const SolverOptions& opt) {
    const auto& ring = grid->edge_ring();
    std::vector<double> vals(ring.size());
    for (std::size_t k = 0; k < ring.size(); ++k) {
        double px, py;
        grid->xy(ring[k], px, py);
        vals[k] = trace(px, py);
    }
    return harmonic_core(grid, vals, opt);
}

std::vector<double> ring_trace_of(const ScalarField& f) {
    const auto& ring = f.grid->edge_ring();
    std::vector<double> vals(ring.size());
    for (std::size_t k = 0; k < ring.size(); ++k) vals[k] = f.v[ring[k]];
    return vals;
}

double harmonic_residual(const ScalarField& f) {
    const Grid& g = *f.grid;
    double m = 0.0, scale = 0.0;
    for (double x : f.v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0.0;
    const double ih2 = 1.0 / (g.h * g.h);
    for (std::int32_t c = 0; c < g.masked_count(); ++c) {
        if (!g.interior4(c)) continue;
        auto [i, j] = g.ij(c);
        const double lap = (f.v[g.at(i + 1, j)] + f.v[g.at(i - 1, j)] + f.v[g.at(i, j + 1)] +
                            f.v[g.at(i, j - 1)] - 4.0 * f.v[c]) * ih2;
        m = std::max(m, std::abs(lap));
    }
    return m / (scale * ih2);
}

SupBoundReport harmonic_sup_bound_check(const ScalarField& f, double K_radius,
                                        double harmonic_tol) {
    const Grid& g = *f.grid;
    if (g.kind != GridKind::disk)
        throw std::invalid_argument("harmonic_sup_bound_check: disk grid required");
    SupBoundReport rep;
    rep.harmonic_residual = harmonic_residual(f);
    if (rep.harmonic_residual > harmonic_tol)
        throw std::invalid_argument("harmonic_sup_bound_check: input is not discrete-harmonic");

    std::vector<double> plus(f.v.size()), minus(f.v.size());
    bool have_sup = false;
    for (std::int32_t c = 0; c < g.masked_count(); ++c) {
        plus[c] = std::max(f.v[c], 0.0);
        minus[c] = std::max(-f.v[c], 0.0);
        double px, py;
        g.xy(c, px, py);
        const double dx = px - g.cx, dy = py - g.cy;
        if (dx * dx + dy * dy < K_radius * K_radius) {
            if (!have_sup || f.v[c] > rep.sup_K) rep.sup_K = f.v[c];
            have_sup = true;
        }
    }
    if (!have_sup) throw std::invalid_argument("harmonic_sup_bound_check: empty K");
    const double h2 = g.h * g.h;
    rep.int_plus = h2 * pairwise_sum(plus);
    rep.int_minus = h2 * pairwise_sum(minus);
    if (rep.int_plus > 0.0) rep.c1_at_zero_c2 = std::max(rep.sup_K, 0.0) / rep.int_plus;
    return rep;
}

} // namespace fracsurf
