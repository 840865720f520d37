#include "fracsurf/sobolev.hpp"
#include "fracsurf/summation.hpp"

#include <cmath>
#include <stdexcept>

namespace fracsurf {

namespace {

/// |dx|^{-(2+sp)} tabulated over lattice offsets; pair distances only depend
/// on (di, dj), which keeps pow() out of the O(N^2) loop.
struct KernelTable {
    int n;
    std::vector<double> k; // (2n-1)^2

    KernelTable(const Grid& g, double exponent) : n(g.n), k((2 * g.n - 1) * (2 * g.n - 1), 0.0) {
        const int m = 2 * n - 1;
        for (int dj = -(n - 1); dj <= n - 1; ++dj) {
            for (int di = -(n - 1); di <= n - 1; ++di) {
                if (di == 0 && dj == 0) continue;
                const double d2 = (di * di + dj * dj) * g.h * g.h;
                k[(dj + n - 1) * m + (di + n - 1)] = std::pow(d2, -0.5 * exponent);
            }
        }
    }

    double operator()(int di, int dj) const {
        return k[(dj + n - 1) * (2 * n - 1) + (di + n - 1)];
    }
};

/// Sum of term(a,b) * kernel(b-a) over ordered distinct masked pairs, as
/// row-parallel partials reduced pairwise. term must be symmetric.
template <class Term>
double pair_double_sum(const Grid& g, double exponent, Term&& term) {
    const std::int32_t N = g.masked_count();
    const KernelTable kt(g, exponent);
    std::vector<double> partial(N, 0.0);
    std::vector<std::pair<int, int>> coords(N);
    for (std::int32_t c = 0; c < N; ++c) coords[c] = g.ij(c);
    parallel_for(N, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t a = lo; a < hi; ++a) {
            const auto [ia, ja] = coords[a];
            double acc = 0.0;
            for (std::int32_t b = static_cast<std::int32_t>(a) + 1; b < N; ++b) {
                const auto [ib, jb] = coords[b];
                acc += term(static_cast<std::int32_t>(a), b) * kt(ib - ia, jb - ja);
            }
            partial[a] = acc;
        }
    });
    return 2.0 * pairwise_sum(partial);
}

std::int64_t ordered_pairs(const Grid& g) {
    const std::int64_t N = g.masked_count();
    return N * (N - 1);
}

EnergyReport base_report(const Grid& g, double s, double p) {
    EnergyReport r;
    r.s = s;
    r.p = p;
    r.grid_kind = g.kind;
    r.grid_R = g.R;
    r.mask_radius = g.mask_radius;
    r.grid_n = g.n;
    r.pair_count = ordered_pairs(g);
    return r;
}

void check_sp(double s, double p) {
    if (!(s > 0.0) || s > 1.0) throw std::invalid_argument("seminorm order s must lie in (0,1]");
    if (!(p > 1.0)) throw std::invalid_argument("seminorm exponent p must exceed 1");
}

double grad_lp(const VecField2& grad, double p, const Grid& g) {
    std::vector<double> t(grad.v.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::pow(grad.v[i].norm(), p);
    return std::pow(g.h * g.h * pairwise_sum(t), 1.0 / p);
}

} // namespace

EnergyReport gagliardo_seminorm(const ScalarField& f, double s, double p) {
    check_sp(s, p);
    const Grid& g = *f.grid;
    EnergyReport r = base_report(g, s, p);
    if (s == 1.0) {
        r.value = grad_lp(gradient(f), p, g);
        r.diagonal_excluded = false;
        r.pair_count = 0;
        return r;
    }
    const double h4 = g.h * g.h * g.h * g.h;
    const double sum = pair_double_sum(g, 2.0 + s * p, [&](std::int32_t a, std::int32_t b) {
        return std::pow(std::abs(f.v[a] - f.v[b]), p);
    });
    r.value = std::pow(sum * h4, 1.0 / p);
    return r;
}

EnergyReport gagliardo_seminorm(const VecField3& f, double s, double p) {
    check_sp(s, p);
    const Grid& g = *f.grid;
    EnergyReport r = base_report(g, s, p);
    if (s == 1.0) {
        const Jacobian3 jac = gradient(f);
        std::vector<double> t(f.v.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double m2 = jac.d1.v[i].dot(jac.d1.v[i]) + jac.d2.v[i].dot(jac.d2.v[i]);
            t[i] = std::pow(m2, 0.5 * p);
        }
        r.value = std::pow(g.h * g.h * pairwise_sum(t), 1.0 / p);
        r.diagonal_excluded = false;
        r.pair_count = 0;
        return r;
    }
    const double h4 = g.h * g.h * g.h * g.h;
    const double sum = pair_double_sum(g, 2.0 + s * p, [&](std::int32_t a, std::int32_t b) {
        return std::pow((f.v[a] - f.v[b]).norm(), p);
    });
    r.value = std::pow(sum * h4, 1.0 / p);
    return r;
}

EnergyReport frac_normal_energy(const VecField3& u, double s, double p) {
    if (!(s > 0.5) || !(s < 1.0))
        throw std::invalid_argument("frac_normal_energy: s must lie in (1/2,1)");
    if (p == 0.0) p = 2.0 / s;
    if (!(p > 1.0)) throw std::invalid_argument("frac_normal_energy: p must exceed 1");
    for (const Vec3& v : u.v)
        if (std::abs(v.norm() - 1.0) > 1e-8)
            throw std::invalid_argument("frac_normal_energy: field is not unit length");
    const Grid& g = *u.grid;
    EnergyReport r = base_report(g, s, p);
    const double h4 = g.h * g.h * g.h * g.h;
    r.value = h4 * pair_double_sum(g, 2.0 + s * p, [&](std::int32_t a, std::int32_t b) {
        return std::pow(u.v[a].cross(u.v[b]).norm(), p);
    });
    return r;
}

namespace {

GridPtr extension_grid(const Grid& g, double lambda) {
    if (g.kind != GridKind::disk) throw std::invalid_argument("inversion_extension: disk grid required");
    if (std::abs(g.R - 1.0) > 1e-12)
        throw std::invalid_argument("inversion_extension: unit disk required");
    if (!(lambda > 1.0) || lambda > 8.0)
        throw std::invalid_argument("inversion_extension: lambda must lie in (1,8]");
    // keep the spacing of the input lattice
    const int n_out = static_cast<int>(std::lround(lambda * g.n));
    return make_grid(GridKind::disk, lambda, n_out);
}

template <class T>
Field<T> invert_extend(const Field<T>& u, double lambda) {
    GridPtr out_grid = extension_grid(*u.grid, lambda);
    Field<T> out(out_grid);
    for (std::int32_t c = 0; c < out_grid->masked_count(); ++c) {
        double px, py;
        out_grid->xy(c, px, py);
        const double r2 = px * px + py * py;
        if (r2 > 1.0) {
            out.v[c] = sample_bilinear(u, px / r2, py / r2);
        } else {
            out.v[c] = sample_bilinear(u, px, py);
        }
    }
    return out;
}

} // namespace

ScalarField inversion_extension(const ScalarField& u, double lambda) {
    return invert_extend(u, lambda);
}

VecField3 inversion_extension(const VecField3& u, double lambda) {
    return invert_extend(u, lambda);
}

namespace {

/// int over the unit square cell [-1/2,1/2]^2 of |t|^{-sigma} (exact inner
/// radial integral, angular quadrature outside).
double cell_singular_mass(double sigma) {
    const double pi2 = 6.283185307179586476925286766559;
    const int aq = 1024;
    double acc = 0.0;
    for (int a = 0; a < aq; ++a) {
        const double ang = (a + 0.5) * pi2 / aq;
        const double c = std::abs(std::cos(ang)), s = std::abs(std::sin(ang));
        const double rho = 0.5 / std::max(c, s); // ray-to-cell-boundary distance
        acc += std::pow(rho, 2.0 - sigma) / (2.0 - sigma);
    }
    return acc * pi2 / aq;
}

} // namespace

BbmReport bbm_limit(const VecField3& u, const std::vector<double>& s_list) {
    if (s_list.size() < 4)
        throw std::invalid_argument("bbm_limit: need at least 4 sample orders");
    for (double s : s_list)
        if (!(s > 0.5) || !(s < 1.0))
            throw std::invalid_argument("bbm_limit: orders must lie in (1/2,1)");
    BbmReport rep;
    rep.s_values = s_list;

    // W_{1,2}(u) = ||u ^ grad u||_{L^2}^2, also reused for the diagonal-cell
    // quadrature below
    const Jacobian3 jac = gradient(u);
    std::vector<double> t(u.v.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Vec3 w1 = u.v[i].cross(jac.d1.v[i]);
        const Vec3 w2 = u.v[i].cross(jac.d2.v[i]);
        t[i] = w1.dot(w1) + w2.dot(w2);
    }
    const Grid& g = *u.grid;
    const double grad_energy = g.h * g.h * pairwise_sum(t);
    rep.w12 = grad_energy;

    for (double s : s_list) {
        // W_{s,2}: wedge kernel with p = 2 regardless of the 2/s convention
        const double h4 = g.h * g.h * g.h * g.h;
        const double sum = pair_double_sum(g, 2.0 + 2.0 * s, [&](std::int32_t a, std::int32_t b) {
            const Vec3 w = u.v[a].cross(u.v[b]);
            return w.dot(w);
        });
        // the excluded diagonal cell holds mass that survives the (1-s)
        // weighting as s -> 1; restore it from the local gradient
        const double diag = 0.5 * grad_energy * std::pow(g.h, 2.0 - 2.0 * s) *
                            cell_singular_mass(2.0 * s);
        rep.weighted.push_back((1.0 - s) * (sum * h4 + diag));
    }

    // least-squares line y = a + b (1-s); the extrapolated limit is a
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(s_list.size());
    for (std::size_t i = 0; i < s_list.size(); ++i) {
        const double x = 1.0 - s_list[i];
        sx += x;
        sy += rep.weighted[i];
        sxx += x * x;
        sxy += x * rep.weighted[i];
    }
    const double denom = m * sxx - sx * sx;
    const double slope = (m * sxy - sx * sy) / denom;
    rep.extrapolated = (sy - slope * sx) / m;
    rep.fitted_constant = rep.w12 > 0.0 ? rep.extrapolated / rep.w12 : 0.0;
    return rep;
}

} // namespace fracsurf
