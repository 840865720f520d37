#include "fracsurf/harness.hpp"
#include "fracsurf/summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracsurf {

namespace {

constexpr double pi = std::numbers::pi;

struct Pt {
    double x, y;
};

double dist(Pt a, Pt b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Max-ratio fit on a calibration half, violation count on the validation
/// half at margin * fitted constant.
struct SplitFit {
    double c_cal = 0.0;
    double c_fit = 0.0;
    long violations = 0;
    long total_val = 0;

    void calibrate(const std::vector<double>& cal, double margin) {
        for (double r : cal) c_cal = std::max(c_cal, r);
        c_fit = c_cal * margin;
    }
    void validate(const std::vector<double>& val) {
        total_val = static_cast<long>(val.size());
        for (double r : val)
            if (r > c_fit) ++violations;
    }
};

} // namespace

std::vector<ConstantReport> check_kernel_lemmas(std::uint64_t seed, std::int64_t trials) {
    if (trials < 10) throw std::invalid_argument("check_kernel_lemmas: too few trials");
    const double t_lattice[3] = {0.25, 0.5, 0.75};

    std::vector<double> xyz1_cal, xyz1_val, kxyz3_cal, kxyz3_val;
    xyz1_cal.reserve(trials / 2 * 9);
    kxyz3_cal.reserve(trials / 2 * 3);

    Rng rng = derive_rng(seed, 0x6B65726EULL);
    for (std::int64_t t = 0; t < trials; ++t) {
        Pt x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        Pt y{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        Pt z{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        const double dxz = dist(x, z), dyz = dist(y, z), dxy = dist(x, y);
        if (dxz < 1e-6 || dyz < 1e-6 || dxy < 1e-6) continue;
        const bool cal = (t % 2 == 0);

        // la:xyz1 (n = 2): | |x-z|^{-1} - |y-z|^{-1} | against the two-term
        // majorant, one ratio per (t1, t2) lattice point
        const double lhs1 = std::abs(1.0 / dxz - 1.0 / dyz);
        for (double t1 : t_lattice) {
            for (double t2 : t_lattice) {
                const double term1 = std::pow(dxy, 1.0 - t1) *
                                     std::abs(std::pow(dxz, t1 - 2.0) - std::pow(dyz, t1 - 2.0));
                const double term2 = std::pow(dxy, 1.0 - t2) *
                                     std::min(std::pow(dxz, t2 - 2.0), std::pow(dyz, t2 - 2.0));
                const double rhs = term1 + term2;
                if (rhs < 1e-300) continue;
                (cal ? xyz1_cal : xyz1_val).push_back(lhs1 / rhs);
            }
        }

        // la:kxyz3 with m = n = 2
        const double vx1 = (x.x - z.x) / (dxz * dxz) - (y.x - z.x) / (dyz * dyz);
        const double vx2 = (x.y - z.y) / (dxz * dxz) - (y.y - z.y) / (dyz * dyz);
        const double lhs3 = std::hypot(vx1, vx2);
        for (double tt : t_lattice) {
            const double rhs = std::abs(std::pow(dxz, -1.0 - tt) - std::pow(dyz, -1.0 - tt)) +
                               std::pow(dxy, tt) * std::min(1.0 / dxz, 1.0 / dyz);
            if (rhs < 1e-300) continue;
            (cal ? kxyz3_cal : kxyz3_val).push_back(lhs3 / rhs);
        }
    }

    std::vector<ConstantReport> out;
    const double margin = 1.2;
    auto make = [&](const char* id, std::vector<double>& cal, std::vector<double>& val) {
        ConstantReport rep;
        rep.inequality_id = id;
        SplitFit fit;
        fit.calibrate(cal, margin);
        fit.validate(val);
        rep.violations = fit.violations;
        rep.fitted["C"] = fit.c_fit;
        rep.extra["calibration_max"] = fit.c_cal;
        rep.extra["calibration_count"] = static_cast<double>(cal.size());
        rep.extra["validation_count"] = static_cast<double>(fit.total_val);
        rep.max_ratio = fit.c_cal;
        out.push_back(std::move(rep));
    };
    make("kernel-xyz1", xyz1_cal, xyz1_val);
    make("kernel-kxyz3", kxyz3_cal, kxyz3_val);
    return out;
}

namespace {

/// |offset|^{exponent} over square-lattice offsets, diagonal zeroed.
struct OffsetTable {
    int n;
    std::vector<double> k;

    OffsetTable(int n_, double h, double exponent) : n(n_) {
        const int m = 2 * n - 1;
        k.assign(static_cast<std::size_t>(m) * m, 0.0);
        for (int dj = -(n - 1); dj <= n - 1; ++dj)
            for (int di = -(n - 1); di <= n - 1; ++di) {
                if (di == 0 && dj == 0) continue;
                k[static_cast<std::size_t>(dj + n - 1) * m + (di + n - 1)] =
                    std::pow(std::hypot(di * h, dj * h), exponent);
            }
    }
    double at(int di, int dj) const {
        return k[static_cast<std::size_t>(dj + n - 1) * (2 * n - 1) + (di + n - 1)];
    }
};

std::pair<std::int32_t, std::int32_t> sample_pair(Rng& rng, std::int32_t N) {
    std::int32_t a = static_cast<std::int32_t>(rng.next_u64() % N);
    std::int32_t b = static_cast<std::int32_t>(rng.next_u64() % N);
    while (b == a) b = static_cast<std::int32_t>(rng.next_u64() % N);
    return {a, b};
}

/// Monte-Carlo estimate of (int int |T(x,y)|^q / |x-y|^{2+sq})^{1/q} over the
/// grid square, with the relative standard error of the power mean.
template <class TEval>
std::pair<double, double> mc_double_norm(const Grid& g, double s, double q, int samples,
                                         Rng& rng, TEval&& T) {
    const std::int32_t N = g.masked_count();
    const double area = g.h * g.h * static_cast<double>(N);
    std::vector<double> vals(samples);
    for (int m = 0; m < samples; ++m) {
        const auto [a, b] = sample_pair(rng, N);
        double ax, ay, bx, by;
        g.xy(a, ax, ay);
        g.xy(b, bx, by);
        const double d = std::hypot(ax - bx, ay - by);
        vals[m] = std::pow(std::abs(T(a, b)), q) * std::pow(d, -(2.0 + s * q));
    }
    const double mean = pairwise_sum(vals) / samples;
    std::vector<double> sq(samples);
    for (int m = 0; m < samples; ++m) sq[m] = (vals[m] - mean) * (vals[m] - mean);
    const double var = pairwise_sum(sq) / std::max(1, samples - 1);
    const double integral = mean * area * area;
    const double se_rel = mean > 0.0 ? std::sqrt(var / samples) / mean : 0.0;
    return {std::pow(std::max(integral, 0.0), 1.0 / q), se_rel / q};
}

} // namespace

std::vector<ConstantReport> check_operator_bounds(const SampleSpec& spec, double s, double t,
                                                  int grid_n) {
    if (grid_n > 32)
        throw std::invalid_argument("check_operator_bounds: grid exceeds the cost cap (32)");
    if (!(0.0 < s && s < t && t < 1.0))
        throw std::invalid_argument("check_operator_bounds: need 0 < s < t < 1");
    GridPtr grid = make_grid(GridKind::square, 1.0, grid_n);
    const Grid& g = *grid;
    const std::int32_t N = g.masked_count();
    const double h2 = g.h * g.h;
    const int mc_samples = 20000;
    const int n = g.n;

    std::vector<std::pair<int, int>> ij(N);
    for (std::int32_t c = 0; c < N; ++c) ij[c] = g.ij(c);

    const OffsetTable kt_t(n, g.h, t - 2.0);     // |.|^{t-2}
    const OffsetTable kt_inv2(n, g.h, -2.0);     // |.|^{-2}
    const OffsetTable kt_last(n, g.h, -1.5);     // |.|^{1/2-n}
    const OffsetTable kt_min(n, g.h, -1.0 - t);  // |.|^{1-t-n}

    std::vector<ConstantReport> out;
    std::vector<double> zbuf(N);

    // Prop pottriebelemb: T(h)(x,y) = int | |x-z|^{t-2} - |y-z|^{t-2} | h(z) dz
    {
        ConstantReport rep;
        rep.inequality_id = "pottriebelemb";
        const double p = 2.0;
        const double q = 2.0 / (2.0 / p - (t - s));
        double worst_se = 0.0;
        for (int trial = 0; trial < spec.count; ++trial) {
            const ScalarField h = gen_scalar(spec, grid, 100 + trial);
            auto T = [&](std::int32_t a, std::int32_t b) {
                const auto [ax, ay] = ij[a];
                const auto [bx, by] = ij[b];
                for (std::int32_t z = 0; z < N; ++z) {
                    const auto [zx, zy] = ij[z];
                    zbuf[z] = (z == a || z == b)
                                  ? 0.0
                                  : std::abs(kt_t.at(ax - zx, ay - zy) -
                                             kt_t.at(bx - zx, by - zy)) * h.v[z];
                }
                return h2 * pairwise_sum(zbuf);
            };
            Rng rng = derive_rng(spec.seed, 0x706F7454ULL + trial);
            const auto [lhs, se] = mc_double_norm(g, s, q, mc_samples, rng, T);
            worst_se = std::max(worst_se, se);
            const double rhs = lp_norm(h, p);
            if (rhs < 1e-14) {
                ++rep.skipped_small_denominator;
                continue;
            }
            rep.ratios.push_back(lhs / rhs);
        }
        rep.finish();
        rep.fitted["C"] = rep.max_ratio;
        rep.extra["q"] = q;
        rep.extra["mc_relative_se"] = worst_se;
        out.push_back(std::move(rep));
    }

    // signed-kernel identity: dropping the absolute value reduces T to a
    // Riesz-potential difference
    {
        ConstantReport rep;
        rep.inequality_id = "signed-kernel-identity";
        double worst = 0.0;
        for (int trial = 0; trial < 4; ++trial) {
            const ScalarField h = gen_scalar(spec, grid, 200 + trial);
            std::vector<double> pot(N, 0.0);
            for (std::int32_t a = 0; a < N; ++a) {
                const auto [ax, ay] = ij[a];
                for (std::int32_t z = 0; z < N; ++z) {
                    const auto [zx, zy] = ij[z];
                    zbuf[z] = z == a ? 0.0 : kt_t.at(ax - zx, ay - zy) * h.v[z];
                }
                pot[a] = h2 * pairwise_sum(zbuf);
            }
            double scale = 0.0;
            for (std::int32_t c = 0; c < N; ++c) scale = std::max(scale, std::abs(pot[c]));
            Rng rng = derive_rng(spec.seed, 0x7369676EULL + trial);
            for (int m = 0; m < 2000; ++m) {
                const auto [a, b] = sample_pair(rng, N);
                const auto [ax, ay] = ij[a];
                const auto [bx, by] = ij[b];
                for (std::int32_t z = 0; z < N; ++z) {
                    const auto [zx, zy] = ij[z];
                    zbuf[z] = (z == a || z == b)
                                  ? 0.0
                                  : (kt_t.at(ax - zx, ay - zy) - kt_t.at(bx - zx, by - zy)) *
                                        h.v[z];
                }
                const double signed_T = h2 * pairwise_sum(zbuf);
                // correct for the differing diagonal exclusions
                const double corr = h2 * kt_t.at(ax - bx, ay - by) * (h.v[b] - h.v[a]);
                worst = std::max(worst, std::abs(signed_T + corr - (pot[a] - pot[b])) / scale);
            }
        }
        rep.max_ratio = worst;
        rep.violations = worst > 1e-10 ? 1 : 0;
        rep.extra["gamma_2t"] = riesz_kernel_constant(t);
        rep.notes.push_back("identity defect relative to max |I_t h|");
        out.push_back(std::move(rep));
    }

    // Prop sob1: vector kernel k1 against ||f||_{L^2}
    {
        ConstantReport rep;
        rep.inequality_id = "sob1";
        const double q = 2.0 / s;
        double worst_se = 0.0;
        std::vector<double> zbuf2(N);
        for (int trial = 0; trial < spec.count; ++trial) {
            const ScalarField f = gen_scalar(spec, grid, 300 + trial);
            auto T = [&](std::int32_t a, std::int32_t b) {
                const auto [ax, ay] = ij[a];
                const auto [bx, by] = ij[b];
                for (std::int32_t z = 0; z < N; ++z) {
                    if (z == a || z == b) {
                        zbuf[z] = zbuf2[z] = 0.0;
                        continue;
                    }
                    const auto [zx, zy] = ij[z];
                    const double ka = kt_inv2.at(ax - zx, ay - zy);
                    const double kb = kt_inv2.at(bx - zx, by - zy);
                    zbuf[z] = ((ax - zx) * ka - (bx - zx) * kb) * g.h * f.v[z];
                    zbuf2[z] = ((ay - zy) * ka - (by - zy) * kb) * g.h * f.v[z];
                }
                return std::hypot(h2 * pairwise_sum(zbuf), h2 * pairwise_sum(zbuf2));
            };
            Rng rng = derive_rng(spec.seed, 0x736F6231ULL + trial);
            const auto [lhs, se] = mc_double_norm(g, s, q, mc_samples, rng, T);
            worst_se = std::max(worst_se, se);
            const double rhs = l2_norm(f);
            if (rhs < 1e-14) {
                ++rep.skipped_small_denominator;
                continue;
            }
            rep.ratios.push_back(lhs / rhs);
        }
        rep.finish();
        rep.fitted["C"] = rep.max_ratio;
        rep.extra["mc_relative_se"] = worst_se;
        out.push_back(std::move(rep));
    }

    // Prop bigcommie: commutator operator against [f]_{W^{t,2/t}} [g]_{W^{t,2/t}}
    {
        ConstantReport rep;
        rep.inequality_id = "bigcommie";
        const double q = 2.0 / s;
        double worst_se = 0.0;
        const int trials = std::min(spec.count, 10);
        for (int trial = 0; trial < trials; ++trial) {
            const ScalarField f = gen_scalar(spec, grid, 400 + 2 * trial);
            const ScalarField gg = gen_scalar(spec, grid, 401 + 2 * trial);
            const VecField2 dg = gradient(gg);
            auto T = [&](std::int32_t a, std::int32_t b) {
                const auto [ax, ay] = ij[a];
                const auto [bx, by] = ij[b];
                for (std::int32_t z = 0; z < N; ++z) {
                    if (z == a || z == b) {
                        zbuf[z] = 0.0;
                        continue;
                    }
                    const auto [zx, zy] = ij[z];
                    const double ka = kt_inv2.at(ax - zx, ay - zy);
                    const double kb = kt_inv2.at(bx - zx, by - zy);
                    const double kx = ((ax - zx) * ka - (bx - zx) * kb) * g.h;
                    const double ky = ((ay - zy) * ka - (by - zy) * kb) * g.h;
                    zbuf[z] = (kx * dg.v[z].x + ky * dg.v[z].y) *
                              (f.v[a] + f.v[b] - 2.0 * f.v[z]);
                }
                return h2 * pairwise_sum(zbuf);
            };
            Rng rng = derive_rng(spec.seed, 0x62636F6DULL + trial);
            const auto [lhs, se] = mc_double_norm(g, s, q, mc_samples / 2, rng, T);
            worst_se = std::max(worst_se, se);
            const double rhs = gagliardo_seminorm(f, t, 2.0 / t).value *
                               gagliardo_seminorm(gg, t, 2.0 / t).value;
            if (rhs < 1e-14) {
                ++rep.skipped_small_denominator;
                continue;
            }
            rep.ratios.push_back(lhs / rhs);
        }
        rep.finish();
        rep.fitted["C"] = rep.max_ratio;
        rep.extra["mc_relative_se"] = worst_se;
        out.push_back(std::move(rep));
    }

    // Prop last: G(x,y) with the |.|^{1/2-n} kernel against
    // ||(-lap)^{1/4} f||_{L^4} ||g||_{L^4}
    {
        ConstantReport rep;
        rep.inequality_id = "last";
        const double q = 2.0 / s;
        double worst_se = 0.0;
        const int trials = std::min(spec.count, 10);
        for (int trial = 0; trial < trials; ++trial) {
            const ScalarField f = gen_scalar(spec, grid, 500 + 2 * trial);
            const ScalarField gg = gen_scalar(spec, grid, 501 + 2 * trial);
            auto T = [&](std::int32_t a, std::int32_t b) {
                const auto [ax, ay] = ij[a];
                const auto [bx, by] = ij[b];
                for (std::int32_t z = 0; z < N; ++z) {
                    if (z == a || z == b) {
                        zbuf[z] = 0.0;
                        continue;
                    }
                    const auto [zx, zy] = ij[z];
                    zbuf[z] = std::abs(kt_last.at(ax - zx, ay - zy) -
                                       kt_last.at(bx - zx, by - zy)) *
                              std::abs(f.v[a] + f.v[b] - 2.0 * f.v[z]) * std::abs(gg.v[z]);
                }
                return h2 * pairwise_sum(zbuf);
            };
            Rng rng = derive_rng(spec.seed, 0x6C617374ULL + trial);
            const auto [lhs, se] = mc_double_norm(g, s, q, mc_samples / 2, rng, T);
            worst_se = std::max(worst_se, se);
            // (-lap)^{1/4} f on the aligned periodic embedding, sampled back
            const PeriodicField pf = periodize(f, 2.0);
            const PeriodicField lap14 = frac_laplacian(pf, 0.5);
            ScalarField lf(grid);
            const int off = (lap14.n - g.n) / 2;
            for (std::int32_t c = 0; c < N; ++c) {
                auto [i, j] = g.ij(c);
                lf.v[c] = lap14.at(i + off, j + off);
            }
            const double rhs = lp_norm(lf, 4.0) * lp_norm(gg, 4.0);
            if (rhs < 1e-14) {
                ++rep.skipped_small_denominator;
                continue;
            }
            rep.ratios.push_back(lhs / rhs);
        }
        rep.finish();
        rep.fitted["C"] = rep.max_ratio;
        rep.extra["mc_relative_se"] = worst_se;
        out.push_back(std::move(rep));
    }

    // la:minguyz, estimate (1): min-kernel operator against ||f||_{L^2}
    {
        ConstantReport rep;
        rep.inequality_id = "minguyz";
        if (!(s > 0.5 * t && s < t)) rep.notes.push_back("warning: s outside (t/2, t)");
        const double q = 2.0 / s;
        double worst_se = 0.0;
        for (int trial = 0; trial < spec.count; ++trial) {
            const ScalarField f = gen_scalar(spec, grid, 600 + trial);
            auto T = [&](std::int32_t a, std::int32_t b) {
                const auto [ax, ay] = ij[a];
                const auto [bx, by] = ij[b];
                for (std::int32_t z = 0; z < N; ++z) {
                    if (z == a || z == b) {
                        zbuf[z] = 0.0;
                        continue;
                    }
                    const auto [zx, zy] = ij[z];
                    zbuf[z] = std::abs(f.v[z]) * std::min(kt_min.at(ax - zx, ay - zy),
                                                          kt_min.at(bx - zx, by - zy));
                }
                double ax2, ay2, bx2, by2;
                g.xy(a, ax2, ay2);
                g.xy(b, bx2, by2);
                return std::pow(std::hypot(ax2 - bx2, ay2 - by2), t) * h2 * pairwise_sum(zbuf);
            };
            Rng rng = derive_rng(spec.seed, 0x6D696E67ULL + trial);
            const auto [lhs, se] = mc_double_norm(g, s, q, mc_samples, rng, T);
            worst_se = std::max(worst_se, se);
            const double rhs = l2_norm(f);
            if (rhs < 1e-14) {
                ++rep.skipped_small_denominator;
                continue;
            }
            rep.ratios.push_back(lhs / rhs);
        }
        rep.finish();
        rep.fitted["C"] = rep.max_ratio;
        rep.extra["mc_relative_se"] = worst_se;
        out.push_back(std::move(rep));
    }

    return out;
}

namespace {

double torus_fold(double dx, double L) { return std::remainder(dx, L); }

double torus_dist(double dx, double dy, double L) {
    return std::hypot(torus_fold(dx, L), torus_fold(dy, L));
}

/// |offset|^{exponent} over torus offsets (di, dj) in [0, n)^2.
struct TorusTable {
    int n;
    std::vector<double> k;

    TorusTable(int n_, double d, double L, double exponent) : n(n_) {
        k.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int dj = 0; dj < n; ++dj)
            for (int di = 0; di < n; ++di) {
                if (di == 0 && dj == 0) continue;
                k[static_cast<std::size_t>(dj) * n + di] =
                    std::pow(torus_dist(di * d, dj * d, L), exponent);
            }
    }
    double at(int di, int dj) const {
        di %= n;
        dj %= n;
        if (di < 0) di += n;
        if (dj < 0) dj += n;
        return k[static_cast<std::size_t>(dj) * n + di];
    }
};

/// White noise smoothed by a |xi|^{-decay} multiplier, zero mean, unit L2.
PeriodicField random_periodic(std::uint64_t seed, std::uint64_t stream, double side, int n,
                              double decay) {
    PeriodicField noise(side, n);
    Rng rng = derive_rng(seed, stream);
    for (double& x : noise.v) x = rng.gaussian();
    PeriodicField smooth = riesz_potential(noise, decay);
    const double m = smooth.mean();
    for (double& x : smooth.v) x -= m;
    const double nrm = smooth.l2();
    if (nrm > 0.0)
        for (double& x : smooth.v) x /= nrm;
    return smooth;
}

} // namespace

std::vector<ConstantReport> check_dyadic_blocks(const SampleSpec& spec, double s, double t) {
    if (!(0.0 < s && s < t && t < 1.0))
        throw std::invalid_argument("check_dyadic_blocks: need 0 < s < t < 1");
    std::vector<ConstantReport> out;
    const double p = 2.0;
    const double L = 2.0;

    // block decay: single-band h_j, shells |x-y| ~ 2^{-k}
    {
        ConstantReport rep;
        rep.inequality_id = "dyadic-blocks";
        const int n = 64;
        const int NN = n * n;
        const PeriodicField h = random_periodic(spec.seed, 0xD7AD1CULL, L, n, 1.0);
        const double d = h.spacing();
        const TorusTable kt(n, d, L, t - 2.0);
        std::vector<double> zbuf(NN);
        std::vector<double> slopes;

        for (int j : {2, 4}) {
            const PeriodicField hj = lp_project(h, j);
            const double hj_norm = hj.lp(p);
            if (hj_norm < 1e-13) continue;
            std::vector<std::pair<int, double>> points;
            for (int k = 0; k <= 4; ++k) {
                const double r_lo = std::pow(2.0, -k - 0.5);
                const double r_hi = 2.0 * r_lo;
                if (r_lo < 2.0 * d || r_lo > 0.5 * L) continue;
                Rng rng = derive_rng(spec.seed, 0xD7AD2CULL + 16 * j + k);
                const int samples = 8000;
                std::vector<double> vals;
                vals.reserve(samples);
                const double shell_area = pi * (r_hi * r_hi - r_lo * r_lo);
                for (int m = 0; m < samples; ++m) {
                    const int a = static_cast<int>(rng.next_u64() % NN);
                    const double rad = std::sqrt(rng.uniform(r_lo * r_lo, r_hi * r_hi));
                    const double ang = rng.uniform(0.0, 2.0 * pi);
                    const int axi = a % n, ayi = a / n;
                    int bi = static_cast<int>(std::floor(
                                 (h.x(axi) + rad * std::cos(ang) + 0.5 * L) / d)) % n;
                    int bj = static_cast<int>(std::floor(
                                 (h.x(ayi) + rad * std::sin(ang) + 0.5 * L) / d)) % n;
                    if (bi < 0) bi += n;
                    if (bj < 0) bj += n;
                    const double dd = torus_dist((axi - bi) * d, (ayi - bj) * d, L);
                    if (dd < r_lo || dd >= r_hi) continue;
                    for (int z = 0; z < NN; ++z) {
                        const int zx = z % n, zy = z / n;
                        zbuf[z] = std::abs(kt.at(axi - zx, ayi - zy) - kt.at(bi - zx, bj - zy)) *
                                  hj.v[z];
                    }
                    const double Th = d * d * pairwise_sum(zbuf);
                    vals.push_back(std::pow(std::abs(Th), p) * std::pow(dd, -(2.0 + s * p)));
                }
                if (vals.size() < 100) continue;
                const double mean = pairwise_sum(vals) / static_cast<double>(vals.size());
                const double integral = mean * (L * L) * shell_area;
                const double Ijk = std::pow(std::max(integral, 1e-300), 1.0 / p);
                const double scaled = Ijk / (std::pow(2.0, j * (s - t)) * hj_norm);
                points.emplace_back(std::abs(j - k), std::log2(std::max(scaled, 1e-300)));
                rep.extra["I_j" + std::to_string(j) + "_k" + std::to_string(k)] = Ijk;
            }
            if (points.size() >= 3) {
                double sx = 0, sy = 0, sxx = 0, sxy = 0;
                for (auto [dk, lv] : points) {
                    sx += dk;
                    sy += lv;
                    sxx += static_cast<double>(dk) * dk;
                    sxy += dk * lv;
                }
                const double m = static_cast<double>(points.size());
                const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
                slopes.push_back(-slope);
                rep.extra["rate_j" + std::to_string(j)] = -slope;
            }
        }
        double rate = 1e9;
        for (double r : slopes) rate = std::min(rate, r);
        rep.fitted["decay_rate"] = slopes.empty() ? 0.0 : rate;
        rep.extra["rate_required"] = std::min(s, t - s) - 0.1;
        if (slopes.empty() || rate < std::min(s, t - s) - 0.1) ++rep.violations;
        out.push_back(std::move(rep));
    }

    // Triebel-sum consistency on a tiny grid: full sums, no sampling
    {
        ConstantReport rep;
        rep.inequality_id = "dyadic-triebel-sum";
        const int tn = 16;
        const int NN = tn * tn;
        const PeriodicField h = random_periodic(spec.seed, 0xD7AD3CULL, L, tn, 1.0);
        const double d = h.spacing();
        const TorusTable kt(tn, d, L, t - 2.0);
        const auto [jmin, jmax] = lp_level_range(h);
        std::vector<double> zbuf(NN);

        auto T_of = [&](const std::vector<double>& field, int a, int b) {
            const int axi = a % tn, ayi = a / tn;
            const int bxi = b % tn, byi = b / tn;
            for (int z = 0; z < NN; ++z) {
                const int zx = z % tn, zy = z / tn;
                zbuf[z] = std::abs(kt.at(axi - zx, ayi - zy) - kt.at(bxi - zx, byi - zy)) *
                          field[z];
            }
            return d * d * pairwise_sum(zbuf);
        };

        const int kmax = 4;
        std::vector<double> full_terms;
        full_terms.reserve(static_cast<std::size_t>(NN) * NN);
        std::vector<std::vector<double>> band_fields;
        std::vector<int> levels;
        for (int j = jmin; j <= jmax; ++j) {
            const PeriodicField hj = lp_project(h, j);
            if (hj.lp(2.0) < 1e-13) continue;
            band_fields.push_back(hj.v);
            levels.push_back(j);
        }
        // per (k) accumulators of I_{j,k}^p
        std::vector<std::vector<double>> shell_band(kmax + 1,
                                                    std::vector<double>(levels.size(), 0.0));
        for (int a = 0; a < NN; ++a) {
            for (int b = 0; b < NN; ++b) {
                if (b == a) continue;
                const int axi = a % tn, ayi = a / tn;
                const int bxi = b % tn, byi = b / tn;
                const double dd = torus_dist((axi - bxi) * d, (ayi - byi) * d, L);
                const double weight = std::pow(dd, -(2.0 + s * p)) * d * d * d * d;
                full_terms.push_back(std::pow(std::abs(T_of(h.v, a, b)), p) * weight);
                // shell index: dd in [2^{-k-1/2}, 2^{-k+1/2})
                const int k = static_cast<int>(std::floor(-std::log2(dd) + 0.5));
                if (k < 0 || k > kmax) continue;
                for (std::size_t bi = 0; bi < levels.size(); ++bi)
                    shell_band[k][bi] += std::pow(std::abs(T_of(band_fields[bi], a, b)), p) * weight;
            }
        }
        const double full_integral = pairwise_sum(full_terms);
        std::vector<double> k_sums;
        for (int k = 0; k <= kmax; ++k) {
            double j_sum = 0.0;
            for (std::size_t bi = 0; bi < levels.size(); ++bi)
                j_sum += std::pow(shell_band[k][bi], 1.0 / p);
            k_sums.push_back(std::pow(j_sum, p));
        }
        const double block_bound = pairwise_sum(k_sums);
        const double ratio = full_integral > 0.0 ? block_bound / full_integral : 0.0;
        rep.ratios.push_back(ratio);
        rep.finish();
        rep.fitted["block_over_full"] = ratio;
        // Minkowski over-counting on one side, shell truncation on the other
        if (!(ratio >= 1.0 / 64.0 && ratio <= 4096.0)) ++rep.violations;
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace fracsurf
