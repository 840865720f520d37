#include "fracsurf/spectral.hpp"
#include "fracsurf/summation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fracsurf {

namespace {

constexpr double pi = std::numbers::pi;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft1(std::complex<double>* a, int n, bool inverse) {
    // iterative radix-2, bit-reversal order
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / len * (inverse ? 1.0 : -1.0);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / n;
        for (int i = 0; i < n; ++i) a[i] *= inv;
    }
}

} // namespace

void fft2(std::vector<std::complex<double>>& a, int n, bool inverse) {
    for (int j = 0; j < n; ++j) fft1(a.data() + static_cast<std::size_t>(j) * n, n, inverse);
    std::vector<std::complex<double>> col(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) col[j] = a[static_cast<std::size_t>(j) * n + i];
        fft1(col.data(), n, inverse);
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j) * n + i] = col[j];
    }
}

PeriodicField::PeriodicField(double side_, int n_) : side(side_), n(n_) {
    if (!power_of_two(n)) throw std::invalid_argument("PeriodicField: n must be a power of two");
    if (!(side > 0.0)) throw std::invalid_argument("PeriodicField: side must be positive");
    v.assign(static_cast<std::size_t>(n) * n, 0.0);
}

double PeriodicField::l2() const {
    std::vector<double> t(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) t[i] = v[i] * v[i];
    const double d = spacing();
    return std::sqrt(d * d * pairwise_sum(t));
}

double PeriodicField::lp(double p) const {
    std::vector<double> t(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) t[i] = std::pow(std::abs(v[i]), p);
    const double d = spacing();
    return std::pow(d * d * pairwise_sum(t), 1.0 / p);
}

double PeriodicField::mean() const { return pairwise_sum(v) / static_cast<double>(v.size()); }

namespace {

int next_pow2(int m) {
    int p = 1;
    while (p < m) p <<= 1;
    return p;
}

/// Apply a radial (or vector-phase) multiplier in the Fourier domain.
/// mult(kx, ky) receives physical frequencies 2*pi*m/side.
template <class Mult>
PeriodicField apply_multiplier(const PeriodicField& f, Mult&& mult) {
    const int n = f.n;
    std::vector<std::complex<double>> a(f.v.size());
    for (std::size_t i = 0; i < f.v.size(); ++i) a[i] = f.v[i];
    fft2(a, n, false);
    const double k0 = 2.0 * pi / f.side;
    for (int j = 0; j < n; ++j) {
        const int mj = j <= n / 2 ? j : j - n;
        for (int i = 0; i < n; ++i) {
            const int mi = i <= n / 2 ? i : i - n;
            a[static_cast<std::size_t>(j) * n + i] *= mult(k0 * mi, k0 * mj);
        }
    }
    fft2(a, n, true);
    PeriodicField out(f.side, n);
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = a[i].real();
    return out;
}

} // namespace

PeriodicField periodize(const ScalarField& f, double pad) {
    if (pad < 2.0) throw std::invalid_argument("periodize: pad must be >= 2");
    const Grid& g = *f.grid;
    const double side = 2.0 * pad * g.R;
    const int n = next_pow2(static_cast<int>(std::lround(pad * g.n)));
    PeriodicField out(side, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double px = out.x(i), py = out.x(j);
            if (std::abs(px - g.cx) < g.R && std::abs(py - g.cy) < g.R)
                out.at(i, j) = sample_bilinear(f, px, py);
        }
    }
    return out;
}

namespace {

/// Smooth radial cutoff: 1 for |x| <= 1, 0 for |x| >= 3/2.
double embed_cutoff(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 1.5) return 0.0;
    const double t = (r - 1.0) / 0.5;
    const auto eta = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    return eta(1.0 - t) / (eta(1.0 - t) + eta(t));
}

template <class FieldT, class OutAssign>
void embed_core(const FieldT& f, double pad, OutAssign&& assign) {
    if (pad < 2.0) throw std::invalid_argument("embed: pad must be >= 2");
    const Grid& g = *f.grid;
    if (g.kind != GridKind::disk || std::abs(g.R - 1.0) > 1e-12)
        throw std::invalid_argument("embed: unit disk field required");
    const double side = 2.0 * pad;
    const int n_out = next_pow2(static_cast<int>(std::lround(pad * g.n)));
    const double d = side / n_out;
    for (int j = 0; j < n_out; ++j) {
        for (int i = 0; i < n_out; ++i) {
            const double px = -0.5 * side + (i + 0.5) * d;
            const double py = -0.5 * side + (j + 0.5) * d;
            const double r = std::hypot(px, py);
            if (r >= 1.5) continue;
            const double cut = embed_cutoff(r);
            if (r > 1.0) {
                const double r2 = r * r;
                assign(i, j, sample_bilinear(f, px / r2, py / r2), cut);
            } else {
                assign(i, j, sample_bilinear(f, px, py), cut);
            }
        }
    }
}

int embed_size(const Grid& g, double pad) {
    return next_pow2(static_cast<int>(std::lround(pad * g.n)));
}

} // namespace

PeriodicField embed(const ScalarField& f, double pad) {
    PeriodicField out(2.0 * pad, embed_size(*f.grid, pad));
    embed_core(f, pad, [&](int i, int j, double val, double cut) { out.at(i, j) = cut * val; });
    return out;
}

std::array<PeriodicField, 3> embed(const VecField3& f, double pad) {
    const double side = 2.0 * pad;
    const int n = embed_size(*f.grid, pad);
    std::array<PeriodicField, 3> out{PeriodicField(side, n), PeriodicField(side, n),
                                     PeriodicField(side, n)};
    embed_core(f, pad, [&](int i, int j, Vec3 val, double cut) {
        out[0].at(i, j) = cut * val.x;
        out[1].at(i, j) = cut * val.y;
        out[2].at(i, j) = cut * val.z;
    });
    return out;
}

PeriodicField frac_laplacian(const PeriodicField& f, double s) {
    if (!(s > 0.0) || !(s < 2.0)) throw std::invalid_argument("frac_laplacian: s must lie in (0,2)");
    return apply_multiplier(f, [s](double kx, double ky) {
        const double k = std::hypot(kx, ky);
        return k > 0.0 ? std::pow(k, s) : 0.0;
    });
}

PeriodicField riesz_potential(const PeriodicField& f, double s) {
    if (!(s > 0.0) || !(s < 2.0)) throw std::invalid_argument("riesz_potential: s must lie in (0,2)");
    return apply_multiplier(f, [s](double kx, double ky) {
        const double k = std::hypot(kx, ky);
        return k > 0.0 ? std::pow(k, -s) : 0.0;
    });
}

std::array<PeriodicField, 2> riesz_transform(const PeriodicField& f) {
    // odd symbol: the Nyquist lines carry no sign information, zero them
    const double k_nyq = pi * f.n / f.side;
    auto mask = [k_nyq](double kx, double ky) {
        return std::abs(kx) < k_nyq - 1e-9 && std::abs(ky) < k_nyq - 1e-9;
    };
    auto r1 = apply_multiplier(f, [&](double kx, double ky) {
        const double k = std::hypot(kx, ky);
        return (k > 0.0 && mask(kx, ky)) ? std::complex<double>(0.0, -kx / k)
                                         : std::complex<double>(0.0, 0.0);
    });
    auto r2 = apply_multiplier(f, [&](double kx, double ky) {
        const double k = std::hypot(kx, ky);
        return (k > 0.0 && mask(kx, ky)) ? std::complex<double>(0.0, -ky / k)
                                         : std::complex<double>(0.0, 0.0);
    });
    return {std::move(r1), std::move(r2)};
}

namespace {

/// Cumulative integral of the bump exp(1 - 1/(1-t^2)) on (-1,1), tabulated
/// once on a fixed lattice; phi is its normalized complement mapped to the
/// radial interval [1,2].
struct BumpTable {
    static constexpr int N = 4096;
    std::vector<double> cum;
    BumpTable() : cum(N + 1, 0.0) {
        const auto bump = [](double t) {
            const double d = 1.0 - t * t;
            return d > 0.0 ? std::exp(1.0 - 1.0 / d) : 0.0;
        };
        // composite Simpson on each sub-interval
        for (int k = 0; k < N; ++k) {
            const double a = -1.0 + 2.0 * k / N;
            const double b = -1.0 + 2.0 * (k + 1) / N;
            const double m = 0.5 * (a + b);
            cum[k + 1] = cum[k] + (b - a) / 6.0 * (bump(a) + 4.0 * bump(m) + bump(b));
        }
    }
    double eval(double t) const { // cumulative, normalized to [0,1]
        if (t <= -1.0) return 0.0;
        if (t >= 1.0) return 1.0;
        const double u = (t + 1.0) * 0.5 * N;
        const int k = std::min(static_cast<int>(u), N - 1);
        const double frac = u - k;
        const double val = cum[k] * (1.0 - frac) + cum[k + 1] * frac;
        return val / cum[N];
    }
};

const BumpTable& bump_table() {
    static const BumpTable t;
    return t;
}

} // namespace

double lp_phi(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    return 1.0 - bump_table().eval(2.0 * (r - 1.0) - 1.0);
}

std::pair<int, int> lp_level_range(const PeriodicField& f) {
    const double k_min = 2.0 * pi / f.side;
    const double k_max = std::sqrt(2.0) * pi / f.spacing();
    const int j_min = static_cast<int>(std::floor(std::log2(k_min))) - 1;
    const int j_max = static_cast<int>(std::ceil(std::log2(k_max))) + 1;
    return {j_min, j_max};
}

PeriodicField lp_project(const PeriodicField& f, int j) {
    const auto [j_min, j_max] = lp_level_range(f);
    if (j < j_min || j > j_max)
        throw std::invalid_argument("lp_project: level outside the representable dyadic range");
    const double scale = std::pow(2.0, -static_cast<double>(j));
    return apply_multiplier(f, [scale](double kx, double ky) {
        const double r = scale * std::hypot(kx, ky);
        if (r <= 0.0) return 0.0;
        return lp_phi(r) - lp_phi(2.0 * r);
    });
}

TriebelReport triebel_seminorm(const PeriodicField& f, double s, double p, int j_min_override,
                               int j_max_override) {
    if (!(p > 1.0)) throw std::invalid_argument("triebel_seminorm: p must exceed 1");
    auto [j_min, j_max] = lp_level_range(f);
    if (j_min_override <= j_max_override) {
        j_min = j_min_override;
        j_max = j_max_override;
    }
    TriebelReport rep;
    rep.j_min = j_min;
    rep.j_max = j_max;
    PeriodicField recon(f.side, f.n);
    std::vector<double> terms;
    for (int j = j_min; j <= j_max; ++j) {
        const double sc = std::pow(2.0, -static_cast<double>(j));
        PeriodicField band = apply_multiplier(f, [sc](double kx, double ky) {
            const double r = sc * std::hypot(kx, ky);
            if (r <= 0.0) return 0.0;
            return lp_phi(r) - lp_phi(2.0 * r);
        });
        const double norm = band.lp(p);
        terms.push_back(std::pow(2.0, static_cast<double>(j) * s * p) * std::pow(norm, p));
        for (std::size_t i = 0; i < recon.v.size(); ++i) recon.v[i] += band.v[i];
    }
    rep.value = std::pow(pairwise_sum(terms), 1.0 / p);
    // tail: zero-mean energy not captured by the covered bands
    const double m = f.mean();
    PeriodicField zm = f;
    for (double& x : zm.v) x -= m;
    for (std::size_t i = 0; i < recon.v.size(); ++i) recon.v[i] -= zm.v[i];
    const double zn = zm.l2();
    rep.tail = zn > 0.0 ? recon.l2() / zn : 0.0;
    rep.tail_warning = rep.tail > 1e-8;
    return rep;
}

double frac_laplacian_constant(double s) {
    // symbol |xi|^s in n = 2: c = s * 2^{s-1} * Gamma(1 + s/2) / (pi * Gamma(1 - s/2))
    return s * std::pow(2.0, s - 1.0) * std::tgamma(1.0 + 0.5 * s) /
           (pi * std::tgamma(1.0 - 0.5 * s));
}

double riesz_kernel_constant(double t) {
    // I_t kernel |x|^{t-2} / gamma(2,t), gamma(2,t) = pi * 2^t * Gamma(t/2) / Gamma(1 - t/2)
    return pi * std::pow(2.0, t) * std::tgamma(0.5 * t) / std::tgamma(1.0 - 0.5 * t);
}

namespace {

/// Distance from an interior point to the boundary of [-R,R]^2 along
/// direction (cos a, sin a).
double ray_box_distance(double px, double py, double ca, double sa, double R) {
    double t = std::numeric_limits<double>::max();
    if (ca > 1e-300) t = std::min(t, (R - px) / ca);
    if (ca < -1e-300) t = std::min(t, (-R - px) / ca);
    if (sa > 1e-300) t = std::min(t, (R - py) / sa);
    if (sa < -1e-300) t = std::min(t, (-R - py) / sa);
    return t;
}

double ray_disk_distance(double px, double py, double ca, double sa, double R) {
    const double b = px * ca + py * sa;
    const double c = px * px + py * py - R * R;
    return -b + std::sqrt(std::max(b * b - c, 0.0));
}

} // namespace

ScalarField singular_integral_frac_laplacian(const ScalarField& f, double s) {
    if (!(s > 0.0) || !(s < 1.0))
        throw std::invalid_argument("singular_integral_frac_laplacian: s must lie in (0,1)");
    const Grid& g = *f.grid;
    const int n = g.n;
    const double h = g.h;
    const double c2s = frac_laplacian_constant(s);
    const std::int32_t N = g.masked_count();

    // kernel table; near-diagonal offsets use the cell-averaged kernel so the
    // midpoint rule stays accurate where |x-y| ~ h
    const int near = 4, sub = 16;
    std::vector<double> kt(static_cast<std::size_t>(2 * n - 1) * (2 * n - 1), 0.0);
    for (int dj = -(n - 1); dj <= n - 1; ++dj) {
        for (int di = -(n - 1); di <= n - 1; ++di) {
            if (di == 0 && dj == 0) continue;
            double val;
            if (std::abs(di) <= near && std::abs(dj) <= near) {
                double acc = 0.0;
                for (int b = 0; b < sub; ++b) {
                    for (int a = 0; a < sub; ++a) {
                        const double dx = (di + (a + 0.5) / sub - 0.5) * h;
                        const double dy = (dj + (b + 0.5) / sub - 0.5) * h;
                        acc += std::pow(dx * dx + dy * dy, -0.5 * (2.0 + s));
                    }
                }
                val = acc / (sub * sub);
            } else {
                val = std::pow((di * di + dj * dj) * h * h, -0.5 * (2.0 + s));
            }
            kt[static_cast<std::size_t>(dj + n - 1) * (2 * n - 1) + (di + n - 1)] = val;
        }
    }

    // diagonal-cell curvature weight: (1/4) * int_cell |d|^{-s}
    const int aq = 512;
    double icell = 0.0;
    for (int a = 0; a < aq; ++a) {
        const double ang = (a + 0.5) * 2.0 * pi / aq;
        const double rho = ray_box_distance(0.0, 0.0, std::cos(ang), std::sin(ang), 0.5 * h);
        icell += std::pow(rho, 2.0 - s) / (2.0 - s);
    }
    icell *= 2.0 * pi / aq;
    const double diag_w = 0.25 * icell;

    ScalarField out(f.grid, 0.0);
    std::vector<std::pair<int, int>> coords(N);
    for (std::int32_t c = 0; c < N; ++c) coords[c] = g.ij(c);

    // far-field continuation estimated by the edge-ring mean: zero for
    // fields meeting the compact-support precondition, and the operator
    // then annihilates constants exactly
    double far_value = 0.0;
    for (std::int32_t c : g.edge_ring()) far_value += f.v[c];
    far_value /= static_cast<double>(g.edge_ring().size());

    parallel_for(N, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t cc = lo; cc < hi; ++cc) {
            const std::int32_t c = static_cast<std::int32_t>(cc);
            const auto [ic, jc] = coords[c];
            std::vector<double> terms(N, 0.0);
            for (std::int32_t b = 0; b < N; ++b) {
                if (b == c) continue;
                const auto [ib, jb] = coords[b];
                terms[b] = (f.v[c] - f.v[b]) *
                           kt[static_cast<std::size_t>(jb - jc + n - 1) * (2 * n - 1) +
                              (ib - ic + n - 1)];
            }
            double acc = h * h * pairwise_sum(terms);

            // diagonal cell: leading curvature term of the principal value
            const std::int32_t e = g.at(ic + 1, jc), w = g.at(ic - 1, jc);
            const std::int32_t no = g.at(ic, jc + 1), so = g.at(ic, jc - 1);
            if (e >= 0 && w >= 0 && no >= 0 && so >= 0) {
                const double lap =
                    (f.v[e] + f.v[w] + f.v[no] + f.v[so] - 4.0 * f.v[c]) / (h * h);
                acc -= lap * diag_w;
            }

            // far field: f vanishes outside the grid, contribute
            // f(x) * int_{R^2 \ domain} |x-y|^{-2-s} dy via angular quadrature
            double px, py;
            g.xy(c, px, py);
            double tail = 0.0;
            for (int a = 0; a < aq; ++a) {
                const double ang = (a + 0.5) * 2.0 * pi / aq;
                const double ca = std::cos(ang), sa = std::sin(ang);
                const double rho = g.kind == GridKind::square
                                       ? ray_box_distance(px - g.cx, py - g.cy, ca, sa, g.R)
                                       : ray_disk_distance(px - g.cx, py - g.cy, ca, sa,
                                                           g.mask_radius);
                tail += std::pow(rho, -s) / s;
            }
            tail *= 2.0 * pi / aq;
            acc += (f.v[c] - far_value) * tail;

            out.v[c] = c2s * acc;
        }
    });
    return out;
}

} // namespace fracsurf
