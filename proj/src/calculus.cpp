#include "fracsurf/calculus.hpp"
#include "fracsurf/summation.hpp"

#include <cmath>

namespace fracsurf {

namespace {

/// One-dimensional derivative along (di,dj) at compact node c.
template <class Get>
double deriv1d(const Grid& g, std::int32_t c, int di, int dj, double h, Get&& f) {
    auto [i, j] = g.ij(c);
    const std::int32_t p1 = g.at(i + di, j + dj);
    const std::int32_t m1 = g.at(i - di, j - dj);
    if (p1 >= 0 && m1 >= 0) return (f(p1) - f(m1)) / (2.0 * h);
    const std::int32_t p2 = g.at(i + 2 * di, j + 2 * dj);
    if (p1 >= 0 && p2 >= 0) return (-3.0 * f(c) + 4.0 * f(p1) - f(p2)) / (2.0 * h);
    const std::int32_t m2 = g.at(i - 2 * di, j - 2 * dj);
    if (m1 >= 0 && m2 >= 0) return (3.0 * f(c) - 4.0 * f(m1) + f(m2)) / (2.0 * h);
    if (p1 >= 0) return (f(p1) - f(c)) / h;
    if (m1 >= 0) return (f(c) - f(m1)) / h;
    return 0.0;
}

} // namespace

VecField2 gradient(const ScalarField& f) {
    const Grid& g = *f.grid;
    VecField2 out(f.grid);
    auto get = [&](std::int32_t c) { return f.v[c]; };
    for (std::int32_t c = 0; c < g.masked_count(); ++c) {
        out.v[c].x = deriv1d(g, c, 1, 0, g.h, get);
        out.v[c].y = deriv1d(g, c, 0, 1, g.h, get);
    }
    return out;
}

VecField2 perp_gradient(const ScalarField& f) {
    VecField2 grad = gradient(f);
    for (auto& v : grad.v) v = Vec2{-v.y, v.x};
    return grad;
}

Jacobian3 gradient(const VecField3& f) {
    const Grid& g = *f.grid;
    Jacobian3 out{VecField3(f.grid), VecField3(f.grid)};
    for (int comp = 0; comp < 3; ++comp) {
        auto get = [&](std::int32_t c) {
            const Vec3& v = f.v[c];
            return comp == 0 ? v.x : (comp == 1 ? v.y : v.z);
        };
        for (std::int32_t c = 0; c < g.masked_count(); ++c) {
            const double d1 = deriv1d(g, c, 1, 0, g.h, get);
            const double d2 = deriv1d(g, c, 0, 1, g.h, get);
            auto set = [&](Vec3& v, double val) {
                (comp == 0 ? v.x : (comp == 1 ? v.y : v.z)) = val;
            };
            set(out.d1.v[c], d1);
            set(out.d2.v[c], d2);
        }
    }
    return out;
}

ScalarField divergence(const VecField2& v) {
    const Grid& g = *v.grid;
    ScalarField out(v.grid);
    auto getx = [&](std::int32_t c) { return v.v[c].x; };
    auto gety = [&](std::int32_t c) { return v.v[c].y; };
    for (std::int32_t c = 0; c < g.masked_count(); ++c)
        out.v[c] = deriv1d(g, c, 1, 0, g.h, getx) + deriv1d(g, c, 0, 1, g.h, gety);
    return out;
}

double integrate(const ScalarField& f) {
    return f.grid->h * f.grid->h * pairwise_sum(f.v);
}

double l2_norm(const ScalarField& f) {
    std::vector<double> sq(f.v.size());
    for (std::size_t i = 0; i < f.v.size(); ++i) sq[i] = f.v[i] * f.v[i];
    return std::sqrt(f.grid->h * f.grid->h * pairwise_sum(sq));
}

double l2_norm(const VecField2& f) {
    std::vector<double> sq(f.v.size());
    for (std::size_t i = 0; i < f.v.size(); ++i) sq[i] = f.v[i].dot(f.v[i]);
    return std::sqrt(f.grid->h * f.grid->h * pairwise_sum(sq));
}

double lp_norm(const ScalarField& f, double p) {
    std::vector<double> t(f.v.size());
    for (std::size_t i = 0; i < f.v.size(); ++i) t[i] = std::pow(std::abs(f.v[i]), p);
    return std::pow(f.grid->h * f.grid->h * pairwise_sum(t), 1.0 / p);
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

double mean(const ScalarField& f) {
    return pairwise_sum(f.v) / static_cast<double>(f.v.size());
}

} // namespace fracsurf
