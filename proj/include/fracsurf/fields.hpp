#pragma once

#include "fracsurf/grid.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace fracsurf {

struct Vec2 {
    double x = 0.0, y = 0.0;
    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double a) const { return {a * x, a * y}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::sqrt(x * x + y * y); }
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
    Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double a) const { return {a * x, a * y, a * z}; }
    double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(Vec3 o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    Vec3 normalized() const {
        const double r = norm();
        return {x / r, y / r, z / r};
    }
};

/// Grid-attached samples, one value per masked node. Fields are immutable
/// values in practice: operations return fresh fields.
template <class T>
struct Field {
    GridPtr grid;
    std::vector<T> v;

    Field() = default;
    explicit Field(GridPtr g) : grid(std::move(g)), v(grid->masked_count()) {}
    Field(GridPtr g, T fill) : grid(std::move(g)), v(grid->masked_count(), fill) {}

    T& operator[](std::int32_t c) { return v[c]; }
    const T& operator[](std::int32_t c) const { return v[c]; }
    std::size_t size() const { return v.size(); }
};

using ScalarField = Field<double>;
using VecField2 = Field<Vec2>;
using VecField3 = Field<Vec3>;

template <class T, class F>
Field<T> make_field(const GridPtr& g, F&& fn) {
    Field<T> out(g);
    for (std::int32_t c = 0; c < g->masked_count(); ++c) {
        double px, py;
        g->xy(c, px, py);
        out.v[c] = fn(px, py);
    }
    return out;
}

inline ScalarField make_scalar(const GridPtr& g, const std::function<double(double, double)>& fn) {
    return make_field<double>(g, fn);
}

/// Restriction to |x - center| < r (module operation `restrict`).
template <class T>
Field<T> restrict_field(const Field<T>& f, double r) {
    GridPtr sub = restrict_grid(f.grid, r);
    Field<T> out(sub);
    for (std::int32_t c = 0; c < sub->masked_count(); ++c) {
        auto [i, j] = sub->ij(c);
        out.v[c] = f.v[f.grid->at(i, j)];
    }
    return out;
}

/// Bilinear interpolation with nearest-masked-node fallback when a cell
/// corner is unmasked (used near the staircase rim).
double sample_bilinear(const ScalarField& f, double px, double py);
Vec3 sample_bilinear(const VecField3& f, double px, double py);

} // namespace fracsurf
