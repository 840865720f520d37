#include "fracsurf/fields.hpp"

#include <algorithm>
#include <limits>

namespace fracsurf {

namespace {

struct BilinearStencil {
    std::int32_t c00 = -1, c10 = -1, c01 = -1, c11 = -1;
    double wx = 0.0, wy = 0.0;
    std::int32_t nearest = -1;
    bool full() const { return c00 >= 0 && c10 >= 0 && c01 >= 0 && c11 >= 0; }
};

BilinearStencil locate(const Grid& g, double px, double py) {
    BilinearStencil s;
    const double gx = (px - (g.cx - g.R)) / g.h - 0.5;
    const double gy = (py - (g.cy - g.R)) / g.h - 0.5;
    int i0 = static_cast<int>(std::floor(gx));
    int j0 = static_cast<int>(std::floor(gy));
    s.wx = gx - i0;
    s.wy = gy - j0;
    s.c00 = g.at(i0, j0);
    s.c10 = g.at(i0 + 1, j0);
    s.c01 = g.at(i0, j0 + 1);
    s.c11 = g.at(i0 + 1, j0 + 1);
    if (!s.full()) {
        // nearest masked node within a widening window
        double best = std::numeric_limits<double>::max();
        for (int r = 0; r <= 2 && s.nearest < 0; ++r) {
            for (int j = j0 - r; j <= j0 + 1 + r; ++j) {
                for (int i = i0 - r; i <= i0 + 1 + r; ++i) {
                    const std::int32_t c = g.at(i, j);
                    if (c < 0) continue;
                    const double dx = g.x(i) - px, dy = g.y(j) - py;
                    const double d = dx * dx + dy * dy;
                    if (d < best) {
                        best = d;
                        s.nearest = c;
                    }
                }
            }
        }
    }
    return s;
}

} // namespace

double sample_bilinear(const ScalarField& f, double px, double py) {
    const BilinearStencil s = locate(*f.grid, px, py);
    if (!s.full()) return s.nearest >= 0 ? f.v[s.nearest] : 0.0;
    const double a = f.v[s.c00] * (1 - s.wx) + f.v[s.c10] * s.wx;
    const double b = f.v[s.c01] * (1 - s.wx) + f.v[s.c11] * s.wx;
    return a * (1 - s.wy) + b * s.wy;
}

Vec3 sample_bilinear(const VecField3& f, double px, double py) {
    const BilinearStencil s = locate(*f.grid, px, py);
    if (!s.full()) return s.nearest >= 0 ? f.v[s.nearest] : Vec3{};
    const Vec3 a = f.v[s.c00] * (1 - s.wx) + f.v[s.c10] * s.wx;
    const Vec3 b = f.v[s.c01] * (1 - s.wx) + f.v[s.c11] * s.wx;
    return a * (1 - s.wy) + b * s.wy;
}

} // namespace fracsurf
