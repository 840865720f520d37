#include "fracsurf/grid.hpp"

#include <cmath>

namespace fracsurf {

bool Grid::inside(double px, double py) const {
    if (kind == GridKind::square && mask_radius == R) return true;
    const double dx = px - cx, dy = py - cy;
    return dx * dx + dy * dy < mask_radius * mask_radius;
}

Grid::Grid(GridKind k, double R_, int n_, double mask_r)
    : kind(k), R(R_), mask_radius(mask_r), n(n_), h(2.0 * R_ / n_) {
    compact_of_full_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (inside(x(i), y(j))) {
                compact_of_full_[static_cast<std::size_t>(j) * n + i] =
                    static_cast<std::int32_t>(full_of_compact_.size());
                full_of_compact_.push_back(j * n + i);
            }
        }
    }
    for (std::int32_t c = 0; c < masked_count(); ++c) {
        auto [i, j] = ij(c);
        if (at(i - 1, j) < 0 || at(i + 1, j) < 0 || at(i, j - 1) < 0 || at(i, j + 1) < 0)
            edge_ring_.push_back(c);
    }
}

bool Grid::interior4(std::int32_t c) const {
    auto [i, j] = ij(c);
    return at(i - 1, j) >= 0 && at(i + 1, j) >= 0 && at(i, j - 1) >= 0 && at(i, j + 1) >= 0;
}

bool Grid::interior8(std::int32_t c) const {
    auto [i, j] = ij(c);
    for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di)
            if (at(i + di, j + dj) < 0) return false;
    return true;
}

bool Grid::interior_box(std::int32_t c, int depth) const {
    auto [i, j] = ij(c);
    for (int dj = -depth; dj <= depth; ++dj)
        for (int di = -depth; di <= depth; ++di)
            if (at(i + di, j + dj) < 0) return false;
    return true;
}

GridPtr make_grid(GridKind kind, double R, int n) {
    if (n < 4) throw std::invalid_argument("make_grid: n must be >= 4");
    if (!(R > 0.0)) throw std::invalid_argument("make_grid: R must be positive");
    return std::make_shared<const Grid>(kind, R, n, R);
}

GridPtr restrict_grid(const GridPtr& g, double r) {
    if (!(r > 0.0) || r > g->R) throw std::invalid_argument("restrict_grid: need 0 < r <= R");
    auto out = std::make_shared<Grid>(g->kind, g->R, g->n, r);
    if (out->masked_count() == 0) throw std::invalid_argument("restrict_grid: empty sub-mask");
    return out;
}

} // namespace fracsurf
