#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracsurf {

enum class GridKind { disk, square };

/// Cell-centered lattice over [cx-R, cx+R] x [cy-R, cy+R] with a node mask.
/// No node ever sits on the domain boundary. Disk masks keep nodes with
/// |x - center| < mask_radius; square masks are total. A restricted grid
/// shares the lattice (same n, h, R) but carries a smaller mask_radius.
class Grid {
public:
    GridKind kind;
    double cx = 0.0, cy = 0.0;
    double R;           // lattice half-width
    double mask_radius; // active sub-disk radius (== R unless restricted)
    int n;              // nodes per axis
    double h;           // spacing, 2R/n

    Grid(GridKind k, double R_, int n_, double mask_r);

    int masked_count() const { return static_cast<int>(full_of_compact_.size()); }

    double x(int i) const { return cx - R + (i + 0.5) * h; }
    double y(int j) const { return cy - R + (j + 0.5) * h; }

    /// Compact index of lattice node (i,j), or -1 when unmasked/out of range.
    std::int32_t at(int i, int j) const {
        if (i < 0 || j < 0 || i >= n || j >= n) return -1;
        return compact_of_full_[static_cast<std::size_t>(j) * n + i];
    }

    std::pair<int, int> ij(std::int32_t c) const {
        const std::int32_t f = full_of_compact_[c];
        return {f % n, f / n};
    }

    void xy(std::int32_t c, double& px, double& py) const {
        auto [i, j] = ij(c);
        px = x(i);
        py = y(j);
    }

    /// All four lattice neighbors masked.
    bool interior4(std::int32_t c) const;
    /// Full 3x3 neighborhood masked.
    bool interior8(std::int32_t c) const;
    /// Full (2*depth+1)^2 neighborhood masked: every stencil within `depth`
    /// cells is central, so composed finite differences keep full order.
    bool interior_box(std::int32_t c, int depth) const;

    /// Masked nodes with at least one unmasked 4-neighbor (the staircase edge
    /// ring used for boundary traces).
    const std::vector<std::int32_t>& edge_ring() const { return edge_ring_; }

    bool same_lattice(const Grid& o) const {
        return kind == o.kind && n == o.n && R == o.R && cx == o.cx && cy == o.cy;
    }
    bool same_mask(const Grid& o) const { return same_lattice(o) && mask_radius == o.mask_radius; }

    static std::string kind_name(GridKind k) { return k == GridKind::disk ? "disk" : "square"; }

private:
    std::vector<std::int32_t> compact_of_full_; // n*n, -1 where unmasked
    std::vector<std::int32_t> full_of_compact_;
    std::vector<std::int32_t> edge_ring_;

    bool inside(double px, double py) const;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(GridKind kind, double R, int n);

/// Sub-mask |x - center| < r of an existing grid (same lattice).
GridPtr restrict_grid(const GridPtr& g, double r);

} // namespace fracsurf
