#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hpfnav/types.hpp"

namespace hpfnav {

/// Cells flipped to unsafe by one registration event. Empty when the
/// detection mapped onto already-known hazard cells.
struct CellPatch {
    std::vector<CellIndex> cells;
    // bounding box of the flipped cells; meaningless when empty()
    CellIndex lo{0, 0};
    CellIndex hi{-1, -1};

    bool empty() const { return cells.empty(); }
    std::size_t size() const { return cells.size(); }
};

/// Binary belief map over the square operation perimeter. 1 = believed
/// unsafe, 0 = believed usable. The perimeter ring is permanently unsafe
/// and interior cells only ever harden 0 -> 1 between resets.
///
/// World convention: (0, 0) at the domain center, cell i along +x and
/// cell j along +y, cell centers at ((i + 0.5) * delta - D/2, ...).
class SafetyGrid {
public:
    /// Build an N x N grid over a square domain of width `domain_width`
    /// meters: perimeter unsafe, interior usable.
    SafetyGrid(int n, double domain_width);

    int size() const { return n_; }
    double domain_width() const { return width_; }
    double cell_size() const { return delta_; }

    bool in_bounds(int i, int j) const {
        return i >= 0 && j >= 0 && i < n_ && j < n_;
    }
    /// Strictly inside the perimeter ring.
    bool interior(int i, int j) const {
        return i >= 1 && j >= 1 && i <= n_ - 2 && j <= n_ - 2;
    }

    bool unsafe(int i, int j) const { return cells_[idx(i, j)] != 0; }
    bool unsafe(CellIndex c) const { return unsafe(c.i, c.j); }
    bool usable(int i, int j) const { return !unsafe(i, j); }

    /// Nearest-cell mapping, clamped so out-of-domain points land on the
    /// perimeter ring.
    CellIndex world_to_cell(double x, double y) const;
    Vec2 cell_center(CellIndex c) const;

    /// Register one ultrasonic detection: place the obstacle point at
    /// range + robot_width/2 from the robot center along the believed
    /// heading (+ beam_skew), then flip the (2*inflate+1)^2 square around
    /// its cell, clipped to the interior. Returns exactly the cells that
    /// changed. Idempotent for repeated identical detections.
    CellPatch register_detection(const Pose& believed, double range,
                                 double robot_width, int inflate,
                                 double beam_skew = 0.0);

    /// Pre-register a disc of cells (a-priori map entries): every interior
    /// cell whose center lies inside the disc, dilated by `inflate` cells.
    CellPatch mark_disc(Vec2 center, double radius, int inflate);

    /// True iff a 4-connected path of usable cells joins a and b
    /// (both must be usable; a == b counts when usable).
    bool connected(CellIndex a, CellIndex b) const;

    /// Flood-fill mask of usable cells 4-connected to `seed`
    /// (all zeros when seed is unsafe).
    std::vector<uint8_t> reachable_from(CellIndex seed) const;

    /// Drop all beliefs back to the freshly initialized state.
    void reset();

    int unsafe_count() const;
    const std::vector<uint8_t>& cells() const { return cells_; }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * n_ + j;
    }
    CellPatch stamp_square(CellIndex center, int inflate);

    int n_;
    double width_;
    double delta_;
    std::vector<uint8_t> cells_;
};

/// P5 PGM snapshot, one byte per cell: 0 = usable, 255 = unsafe.
/// Raster rows run from +y down so the image matches a conventional plot.
void write_grid_pgm(const SafetyGrid& grid, std::ostream& out);

}  // namespace hpfnav
