#include "hpfnav/safety_grid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

#include "hpfnav/errors.hpp"

namespace hpfnav {

namespace {
// nearest integer, half away from zero
int round_half_away(double v) {
    return static_cast<int>(v < 0.0 ? std::ceil(v - 0.5) : std::floor(v + 0.5));
}
}  // namespace

SafetyGrid::SafetyGrid(int n, double domain_width)
    : n_(n), width_(domain_width) {
    if (n < 3) throw ConfigError("SafetyGrid: cell count must be >= 3");
    if (!(domain_width > 0.0))
        throw ConfigError("SafetyGrid: domain width must be positive");
    delta_ = width_ / n_;
    cells_.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (int k = 0; k < n_; ++k) {
        cells_[idx(0, k)] = 1;
        cells_[idx(n_ - 1, k)] = 1;
        cells_[idx(k, 0)] = 1;
        cells_[idx(k, n_ - 1)] = 1;
    }
}

CellIndex SafetyGrid::world_to_cell(double x, double y) const {
    // cell-center convention: the domain center falls on the center of the
    // middle cell when N is odd
    int i = round_half_away((x + 0.5 * width_) / delta_ - 0.5);
    int j = round_half_away((y + 0.5 * width_) / delta_ - 0.5);
    i = std::clamp(i, 0, n_ - 1);
    j = std::clamp(j, 0, n_ - 1);
    return {i, j};
}

Vec2 SafetyGrid::cell_center(CellIndex c) const {
    return {(c.i + 0.5) * delta_ - 0.5 * width_,
            (c.j + 0.5) * delta_ - 0.5 * width_};
}

CellPatch SafetyGrid::stamp_square(CellIndex center, int inflate) {
    CellPatch patch;
    int i0 = std::max(1, center.i - inflate);
    int i1 = std::min(n_ - 2, center.i + inflate);
    int j0 = std::max(1, center.j - inflate);
    int j1 = std::min(n_ - 2, center.j + inflate);
    for (int i = i0; i <= i1; ++i) {
        for (int j = j0; j <= j1; ++j) {
            if (cells_[idx(i, j)]) continue;
            cells_[idx(i, j)] = 1;
            if (patch.empty()) {
                patch.lo = patch.hi = {i, j};
            } else {
                patch.lo.i = std::min(patch.lo.i, i);
                patch.lo.j = std::min(patch.lo.j, j);
                patch.hi.i = std::max(patch.hi.i, i);
                patch.hi.j = std::max(patch.hi.j, j);
            }
            patch.cells.push_back({i, j});
        }
    }
    return patch;
}

CellPatch SafetyGrid::register_detection(const Pose& believed, double range,
                                         double robot_width, int inflate,
                                         double beam_skew) {
    double reach = range + 0.5 * robot_width;
    double px = believed.x + reach * std::cos(believed.theta + beam_skew);
    double py = believed.y + reach * std::sin(believed.theta + beam_skew);
    return stamp_square(world_to_cell(px, py), inflate);
}

CellPatch SafetyGrid::mark_disc(Vec2 center, double radius, int inflate) {
    CellPatch total;
    CellIndex c = world_to_cell(center.x, center.y);
    int reach = static_cast<int>(std::ceil(radius / delta_)) + inflate + 1;
    for (int i = c.i - reach; i <= c.i + reach; ++i) {
        for (int j = c.j - reach; j <= c.j + reach; ++j) {
            if (!interior(i, j)) continue;
            Vec2 p = cell_center({i, j});
            if ((p - center).norm() > radius) continue;
            CellPatch part = stamp_square({i, j}, inflate);
            for (const auto& cell : part.cells) {
                if (total.empty()) {
                    total.lo = total.hi = cell;
                } else {
                    total.lo.i = std::min(total.lo.i, cell.i);
                    total.lo.j = std::min(total.lo.j, cell.j);
                    total.hi.i = std::max(total.hi.i, cell.i);
                    total.hi.j = std::max(total.hi.j, cell.j);
                }
                total.cells.push_back(cell);
            }
        }
    }
    return total;
}

std::vector<uint8_t> SafetyGrid::reachable_from(CellIndex seed) const {
    std::vector<uint8_t> mask(cells_.size(), 0);
    if (!in_bounds(seed.i, seed.j) || unsafe(seed)) return mask;
    std::vector<CellIndex> stack{seed};
    mask[idx(seed.i, seed.j)] = 1;
    while (!stack.empty()) {
        CellIndex c = stack.back();
        stack.pop_back();
        constexpr int di[4] = {1, -1, 0, 0};
        constexpr int dj[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            int a = c.i + di[k];
            int b = c.j + dj[k];
            if (!in_bounds(a, b) || unsafe(a, b) || mask[idx(a, b)]) continue;
            mask[idx(a, b)] = 1;
            stack.push_back({a, b});
        }
    }
    return mask;
}

bool SafetyGrid::connected(CellIndex a, CellIndex b) const {
    if (!in_bounds(a.i, a.j) || !in_bounds(b.i, b.j)) return false;
    if (unsafe(a) || unsafe(b)) return false;
    if (a == b) return true;
    auto mask = reachable_from(a);
    return mask[idx(b.i, b.j)] != 0;
}

void SafetyGrid::reset() {
    std::fill(cells_.begin(), cells_.end(), 0);
    for (int k = 0; k < n_; ++k) {
        cells_[idx(0, k)] = 1;
        cells_[idx(n_ - 1, k)] = 1;
        cells_[idx(k, 0)] = 1;
        cells_[idx(k, n_ - 1)] = 1;
    }
}

int SafetyGrid::unsafe_count() const {
    int count = 0;
    for (uint8_t c : cells_) count += c;
    return count;
}

void write_grid_pgm(const SafetyGrid& grid, std::ostream& out) {
    int n = grid.size();
    out << "P5\n" << n << " " << n << "\n255\n";
    for (int row = 0; row < n; ++row) {
        int j = n - 1 - row;
        for (int i = 0; i < n; ++i) {
            out.put(grid.unsafe(i, j) ? static_cast<char>(255) : 0);
        }
    }
}

}  // namespace hpfnav
