#include "hpfnav/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "hpfnav/errors.hpp"

namespace hpfnav {

namespace {

// SOR factor for the Dirichlet model problem on an M-wide window.
double omega_for_window(int m) {
    double w = 2.0 / (1.0 + std::sin(M_PI / (m + 1)));
    return std::clamp(w, 1.0, 1.97);
}

// Internal convergence target: push the iterate close enough to the exact
// discrete solution that per-cell error stays well under 10*tol. The
// contract boundary remains `tol`.
double internal_target(double tol) { return std::max(tol / 32.0, 5e-15); }

struct RelaxResult {
    long long sweeps = 0;
    long long cell_updates = 0;
    double residual = 0.0;
};

// Relax the listed cells (flat indices) in place until the residual over
// them drops to `target`, alternating sweep direction. `stride` is the
// j-stride between i-neighbors.
RelaxResult relax_cells(std::vector<double>& v, const std::vector<int>& cells,
                        int stride, double omega, double target,
                        long long max_sweeps, long long sweeps_used) {
    RelaxResult r;
    if (cells.empty()) return r;
    bool forward = true;
    for (;;) {
        double dmax = 0.0;
        if (forward) {
            for (int c : cells) {
                double m4 = 0.25 * (v[c + stride] + v[c - stride] + v[c + 1] +
                                    v[c - 1]);
                double nv = (1.0 - omega) * v[c] + omega * m4;
                dmax = std::max(dmax, std::fabs(nv - v[c]));
                v[c] = nv;
            }
        } else {
            for (auto it = cells.rbegin(); it != cells.rend(); ++it) {
                int c = *it;
                double m4 = 0.25 * (v[c + stride] + v[c - stride] + v[c + 1] +
                                    v[c - 1]);
                double nv = (1.0 - omega) * v[c] + omega * m4;
                dmax = std::max(dmax, std::fabs(nv - v[c]));
                v[c] = nv;
            }
        }
        forward = !forward;
        ++r.sweeps;
        r.cell_updates += static_cast<long long>(cells.size());
        bool budget_out = sweeps_used + r.sweeps >= max_sweeps;
        if (dmax / omega <= 0.5 * target || budget_out) {
            double res = 0.0;
            for (int c : cells) {
                double m4 = 0.25 * (v[c + stride] + v[c - stride] + v[c + 1] +
                                    v[c - 1]);
                res = std::max(res, std::fabs(v[c] - m4));
            }
            r.residual = res;
            if (res <= target || budget_out) return r;
        }
    }
}

// Relaxable cells inside [i0,i1]x[j0,j1]: usable, in the target component,
// not the target itself. Row-major order.
std::vector<int> collect_cells(const SafetyGrid& grid,
                               const std::vector<uint8_t>& comp,
                               CellIndex target, int i0, int i1, int j0,
                               int j1) {
    int n = grid.size();
    std::vector<int> cells;
    i0 = std::max(i0, 1);
    j0 = std::max(j0, 1);
    i1 = std::min(i1, n - 2);
    j1 = std::min(j1, n - 2);
    for (int i = i0; i <= i1; ++i) {
        for (int j = j0; j <= j1; ++j) {
            std::size_t k = static_cast<std::size_t>(i) * n + j;
            if (grid.unsafe(i, j) || !comp[k]) continue;
            if (i == target.i && j == target.j) continue;
            cells.push_back(static_cast<int>(k));
        }
    }
    return cells;
}

double residual_over(const std::vector<double>& v, const std::vector<int>& cells,
                     int stride) {
    double res = 0.0;
    for (int c : cells) {
        double m4 =
            0.25 * (v[c + stride] + v[c - stride] + v[c + 1] + v[c - 1]);
        res = std::max(res, std::fabs(v[c] - m4));
    }
    return res;
}

}  // namespace

PotentialField solve_full(const SafetyGrid& grid, CellIndex target,
                          const SolverOptions& opts) {
    int n = grid.size();
    if (!grid.in_bounds(target.i, target.j) || grid.unsafe(target))
        throw ConfigError("solve_full: target cell is unsafe");
    if (!(opts.tol > 0.0)) throw ConfigError("solve_full: tol must be > 0");
    if (!(opts.omega >= 1.0 && opts.omega < 2.0))
        throw ConfigError("solve_full: omega must lie in [1, 2)");

    PotentialField f;
    f.n_ = n;
    f.target_ = target;
    f.tol_ = opts.tol;
    f.values_.assign(static_cast<std::size_t>(n) * n, 0.5);

    auto comp = grid.reachable_from(target);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::size_t k = static_cast<std::size_t>(i) * n + j;
            // sealed-off usable cells carry the exact constant-1 solution
            if (grid.unsafe(i, j) || !comp[k]) f.values_[k] = 1.0;
        }
    }
    f.values_[static_cast<std::size_t>(target.i) * n + target.j] = 0.0;

    auto cells = collect_cells(grid, comp, target, 1, n - 2, 1, n - 2);
    RelaxResult r = relax_cells(f.values_, cells, n, opts.omega,
                                internal_target(opts.tol), opts.max_sweeps, 0);
    f.sweeps_ = r.sweeps;
    f.cell_updates_ = r.cell_updates;
    f.last_residual_ = r.residual;
    if (r.residual > opts.tol)
        throw SolveError("solve_full: sweep budget exhausted", r.residual);
    return f;
}

void update_local(PotentialField& field, const SafetyGrid& grid,
                  const CellPatch& patch, double tol, int margin) {
    if (patch.empty()) return;
    int n = grid.size();
    if (field.size() != n)
        throw ConfigError("update_local: field/grid size mismatch");
    if (grid.unsafe(field.target_))
        throw ConfigError("update_local: target cell is unsafe");
    if (!(tol > 0.0)) throw ConfigError("update_local: tol must be > 0");
    if (margin < 1) throw ConfigError("update_local: margin must be >= 1");

    field.tol_ = tol;
    field.sweeps_ = 0;
    field.cell_updates_ = 0;
    auto& v = field.values_;
    for (const auto& c : patch.cells)
        v[static_cast<std::size_t>(c.i) * n + c.j] = 1.0;

    // the patch may seal off part of the usable space; those cells take the
    // exact constant-1 solution
    auto comp = grid.reachable_from(field.target_);
    for (int i = 1; i < n - 1; ++i) {
        for (int j = 1; j < n - 1; ++j) {
            std::size_t k = static_cast<std::size_t>(i) * n + j;
            if (!grid.unsafe(i, j) && !comp[k]) v[k] = 1.0;
        }
    }

    double target_res = internal_target(tol);
    long long max_sweeps = SolverOptions{}.max_sweeps;
    auto all_cells = collect_cells(grid, comp, field.target_, 1, n - 2, 1, n - 2);

    int m = margin;
    for (;;) {
        int i0 = std::max(1, patch.lo.i - m);
        int i1 = std::min(n - 2, patch.hi.i + m);
        int j0 = std::max(1, patch.lo.j - m);
        int j1 = std::min(n - 2, patch.hi.j + m);
        bool whole = i0 == 1 && j0 == 1 && i1 == n - 2 && j1 == n - 2;
        auto cells = whole ? all_cells
                           : collect_cells(grid, comp, field.target_, i0, i1,
                                           j0, j1);
        int width = std::max(i1 - i0, j1 - j0) + 1;
        RelaxResult r = relax_cells(v, cells, n, omega_for_window(width),
                                    target_res, max_sweeps, field.sweeps_);
        field.sweeps_ += r.sweeps;
        field.cell_updates_ += r.cell_updates;
        field.last_residual_ = r.residual;
        if (field.sweeps_ >= max_sweeps && r.residual > tol)
            throw SolveError("update_local: sweep budget exhausted",
                             r.residual);
        if (whole) return;
        double global = residual_over(v, all_cells, n);
        field.last_residual_ = global;
        if (global <= tol) return;
        m *= 2;
    }
}

double residual(const PotentialField& field, const SafetyGrid& grid) {
    int n = grid.size();
    double res = 0.0;
    for (int i = 1; i < n - 1; ++i) {
        for (int j = 1; j < n - 1; ++j) {
            if (grid.unsafe(i, j)) continue;
            if (i == field.target().i && j == field.target().j) continue;
            double m4 = 0.25 * (field.value(i + 1, j) + field.value(i - 1, j) +
                                field.value(i, j + 1) + field.value(i, j - 1));
            res = std::max(res, std::fabs(field.value(i, j) - m4));
        }
    }
    return res;
}

double dirichlet_energy(const PotentialField& field, const SafetyGrid& grid) {
    int n = grid.size();
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            bool free_a = grid.usable(i, j);
            if (i + 1 < n && (free_a || grid.usable(i + 1, j))) {
                double d = field.value(i, j) - field.value(i + 1, j);
                sum += d * d;
            }
            if (j + 1 < n && (free_a || grid.usable(i, j + 1))) {
                double d = field.value(i, j) - field.value(i, j + 1);
                sum += d * d;
            }
        }
    }
    return sum;
}

void write_field_pgm16(const PotentialField& field, std::ostream& out) {
    int n = field.size();
    out << "P5\n" << n << " " << n << "\n65535\n";
    for (int row = 0; row < n; ++row) {
        int j = n - 1 - row;
        for (int i = 0; i < n; ++i) {
            double v = std::clamp(field.value(i, j), 0.0, 1.0);
            auto q = static_cast<unsigned>(std::lround(v * 65535.0));
            out.put(static_cast<char>((q >> 8) & 0xff));
            out.put(static_cast<char>(q & 0xff));
        }
    }
}

void write_field_csv(const PotentialField& field, std::ostream& out) {
    int n = field.size();
    char buf[32];
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", field.value(i, j));
            out << buf << (j + 1 < n ? "," : "\n");
        }
    }
}

}  // namespace hpfnav
