#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hpfnav/safety_grid.hpp"
#include "hpfnav/types.hpp"

namespace hpfnav {

struct SolverOptions {
    double tol = 1e-12;          // max interior residual at convergence
    double omega = 1.8;          // SOR over-relaxation factor, [1, 2)
    long long max_sweeps = 200000;
    bool operator==(const SolverOptions&) const = default;
};

/// Converged harmonic potential over the safety grid: V = 1 on unsafe
/// cells (and on usable cells sealed off from the target, where the
/// Dirichlet solution is identically 1), V = 0 at the target, and every
/// relaxed cell within `tol` of the mean of its 4 neighbors.
class PotentialField {
public:
    int size() const { return n_; }
    CellIndex target() const { return target_; }
    double tol() const { return tol_; }
    /// Max interior residual measured when the last solve returned.
    double last_residual() const { return last_residual_; }
    /// Relaxation sweeps performed by the last solve/update.
    long long sweeps() const { return sweeps_; }
    /// Cell relaxation operations performed by the last solve/update
    /// (sweeps weighted by the cells each touched).
    long long cell_updates() const { return cell_updates_; }

    double value(int i, int j) const {
        return values_[static_cast<std::size_t>(i) * n_ + j];
    }
    const std::vector<double>& values() const { return values_; }

    /// Test hook: overwrite one cell value (perturbation experiments).
    void poke(int i, int j, double v) {
        values_[static_cast<std::size_t>(i) * n_ + j] = v;
    }

private:
    friend PotentialField solve_full(const SafetyGrid&, CellIndex,
                                     const SolverOptions&);
    friend void update_local(PotentialField&, const SafetyGrid&,
                             const CellPatch&, double, int);

    int n_ = 0;
    CellIndex target_;
    double tol_ = 0.0;
    double last_residual_ = 0.0;
    long long sweeps_ = 0;
    long long cell_updates_ = 0;
    std::vector<double> values_;
};

/// Solve the Laplace-Dirichlet problem from scratch: V initialized to 1 on
/// unsafe cells, 0 at the target, 0.5 on relaxable cells, then SOR sweeps
/// (row-major, direction alternating) until the residual drops below tol.
/// Throws ConfigError when the target is unsafe, SolveError when the sweep
/// budget runs out with the residual still above tol.
PotentialField solve_full(const SafetyGrid& grid, CellIndex target,
                          const SolverOptions& opts = {});

/// Fold one registration patch into a converged field: pin V = 1 on the
/// patch, relax the bounding window inflated by `margin` (edge values
/// fixed), then verify the global residual; while any cell outside the
/// window exceeds tol the margin doubles, escalating to a whole-grid
/// relax warm-started from the current values. The returned field meets
/// the same convergence contract as solve_full.
void update_local(PotentialField& field, const SafetyGrid& grid,
                  const CellPatch& patch, double tol = 1e-12, int margin = 16);

/// Max over interior usable non-target cells of |V - mean of 4 neighbors|.
double residual(const PotentialField& field, const SafetyGrid& grid);

/// Discrete Dirichlet energy: sum of (V_a - V_b)^2 over 4-adjacent pairs
/// with at least one usable endpoint (unsafe neighbors enter at V = 1).
double dirichlet_energy(const PotentialField& field, const SafetyGrid& grid);

/// 16-bit P5 PGM, linear 0 -> 0, 1 -> 65535; rows from +y down.
void write_field_pgm16(const PotentialField& field, std::ostream& out);
/// Full-precision CSV, one line per i-row, j ascending within the line.
void write_field_csv(const PotentialField& field, std::ostream& out);

}  // namespace hpfnav
