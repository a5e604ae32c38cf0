#pragma once

#include <iosfwd>

#include "hpfnav/potential.hpp"
#include "hpfnav/safety_grid.hpp"
#include "hpfnav/types.hpp"

namespace hpfnav {

/// Unit guidance direction at a world point. `flat` is set when the raw
/// gradient magnitude fell below the flatness floor and the direction was
/// substituted with the straight line to the target.
struct GuidanceVector {
    double ex = 0.0;
    double ey = 0.0;
    bool flat = false;
};

/// Evaluate the guidance policy E = -grad V / |grad V| at a world point:
/// cell-centered central differences (one-sided next to unsafe cells),
/// bilinearly interpolated between the four surrounding cell centers.
/// Out-of-domain points are clamped to the nearest in-domain point.
GuidanceVector guidance_at(const PotentialField& field, const SafetyGrid& grid,
                           double x, double y);

/// Sample E on a decimated lattice of usable cell centers and emit
/// "x,y,ex,ey" rows for quiver-style rendering.
void write_guidance_csv(const PotentialField& field, const SafetyGrid& grid,
                        std::ostream& out, int stride = 4);

}  // namespace hpfnav
