#pragma once

#include <string>
#include <vector>

#include "hpfnav/mission.hpp"

namespace hpfnav {

/// Write the post-run artifact set into `out_dir` (created if missing):
/// trace.csv, grid.pgm, field.pgm, field.csv, guidance.csv, overlay.svg,
/// summary.txt. Returns the paths written. I/O failures throw
/// std::runtime_error naming the path.
std::vector<std::string> render_artifacts(const Scenario& scenario,
                                          const Mission& mission,
                                          const std::string& out_dir);

/// SVG overlay: world geometry, registered hazard cells, true and believed
/// trajectories, start and target markers.
void write_overlay_svg(const Scenario& scenario, const Mission& mission,
                       std::ostream& out);

}  // namespace hpfnav
