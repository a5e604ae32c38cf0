#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hpfnav/controller.hpp"
#include "hpfnav/potential.hpp"
#include "hpfnav/types.hpp"
#include "hpfnav/vehicle.hpp"
#include "hpfnav/world.hpp"

namespace hpfnav {

struct StallConfig {
    double v_min = 0.02;  // believed speed below which the robot counts as stalled, m/s
    double hold_s = 3.0;  // continuous stall time that triggers recovery, s
    bool operator==(const StallConfig&) const = default;
};

/// Everything the mission loop needs beyond world geometry. All values have
/// working defaults; scenario files override individual keys.
struct MissionConfig {
    int grid_n = 129;
    double domain_width = 6.0;
    std::optional<Vec2> map_center;  // default: midpoint of start and target

    ControllerParams controller;
    VehicleParams vehicle;
    SensorModel sensor;

    double dt_phys = 0.01;       // physics step target, s
    double dt_ctrl = 1.0 / 7.0;  // control period, s
    double t_max = 300.0;        // mission timeout, s

    std::optional<double> goal_radius;  // default: one cell size
    StallConfig stall;
    int max_full_recomputes = 2;
    int max_resets = 1;

    bool modulation = true;  // false: constant tangential speed mode
    bool sensing = true;     // false: run on the a-priori map only
    bool use_apriori = true;

    int inflate_cells = 2;   // registration safety margin, cells
    double beam_skew = 0.0;  // sensor mount misalignment, rad

    double odom_noise_sigma = 0.0;  // multiplicative wheel-speed noise std

    SolverOptions solver;
    int update_margin = 16;  // initial window margin for local re-solves

    double resolved_goal_radius() const {
        return goal_radius.value_or(domain_width / grid_n);
    }
    bool operator==(const MissionConfig&) const = default;
};

/// World geometry plus mission configuration, all in the robot's initial
/// frame (robot starts at the origin, heading along +x).
struct Scenario {
    std::string name;
    std::vector<Circle> circles;
    std::vector<Segment> segments;
    Pose start;   // conventionally (0, 0, 0)
    Vec2 target;  // m, robot frame
    std::vector<Circle> apriori;  // pre-registered before t = 0
    MissionConfig config;
    uint64_t seed = 1;

    Vec2 map_center() const {
        return config.map_center.value_or(
            Vec2{(start.x + target.x) / 2.0, (start.y + target.y) / 2.0});
    }
    World make_world() const;
    bool operator==(const Scenario&) const = default;
};

/// Parse and validate a scenario file. `overrides` are "key=value" entries
/// applied to the document first (dotted paths into config, or "seed").
/// Throws ScenarioError with the offending field or rule named.
Scenario load_scenario(const std::string& path,
                       const std::vector<std::string>& overrides = {});

/// Structural round-trip counterpart of load_scenario.
void save_scenario(const Scenario& scenario, const std::string& path);

std::string scenario_to_json_text(const Scenario& scenario);
Scenario scenario_from_json_text(const std::string& text,
                                 const std::string& origin = "<string>",
                                 const std::vector<std::string>& overrides = {});

}  // namespace hpfnav
