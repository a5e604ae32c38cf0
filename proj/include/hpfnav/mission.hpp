#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hpfnav/scenario.hpp"

namespace hpfnav {

enum class MissionStatus { Success, Timeout, Stuck, Collision };

const char* to_string(MissionStatus status);

struct MissionResult {
    MissionStatus status = MissionStatus::Timeout;
    double trip_time = 0.0;       // s
    double path_length = 0.0;     // m, true trajectory
    double path_ratio = 0.0;      // K = path_length / initial straight-line distance
    double min_clearance = 0.0;   // m, over the whole run; negative = collision
    long long hazard_cells = 0;   // cells registered by sensing during the run
    long long apriori_cells = 0;  // cells pre-registered before t = 0
    double sensor_availability = 0.0;  // fraction of non-dropped ticks
    int full_recomputes = 0;
    int resets = 0;
    bool target_connected = true;  // belief-map diagnosis attached on STUCK
    uint64_t seed = 0;
};

/// One row per control tick.
struct TraceRecord {
    double t = 0.0;
    Pose true_pose;
    Pose believed;
    double sensor_value = 0.0;
    bool saturated = false;
    bool dropped = false;
    double eta_d = 1.0;
    double eta_c = 0.0;
    double dst = 0.0;
    double v_c = 0.0;
    double omega_c = 0.0;
    double wheel_right = 0.0;
    double wheel_left = 0.0;
    double clearance = 0.0;
    int recompute = 0;  // 0 none, 1 local update, 2 full solve, 3 reset + solve
};

struct Mission {
    MissionResult result;
    std::vector<TraceRecord> trace;
    SafetyGrid grid;       // final belief map
    PotentialField field;  // final guidance potential
    Vec2 map_center;       // grid frame offset in scenario coordinates
};

/// Run the sense -> register -> locally-recompute -> guide -> control loop
/// until the target is reached, the mission times out, recovery is
/// exhausted, or a collision is recorded. Deterministic in
/// (scenario, config, seed). Throws ScenarioError for infeasible setups
/// (blocked target cell, colliding start pose).
Mission run_mission(const Scenario& scenario, const MissionConfig& config,
                    uint64_t seed);

/// Convenience overload: scenario's own config and seed.
Mission run_mission(const Scenario& scenario);

enum class CompareVariant { AprioriVsSensor, ModulatedVsConstant };

struct ComparisonRow {
    std::string variant;
    MissionResult result;
};

/// Run the same scenario and seed under both sides of a variant pair and
/// report the results side by side.
std::vector<ComparisonRow> run_ab_comparison(const Scenario& scenario,
                                             const MissionConfig& config,
                                             uint64_t seed,
                                             CompareVariant variant);

void write_trace_csv(const std::vector<TraceRecord>& trace, std::ostream& out);
void write_summary(const MissionResult& result, const std::string& scenario_name,
                   std::ostream& out);

}  // namespace hpfnav
