#include "hpfnav/mission.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "hpfnav/errors.hpp"
#include "hpfnav/rng.hpp"

namespace hpfnav {

const char* to_string(MissionStatus status) {
    switch (status) {
        case MissionStatus::Success: return "SUCCESS";
        case MissionStatus::Timeout: return "TIMEOUT";
        case MissionStatus::Stuck: return "STUCK";
        case MissionStatus::Collision: return "COLLISION";
    }
    return "UNKNOWN";
}

namespace {

Pose to_grid_frame(const Pose& p, Vec2 center) {
    return {p.x - center.x, p.y - center.y, p.theta};
}

}  // namespace

Mission run_mission(const Scenario& scenario, const MissionConfig& config,
                    uint64_t seed) {
    if (config.vehicle.kind != VehicleKind::DifferentialDrive)
        throw ConfigError(
            "run_mission: only the differential drive vehicle is supported "
            "(car-like actuation is singular at the antipodal stop)");

    Vec2 center = config.map_center.value_or(
        Vec2{(scenario.start.x + scenario.target.x) / 2.0,
             (scenario.start.y + scenario.target.y) / 2.0});
    World world = scenario.make_world();
    world.bounds_center = center;
    world.bounds_width = config.domain_width;

    SafetyGrid grid(config.grid_n, config.domain_width);
    long long apriori_cells = 0;
    if (config.use_apriori) {
        for (const auto& c : scenario.apriori) {
            CellPatch p = grid.mark_disc(c.center - center, c.radius,
                                         config.inflate_cells);
            apriori_cells += static_cast<long long>(p.size());
        }
    }

    CellIndex target_cell = grid.world_to_cell(scenario.target.x - center.x,
                                               scenario.target.y - center.y);
    if (!grid.interior(target_cell.i, target_cell.j) || grid.unsafe(target_cell))
        throw ScenarioError("run_mission: target cell is blocked in the initial grid");
    if (min_clearance(world, scenario.start, config.vehicle) <= 0.0)
        throw ScenarioError("run_mission: start pose is not collision-free");

    PotentialField field = solve_full(grid, target_cell, config.solver);

    Rng rng(seed);
    Pose true_pose = scenario.start;
    OdometryState odom{scenario.start, config.dt_ctrl};
    WheelSpeeds wheels{};
    double goal_radius = config.resolved_goal_radius();
    int substeps = std::max(1, static_cast<int>(std::lround(config.dt_ctrl / config.dt_phys)));
    double dt_sub = config.dt_ctrl / substeps;
    double initial_dst = (scenario.target - scenario.start.position()).norm();

    MissionResult result;
    result.seed = seed;
    result.apriori_cells = apriori_cells;
    result.min_clearance = min_clearance(world, true_pose, config.vehicle);

    std::vector<TraceRecord> trace;
    bool collided = false;
    double stall_time = 0.0;
    long long live_ticks = 0, total_ticks = 0;
    double t = 0.0;
    double v_believed = 0.0;
    MissionStatus status = MissionStatus::Timeout;

    for (;;) {
        if (t > config.t_max + 1e-12) {
            status = MissionStatus::Timeout;
            break;
        }
        TraceRecord rec;
        rec.t = t;
        ++total_ticks;

        // sense at the true pose; the held command's twist gates the
        // turn-induced spurious readings
        double omega_now = body_twist(wheels, config.vehicle).omega;
        SensorReading reading;
        if (config.sensing) {
            double ideal = raycast_ultrasonic(world, true_pose, config.vehicle,
                                              config.sensor);
            reading = degrade(ideal, config.sensor, omega_now, t, rng);
        } else {
            reading = SensorReading{config.sensor.s_max, true, false, t};
        }
        if (!reading.dropped) ++live_ticks;

        // register the detection and fold it into the guidance field
        int recompute = 0;
        if (config.sensing && !reading.dropped && !reading.saturated) {
            CellPatch patch = grid.register_detection(
                to_grid_frame(odom.believed, center), reading.value,
                config.vehicle.width, config.inflate_cells, config.beam_skew);
            result.hazard_cells += static_cast<long long>(patch.size());
            if (!patch.empty()) {
                if (grid.unsafe(target_cell)) {
                    // a registration sealed the target cell; only wiping the
                    // belief map can rectify that
                    if (result.resets < config.max_resets) {
                        grid.reset();
                        field = solve_full(grid, target_cell, config.solver);
                        ++result.resets;
                        recompute = 3;
                    } else {
                        result.target_connected = false;
                        status = MissionStatus::Stuck;
                        trace.push_back(rec);
                        break;
                    }
                } else {
                    update_local(field, grid, patch, config.solver.tol,
                                 config.update_margin);
                    recompute = 1;
                }
            }
        }

        // dead reckoning across the interval the current command was held
        WheelSpeeds measured = wheels;
        if (config.odom_noise_sigma > 0.0) {
            measured.right *= 1.0 + config.odom_noise_sigma * rng.normal();
            measured.left *= 1.0 + config.odom_noise_sigma * rng.normal();
        }
        v_believed = body_twist(measured, config.vehicle).v;
        update_odometry(odom, measured, config.vehicle);

        // guidance and control at the believed pose
        GuidanceVector e = guidance_at(field, grid,
                                       odom.believed.x - center.x,
                                       odom.believed.y - center.y);
        HeadingError err = heading_error(e, odom.believed, scenario.target);

        rec.true_pose = true_pose;
        rec.believed = odom.believed;
        rec.sensor_value = reading.value;
        rec.saturated = reading.saturated;
        rec.dropped = reading.dropped;
        rec.eta_d = err.eta_d;
        rec.eta_c = err.eta_c;
        rec.dst = err.dst;
        rec.clearance = min_clearance(world, true_pose, config.vehicle);

        if (err.dst <= goal_radius) {
            wheels = WheelSpeeds{};
            rec.recompute = recompute;
            trace.push_back(rec);
            status = MissionStatus::Success;
            break;
        }

        double omega_c = angular_command(err, config.controller);
        double v_c = config.modulation
                         ? tangential_command(err, omega_c, config.controller)
                         : tangential_constant(err, config.controller);
        wheels = std::get<WheelSpeeds>(
            actuation(ControlCommand{v_c, omega_c}, config.vehicle));

        // stall recovery: a robot that should be moving but is not for
        // hold_s seconds gets a full recompute, then a belief reset, then
        // the mission is declared stuck
        if (std::fabs(v_believed) < config.stall.v_min) {
            stall_time += config.dt_ctrl;
        } else {
            stall_time = 0.0;
        }
        if (stall_time >= config.stall.hold_s) {
            stall_time = 0.0;
            if (result.full_recomputes < config.max_full_recomputes) {
                field = solve_full(grid, target_cell, config.solver);
                ++result.full_recomputes;
                recompute = std::max(recompute, 2);
            } else if (result.resets < config.max_resets) {
                grid.reset();
                field = solve_full(grid, target_cell, config.solver);
                ++result.resets;
                result.full_recomputes = 0;
                recompute = 3;
            } else {
                result.target_connected = grid.connected(
                    grid.world_to_cell(odom.believed.x - center.x,
                                       odom.believed.y - center.y),
                    target_cell);
                rec.v_c = v_c;
                rec.omega_c = omega_c;
                rec.recompute = recompute;
                trace.push_back(rec);
                status = MissionStatus::Stuck;
                break;
            }
        }

        rec.v_c = v_c;
        rec.omega_c = omega_c;
        rec.wheel_right = wheels.right;
        rec.wheel_left = wheels.left;
        rec.recompute = recompute;
        trace.push_back(rec);

        // hold the wheel command and integrate the true pose to the next tick
        BodyTwist twist = body_twist(wheels, config.vehicle);
        for (int s = 0; s < substeps; ++s) {
            Pose prev = true_pose;
            true_pose = step_kinematics(true_pose, twist.v, twist.omega, dt_sub);
            result.path_length +=
                std::hypot(true_pose.x - prev.x, true_pose.y - prev.y);
            double c = min_clearance(world, true_pose, config.vehicle);
            result.min_clearance = std::min(result.min_clearance, c);
            if (c < 0.0) collided = true;
        }
        t += config.dt_ctrl;
    }

    if (collided) status = MissionStatus::Collision;
    result.status = status;
    result.trip_time = t;
    result.path_ratio =
        initial_dst > 0.0 ? result.path_length / initial_dst : 0.0;
    result.sensor_availability =
        total_ticks > 0 ? static_cast<double>(live_ticks) / total_ticks : 0.0;

    return Mission{result, std::move(trace), std::move(grid), std::move(field),
                   center};
}

Mission run_mission(const Scenario& scenario) {
    return run_mission(scenario, scenario.config, scenario.seed);
}

std::vector<ComparisonRow> run_ab_comparison(const Scenario& scenario,
                                             const MissionConfig& config,
                                             uint64_t seed,
                                             CompareVariant variant) {
    std::vector<ComparisonRow> rows;
    if (variant == CompareVariant::AprioriVsSensor) {
        MissionConfig apriori = config;
        apriori.sensing = false;
        apriori.use_apriori = true;
        MissionConfig sensor = config;
        sensor.sensing = true;
        sensor.use_apriori = false;
        rows.push_back({"apriori", run_mission(scenario, apriori, seed).result});
        rows.push_back({"sensor-only", run_mission(scenario, sensor, seed).result});
    } else {
        MissionConfig modulated = config;
        modulated.modulation = true;
        MissionConfig constant = config;
        constant.modulation = false;
        rows.push_back({"modulated", run_mission(scenario, modulated, seed).result});
        rows.push_back({"constant", run_mission(scenario, constant, seed).result});
    }
    return rows;
}

void write_trace_csv(const std::vector<TraceRecord>& trace, std::ostream& out) {
    out << "t,true_x,true_y,true_theta,believed_x,believed_y,believed_theta,"
           "sensor_value,saturated,dropped,eta_d,eta_c,dst,v_c,omega_c,"
           "wheel_right,wheel_left,clearance,recompute\n";
    char buf[640];
    for (const auto& r : trace) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,"
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                      r.t, r.true_pose.x, r.true_pose.y, r.true_pose.theta,
                      r.believed.x, r.believed.y, r.believed.theta,
                      r.sensor_value, r.saturated ? 1 : 0, r.dropped ? 1 : 0,
                      r.eta_d, r.eta_c, r.dst, r.v_c, r.omega_c, r.wheel_right,
                      r.wheel_left, r.clearance, r.recompute);
        out << buf;
    }
}

void write_summary(const MissionResult& result, const std::string& scenario_name,
                   std::ostream& out) {
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "scenario=" << scenario_name << "\n"
        << "seed=" << result.seed << "\n"
        << "status=" << to_string(result.status) << "\n"
        << "trip_time=" << num(result.trip_time) << "\n"
        << "path_length=" << num(result.path_length) << "\n"
        << "path_ratio=" << num(result.path_ratio) << "\n"
        << "min_clearance=" << num(result.min_clearance) << "\n"
        << "hazard_cells=" << result.hazard_cells << "\n"
        << "apriori_cells=" << result.apriori_cells << "\n"
        << "sensor_availability=" << num(result.sensor_availability) << "\n"
        << "full_recomputes=" << result.full_recomputes << "\n"
        << "resets=" << result.resets << "\n"
        << "target_connected=" << (result.target_connected ? 1 : 0) << "\n";
}

}  // namespace hpfnav
