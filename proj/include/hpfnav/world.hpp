#pragma once

#include <limits>
#include <vector>

#include "hpfnav/rng.hpp"
#include "hpfnav/types.hpp"
#include "hpfnav/vehicle.hpp"

namespace hpfnav {

struct Circle {
    Vec2 center;
    double radius = 0.0;
    bool operator==(const Circle&) const = default;
};

struct Segment {
    Vec2 a;
    Vec2 b;
    bool operator==(const Segment&) const = default;
};

/// Single-beam ultrasonic sensor model with dropout, additive noise, and
/// spurious short readings while the robot turns fast.
struct SensorModel {
    double s_max = 2.55;      // saturation range, m
    double sigma = 0.0;       // additive noise std, m
    double p_drop = 0.0;      // per-tick dropout probability
    double p_spur = 0.0;      // spurious-reading probability while turning
    double omega_spur = 0.5;  // |omega| threshold enabling spurious readings
    double spur_min = 0.2;    // spurious value range, m
    double spur_max = 1.0;
    bool operator==(const SensorModel&) const = default;
};

struct SensorReading {
    double value = 0.0;      // m; meaningless when dropped
    bool saturated = false;  // value pinned at s_max
    bool dropped = false;
    double t = 0.0;          // s
};

/// Ground-truth geometry: circles (drums), segments (walls), and the solid
/// square domain boundary.
class World {
public:
    std::vector<Circle> circles;
    std::vector<Segment> segments;
    Vec2 bounds_center;
    double bounds_width = 0.0;
    bool bounds_solid = true;

    /// Distance along the ray to the nearest surface; +inf when nothing is
    /// hit. `dir` must be unit length.
    double raycast(Vec2 origin, Vec2 dir) const;

    /// Signed distance from a point to the nearest surface (negative inside
    /// a circle or outside solid bounds); +inf in an empty, unbounded world.
    double surface_distance(Vec2 p) const;
};

/// Ideal front-beam range: the sensor sits body_radius ahead of the robot
/// center, aimed along the heading. Clamped to s_max when nothing is in
/// range (a saturated reading).
double raycast_ultrasonic(const World& world, const Pose& true_pose,
                          const VehicleParams& vehicle,
                          const SensorModel& model);

/// Degrade an ideal range into a sensor reading: dropout, then spurious
/// short values while |omega_true| > omega_spur, else additive noise
/// clamped to (0.02, s_max]. Draws come from `rng` in a fixed order.
SensorReading degrade(double ideal, const SensorModel& model,
                      double omega_true, double t, Rng& rng);

/// Nearest-surface distance from the robot center minus the body radius;
/// negative means collision.
double min_clearance(const World& world, const Pose& true_pose,
                     const VehicleParams& vehicle);

}  // namespace hpfnav
