#pragma once

#include <variant>

#include "hpfnav/types.hpp"

namespace hpfnav {

enum class VehicleKind { DifferentialDrive, CarLike };

struct VehicleParams {
    VehicleKind kind = VehicleKind::DifferentialDrive;
    double wheel_radius = 0.085;  // r, m
    double width = 0.35;          // W, wheel track, m
    double wheelbase = 0.30;      // L, car-like only, m
    double body_radius = 0.20;    // collision radius, m
    double phi_max = 0.6;         // steering limit, rad, car-like only
    bool operator==(const VehicleParams&) const = default;
};

/// Differential drive actuator signal.
struct WheelSpeeds {
    double right = 0.0;  // rad/s
    double left = 0.0;   // rad/s
};

/// Car-like actuator signal.
struct SteeringCommand {
    double omega_h = 0.0;  // driving wheel speed, rad/s
    double phi = 0.0;      // steering angle, rad
};

struct BodyTwist {
    double v = 0.0;      // tangential, m/s
    double omega = 0.0;  // angular, rad/s
};

/// Wheel-to-body map: v = r(wR + wL)/2, omega = r(wR - wL)/W.
BodyTwist body_twist(const WheelSpeeds& u, const VehicleParams& p);
/// Car-like: v = r*omega_h, omega = tan(phi)*r*omega_h/L.
BodyTwist body_twist(const SteeringCommand& u, const VehicleParams& p);

/// One explicit Euler step of the unicycle kinematics, heading wrapped.
Pose step_kinematics(const Pose& pose, double v, double omega, double dt);

/// Believed pose by naive dead reckoning: one Euler step of dt_ctrl per
/// control tick, fed directly by measured wheel speeds.
struct OdometryState {
    Pose believed;
    double dt_ctrl = 1.0 / 7.0;
};

void update_odometry(OdometryState& state, const WheelSpeeds& measured,
                     const VehicleParams& params);

}  // namespace hpfnav
