#pragma once

#include <variant>

#include "hpfnav/guidance.hpp"
#include "hpfnav/types.hpp"
#include "hpfnav/vehicle.hpp"

namespace hpfnav {

struct ControllerParams {
    double v_d = 0.4;      // max tangential speed, m/s
    double omega_d = 1.5;  // max angular speed, rad/s
    double R_c = 0.5;      // deceleration radius, m
    bool operator==(const ControllerParams&) const = default;
};

/// Alignment error between the guidance direction and the robot heading,
/// plus the straight-line distance to the target.
struct HeadingError {
    double eta_d = 1.0;  // cos(dtheta)
    double eta_c = 0.0;  // sin(dtheta)
    double dst = 0.0;    // m
};

struct ControlCommand {
    double v_c = 0.0;      // m/s
    double omega_c = 0.0;  // rad/s
};

/// dtheta = guidance angle - heading, wrapped; the heading stands in for
/// the velocity direction (identical while moving, well defined at rest).
HeadingError heading_error(const GuidanceVector& guidance, const Pose& believed,
                           Vec2 target);

/// Angular synchronizing signal: proportional omega_d * eta_c while the
/// alignment cosine is non-negative, bang-bang at full rate otherwise
/// (exact antipodal breaks the tie toward +omega_d).
double angular_command(const HeadingError& err, const ControllerParams& params);

/// Safety-modulated tangential speed: scaled down by alignment quality and
/// by target proximity inside R_c; zero at the antipodal configuration.
double tangential_command(const HeadingError& err, double omega_c,
                          const ControllerParams& params);

/// Unmodulated variant: full speed with only the decelerating approach
/// profile retained.
double tangential_constant(const HeadingError& err,
                           const ControllerParams& params);

/// Map a body command to actuator space (inverse of the wheel-to-body map).
/// Car-like actuation with v_c = 0 and omega_c != 0 throws
/// SingularActuation (a car cannot turn in place).
std::variant<WheelSpeeds, SteeringCommand> actuation(
    const ControlCommand& cmd, const VehicleParams& params);

}  // namespace hpfnav
