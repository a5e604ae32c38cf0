#include "hpfnav/vehicle.hpp"

#include <cmath>

#include "hpfnav/errors.hpp"

namespace hpfnav {

BodyTwist body_twist(const WheelSpeeds& u, const VehicleParams& p) {
    double r = p.wheel_radius;
    return {r * (u.right + u.left) / 2.0, r * (u.right - u.left) / p.width};
}

BodyTwist body_twist(const SteeringCommand& u, const VehicleParams& p) {
    double v = p.wheel_radius * u.omega_h;
    return {v, std::tan(u.phi) * v / p.wheelbase};
}

Pose step_kinematics(const Pose& pose, double v, double omega, double dt) {
    if (!(dt > 0.0)) throw ConfigError("step_kinematics: dt must be > 0");
    Pose next;
    next.x = pose.x + dt * v * std::cos(pose.theta);
    next.y = pose.y + dt * v * std::sin(pose.theta);
    next.theta = wrap_angle(pose.theta + dt * omega);
    return next;
}

void update_odometry(OdometryState& state, const WheelSpeeds& measured,
                     const VehicleParams& params) {
    if (!(state.dt_ctrl > 0.0))
        throw ConfigError("update_odometry: dt_ctrl must be > 0");
    BodyTwist t = body_twist(measured, params);
    state.believed = step_kinematics(state.believed, t.v, t.omega, state.dt_ctrl);
}

}  // namespace hpfnav
