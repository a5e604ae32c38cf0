#include "hpfnav/controller.hpp"

#include <algorithm>
#include <cmath>

#include "hpfnav/errors.hpp"

namespace hpfnav {

HeadingError heading_error(const GuidanceVector& guidance, const Pose& believed,
                           Vec2 target) {
    double dtheta =
        wrap_angle(std::atan2(guidance.ey, guidance.ex) - believed.theta);
    HeadingError err;
    err.eta_d = std::cos(dtheta);
    err.eta_c = std::sin(dtheta);
    err.dst = (target - believed.position()).norm();
    return err;
}

double angular_command(const HeadingError& err, const ControllerParams& params) {
    if (err.eta_d >= 0.0) return params.omega_d * err.eta_c;
    return err.eta_c >= 0.0 ? params.omega_d : -params.omega_d;
}

double tangential_command(const HeadingError& err, double omega_c,
                          const ControllerParams& params) {
    double heading_factor;
    if (err.eta_d < 0.0) {
        heading_factor = (err.eta_d + 1.0) / 2.0;
    } else {
        heading_factor = 1.0 - std::fabs(omega_c / params.omega_d) / 2.0;
    }
    double approach = std::min(1.0, err.dst / params.R_c);
    return params.v_d * heading_factor * approach;
}

double tangential_constant(const HeadingError& err,
                           const ControllerParams& params) {
    return params.v_d * std::min(1.0, err.dst / params.R_c);
}

std::variant<WheelSpeeds, SteeringCommand> actuation(
    const ControlCommand& cmd, const VehicleParams& params) {
    if (params.kind == VehicleKind::DifferentialDrive) {
        double r = params.wheel_radius;
        double half_track = params.width * cmd.omega_c / (2.0 * r);
        return WheelSpeeds{cmd.v_c / r + half_track, cmd.v_c / r - half_track};
    }
    if (cmd.v_c == 0.0) {
        if (cmd.omega_c != 0.0)
            throw SingularActuation(
                "actuation: car-like vehicle cannot turn in place");
        return SteeringCommand{0.0, 0.0};
    }
    double phi = std::atan(cmd.omega_c * params.wheelbase / cmd.v_c);
    phi = std::clamp(phi, -params.phi_max, params.phi_max);
    return SteeringCommand{cmd.v_c / params.wheel_radius, phi};
}

}  // namespace hpfnav
