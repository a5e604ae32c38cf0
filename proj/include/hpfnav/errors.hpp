#pragma once

#include <stdexcept>
#include <string>

namespace hpfnav {

/// Invalid construction or configuration parameters.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Relaxation hit the sweep budget with the residual still above tolerance.
struct SolveError : std::runtime_error {
    double last_residual;
    SolveError(const std::string& what, double residual)
        : std::runtime_error(what), last_residual(residual) {}
};

/// Car-like actuation requested with v_c = 0 and omega_c != 0.
struct SingularActuation : std::domain_error {
    using std::domain_error::domain_error;
};

/// Scenario file failed to parse or validate.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hpfnav
