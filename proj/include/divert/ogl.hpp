#pragma once

#include "divert/admm_solver.hpp"
#include "divert/scenario.hpp"

namespace divert {

/// Line-of-sight quantities feeding the classical guidance command.
struct OglState {
    double sigma = 0.0;      // line-of-sight angle [rad]
    double sigma_dot = 0.0;  // line-of-sight rate [rad/s]
    double V_c = 0.0;        // closing velocity [m/s]
    double t_go = 0.0;       // time to go [s], floored by the caller
};

// a = V_c (4 sigma_dot + 2 (sigma - theta_f) / t_go), unclamped.
double ogl_command(const OglState& state, double theta_f);

/// Closed-loop simulation of the classical law under the same dynamics and
/// acceleration limit. The clamped command is applied perpendicular to the
/// current line of sight (positive command = LOS rotated by +pi/2), sigma_dot
/// and V_c come from the exact relative state, and t_go = range over closing
/// speed with floors of 2*dt and 1e-6 m/s.
GuidanceSolution ogl_simulate(const EngagementScenario& scenario);

}  // namespace divert
