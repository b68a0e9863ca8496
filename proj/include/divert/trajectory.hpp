#pragma once

#include <vector>

#include "divert/scenario.hpp"

namespace divert {

/// Discrete trajectory under a recorded control sequence. p and v follow the
/// double-integrator steps p_{t+1} = p_t + dt*v_t, v_{t+1} = v_t + dt*u_t;
/// l_t is the line-of-sight vector from interceptor to target.
struct TrajectoryRecord {
    std::vector<Vec2> u;  // N entries [m/s^2]
    std::vector<Vec2> p;  // N+1 entries [m]
    std::vector<Vec2> v;  // N+1 entries [m/s]
    std::vector<Vec2> l;  // N+1 entries [m]
};

// Stack/unstack between N 2-vectors and a 2N Eigen vector (x0,y0,x1,y1,...).
Eigen::VectorXd stack_controls(const std::vector<Vec2>& u);
std::vector<Vec2> unstack_controls(const Eigen::VectorXd& u);

/// Rolls the dynamics forward from scenario.p0/v0 under the given controls.
/// Throws std::invalid_argument when u does not hold exactly N pairs.
TrajectoryRecord forward_simulate(const EngagementScenario& scenario,
                                  const Eigen::VectorXd& u_stack);
TrajectoryRecord forward_simulate(const EngagementScenario& scenario,
                                  const std::vector<Vec2>& u);

}  // namespace divert
