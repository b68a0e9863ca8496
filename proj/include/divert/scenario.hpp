#pragma once

#include "divert/geometry.hpp"

namespace divert {

/// Planar intercept setup. Interceptor starts at p0 with velocity v0; the
/// target moves at constant velocity nu0 from chi0. theta_f is the desired
/// terminal flight-path (impact) angle, u_ub the lateral-acceleration bound,
/// dt the step size, and N the number of control steps. SI units, radians.
struct EngagementScenario {
    Vec2 p0{0.0, 0.0};        // interceptor initial position [m]
    Vec2 v0{0.0, 0.0};        // interceptor initial velocity [m/s]
    Vec2 chi0{0.0, 0.0};      // target initial position [m]
    Vec2 nu0{0.0, 0.0};       // target constant velocity [m/s]
    double theta_f = 0.0;     // terminal impact angle [rad], in (-pi, pi]
    double u_ub = 0.0;        // acceleration magnitude bound [m/s^2]
    double dt = 0.0;          // step size [s]
    int N = 0;                // horizon length (control steps)

    // Target position at step t.
    Vec2 target_at(int t) const { return chi0 + dt * static_cast<double>(t) * nu0; }

    double initial_range() const { return (chi0 - p0).norm(); }

    // Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

}  // namespace divert
