#include "divert/ogl.hpp"

#include <algorithm>
#include <cmath>

namespace divert {

namespace {

constexpr double kClosingSpeedFloor = 1e-6;  // [m/s]

}  // namespace

double ogl_command(const OglState& state, double theta_f) {
    return state.V_c * (4.0 * state.sigma_dot + 2.0 * (state.sigma - theta_f) / state.t_go);
}

GuidanceSolution ogl_simulate(const EngagementScenario& scenario) {
    scenario.validate();
    const int N = scenario.N;
    const double dt = scenario.dt;
    const double t_go_floor = 2.0 * dt;

    std::vector<Vec2> u(N, Vec2::Zero());
    Vec2 p = scenario.p0;
    Vec2 v = scenario.v0;

    for (int t = 0; t < N; ++t) {
        const Vec2 l = scenario.target_at(t) - p;
        const double range = l.norm();
        if (range > 0.0) {
            const Vec2 l_dot = scenario.nu0 - v;
            OglState state;
            state.sigma = std::atan2(l.y(), l.x());
            state.sigma_dot = cross2(l, l_dot) / (range * range);
            state.V_c = -l.dot(l_dot) / range;
            state.t_go = std::max(range / std::max(state.V_c, kClosingSpeedFloor), t_go_floor);

            const double a = ogl_command(state, scenario.theta_f);
            const double a_clamped = std::clamp(a, -scenario.u_ub, scenario.u_ub);
            // Positive command along the LOS rotated counterclockwise by pi/2.
            u[t] = a_clamped * rot90(l / range);
        }
        p += dt * v;
        v += dt * u[t];
    }

    return solution_from_controls(scenario, stack_controls(u), N, true, {0.0, 0.0});
}

}  // namespace divert
