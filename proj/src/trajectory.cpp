#include "divert/trajectory.hpp"

#include <stdexcept>

namespace divert {

Eigen::VectorXd stack_controls(const std::vector<Vec2>& u) {
    Eigen::VectorXd s(2 * static_cast<int>(u.size()));
    for (size_t t = 0; t < u.size(); ++t) {
        s[2 * t] = u[t].x();
        s[2 * t + 1] = u[t].y();
    }
    return s;
}

std::vector<Vec2> unstack_controls(const Eigen::VectorXd& u) {
    if (u.size() % 2 != 0) {
        throw std::invalid_argument("unstack_controls: odd stack length");
    }
    std::vector<Vec2> out(static_cast<size_t>(u.size() / 2));
    for (size_t t = 0; t < out.size(); ++t) {
        out[t] = Vec2(u[2 * t], u[2 * t + 1]);
    }
    return out;
}

TrajectoryRecord forward_simulate(const EngagementScenario& scenario,
                                  const Eigen::VectorXd& u_stack) {
    scenario.validate();
    const int N = scenario.N;
    if (u_stack.size() != 2 * N) {
        throw std::invalid_argument("forward_simulate: control stack must hold N pairs");
    }

    TrajectoryRecord rec;
    rec.u.resize(N);
    rec.p.resize(N + 1);
    rec.v.resize(N + 1);
    rec.l.resize(N + 1);

    rec.p[0] = scenario.p0;
    rec.v[0] = scenario.v0;
    for (int t = 0; t < N; ++t) {
        rec.u[t] = Vec2(u_stack[2 * t], u_stack[2 * t + 1]);
        rec.p[t + 1] = rec.p[t] + scenario.dt * rec.v[t];
        rec.v[t + 1] = rec.v[t] + scenario.dt * rec.u[t];
    }
    for (int t = 0; t <= N; ++t) {
        rec.l[t] = scenario.target_at(t) - rec.p[t];
    }
    return rec;
}

TrajectoryRecord forward_simulate(const EngagementScenario& scenario, const std::vector<Vec2>& u) {
    return forward_simulate(scenario, stack_controls(u));
}

}  // namespace divert
