#include "divert/admm_solver.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "divert/projections.hpp"

namespace divert {

namespace {

constexpr double kDivergenceNorm = 1e12;
constexpr double kTinyControl = 1e-9;  // relative to u_ub, below which the
                                       // orthogonality angle is unmeasurable

}  // namespace

DivergenceError::DivergenceError(int iteration, const std::string& what)
    : std::runtime_error(what), iteration_(iteration) {}

double SolverConfig::resolved_eps_pri(int rows) const {
    return eps_pri > 0.0 ? eps_pri : 1e-6 * std::sqrt(static_cast<double>(rows));
}

double SolverConfig::resolved_eps_dual(int rows) const {
    return eps_dual > 0.0 ? eps_dual : 1e-6 * std::sqrt(static_cast<double>(rows));
}

void SolverConfig::validate() const {
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw std::invalid_argument("solver config: rho must be positive");
    }
    if (max_iter < 0) {
        throw std::invalid_argument("solver config: max_iter must be >= 0");
    }
    if (eps_pri < 0.0 || eps_dual < 0.0) {
        throw std::invalid_argument("solver config: tolerances must be >= 0");
    }
}

SolverState initial_state(const StackedProblem& problem) {
    SolverState st;
    st.u = Eigen::VectorXd::Zero(problem.cols());
    st.z = Eigen::VectorXd::Zero(problem.rows());
    st.w = Eigen::VectorXd::Zero(problem.rows());
    st.k = 0;
    return st;
}

Eigen::VectorXd u_update(const StackedProblem& problem, const Eigen::VectorXd& z,
                         const Eigen::VectorXd& w) {
    const Eigen::VectorXd rhs = (problem.rho / 2.0) * (problem.Mt * (problem.n + z - w));
    return problem.ls_factorization.solve(rhs);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> residuals(const StackedProblem& problem,
                                                      const Eigen::VectorXd& u,
                                                      const Eigen::VectorXd& z,
                                                      const Eigen::VectorXd& z_prev) {
    Eigen::VectorXd r = problem.M * u - z - problem.n;
    Eigen::VectorXd s = problem.rho * (problem.Mt * (z_prev - z));
    return {std::move(r), std::move(s)};
}

void iterate(const StackedProblem& problem, const EngagementScenario& scenario,
             SolverState& state, bool record_history) {
    const int N = problem.N;

    const Eigen::VectorXd u = u_update(problem, state.z, state.w);

#ifndef NDEBUG
    const bool check_normal_eq = true;
#else
    const bool check_normal_eq = record_history;
#endif
    double ne_resid = 0.0;
    if (check_normal_eq) {
        // ||(2I + rho M^T M) u - rho M^T (n + z - w)|| against the cached solve.
        const Eigen::VectorXd rhs = problem.rho * (problem.Mt * (problem.n + state.z - state.w));
        const Eigen::VectorXd lhs = 2.0 * u + problem.rho * (problem.Mt * (problem.M * u));
        ne_resid = (lhs - rhs).norm() / std::max(1.0, rhs.norm());
        assert(ne_resid <= 1e-8);
    }

    const Eigen::VectorXd Mu = problem.M * u;
    // eta = Mu - n + w feeds every projection below.
    const Eigen::VectorXd eta = Mu - problem.n + state.w;

    Eigen::VectorXd z_next = Eigen::VectorXd::Zero(problem.rows());

    // Convex projections first: acceleration ball, then the halfspace.
    for (int t = 0; t < N; ++t) {
        const Vec2 zb = project_ball(Vec2(eta[problem.off_ball() + 2 * t],
                                          eta[problem.off_ball() + 2 * t + 1]),
                                     scenario.u_ub);
        z_next[problem.off_ball() + 2 * t] = zb.x();
        z_next[problem.off_ball() + 2 * t + 1] = zb.y();
    }
    z_next[problem.off_halfspace()] = project_halfspace(eta[problem.off_halfspace()]);

    // Nonconvex angular projection last.
    z_next.segment(problem.off_angle(), 4 * N) =
        project_c3_stack(eta.segment(problem.off_angle(), 4 * N), M_PI_2, N);

    // Dual ascent on every block, including the terminal-constraint one.
    const Eigen::VectorXd w_next = state.w + Mu - problem.n - z_next;

    const Eigen::VectorXd r = Mu - z_next - problem.n;
    const Eigen::VectorXd s = problem.rho * (problem.Mt * (state.z - z_next));

    state.k += 1;
    if (!u.allFinite() || !z_next.allFinite() || !w_next.allFinite() ||
        u.norm() > kDivergenceNorm) {
        throw DivergenceError(state.k, "admm solver diverged at iteration " +
                                           std::to_string(state.k));
    }

    state.u = u;
    state.z = z_next;
    state.w = w_next;
    state.r_norm = r.norm();
    state.s_norm = s.norm();
    if (record_history) {
        state.history.push_back({state.k, state.r_norm, state.s_norm, ne_resid});
    }
}

GuidanceSolution solution_from_controls(const EngagementScenario& scenario,
                                        const Eigen::VectorXd& u_stack, int iterations,
                                        bool converged,
                                        std::pair<double, double> final_residuals) {
    GuidanceSolution sol;
    sol.trajectory = forward_simulate(scenario, u_stack);
    sol.controls = sol.trajectory.u;
    sol.iterations = iterations;
    sol.converged = converged;
    sol.final_residuals = final_residuals;

    const int N = scenario.N;
    sol.miss_distance = sol.trajectory.l[N].norm();

    const Vec2 vN = sol.trajectory.v[N];
    const double heading = std::atan2(vN.y(), vN.x());
    sol.impact_angle_error = std::abs(wrap_angle(heading - scenario.theta_f));

    double max_ortho = 0.0;
    double max_norm = 0.0;
    for (int t = 0; t < N; ++t) {
        const Vec2& ut = sol.trajectory.u[t];
        const Vec2& lt = sol.trajectory.l[t];
        max_norm = std::max(max_norm, ut.norm());
        if (ut.norm() > kTinyControl * scenario.u_ub && lt.norm() > 0.0) {
            max_ortho = std::max(max_ortho, std::abs(angle_between(ut, lt) - M_PI_2));
        }
    }
    sol.max_ortho_violation = max_ortho;
    sol.max_accel_violation = std::max(0.0, max_norm - scenario.u_ub);
    return sol;
}

namespace {

GuidanceSolution run_solver(const StackedProblem& problem, const EngagementScenario& scenario,
                            const SolverConfig& config, SolverState state,
                            std::vector<ResidualSample>* history_out) {
    if (state.u.size() != problem.cols() || state.z.size() != problem.rows() ||
        state.w.size() != problem.rows()) {
        throw std::invalid_argument("solver: start state does not match problem dimensions");
    }

    const double eps_pri = config.resolved_eps_pri(problem.rows());
    const double eps_dual = config.resolved_eps_dual(problem.rows());
    const bool record = config.record_history || history_out != nullptr;

    bool converged = false;
    while (state.k < config.max_iter) {
        iterate(problem, scenario, state, record);
        if (state.r_norm <= eps_pri && state.s_norm <= eps_dual) {
            converged = true;
            break;
        }
    }
    if (history_out != nullptr) {
        *history_out = state.history;
    }
    return solution_from_controls(scenario, state.u, state.k, converged,
                                  {state.r_norm, state.s_norm});
}

}  // namespace

GuidanceSolution solve_warm(const EngagementScenario& scenario, const SolverConfig& config,
                            const SolverState& start, std::vector<ResidualSample>* history_out) {
    scenario.validate();
    config.validate();
    const StackedProblem problem = assemble(scenario, config.rho);
    SolverState fresh = start;  // iterates carry over, the iteration budget does not
    fresh.k = 0;
    fresh.history.clear();
    return run_solver(problem, scenario, config, std::move(fresh), history_out);
}

GuidanceSolution solve(const EngagementScenario& scenario, const SolverConfig& config,
                       std::vector<ResidualSample>* history_out) {
    scenario.validate();
    config.validate();
    const StackedProblem problem = assemble(scenario, config.rho);
    return run_solver(problem, scenario, config, initial_state(problem), history_out);
}

}  // namespace divert
