#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "divert/problem.hpp"
#include "divert/trajectory.hpp"

namespace divert {

struct SolverConfig {
    double rho = 1.0;
    int max_iter = 10000;
    double eps_pri = 0.0;   // <= 0 means the sqrt(rows)-scaled default
    double eps_dual = 0.0;  // idem
    bool record_history = false;

    // Resolved tolerances for a problem with the given row count.
    double resolved_eps_pri(int rows) const;
    double resolved_eps_dual(int rows) const;

    void validate() const;
};

struct ResidualSample {
    int k = 0;
    double r_norm = 0.0;
    double s_norm = 0.0;
    // ||(2I + rho M^T M) u - rho M^T (n + z - w)|| / max(1, ||rhs||),
    // recorded only when history is kept.
    double u_normal_eq_residual = 0.0;
};

struct SolverState {
    Eigen::VectorXd u;  // 2N
    Eigen::VectorXd z;  // 6N+4; first 3 entries identically zero
    Eigen::VectorXd w;  // 6N+4 scaled duals
    int k = 0;
    double r_norm = 0.0;
    double s_norm = 0.0;
    std::vector<ResidualSample> history;
};

struct GuidanceSolution {
    std::vector<Vec2> controls;
    TrajectoryRecord trajectory;
    double miss_distance = 0.0;        // ||l_N|| [m]
    double impact_angle_error = 0.0;   // |angle(v_N) - theta_f| wrapped [rad]
    double max_ortho_violation = 0.0;  // max |angle(u_t,l_t) - pi/2| [rad]
    double max_accel_violation = 0.0;  // max(0, max ||u_t|| - u_ub) [m/s^2]
    int iterations = 0;
    bool converged = false;
    std::pair<double, double> final_residuals{0.0, 0.0};
};

/// Thrown when an iterate stops being finite or ||u|| blows past 1e12.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(int iteration, const std::string& what);
    int iteration() const { return iteration_; }

private:
    int iteration_;
};

// Fresh zero-initialized state (u = z = w = 0, k = 0).
SolverState initial_state(const StackedProblem& problem);

/// Least-squares step: argmin ||u||^2 + (rho/2)||Mu - n - z + w||^2, solved
/// with the factorization cached at assembly.
Eigen::VectorXd u_update(const StackedProblem& problem, const Eigen::VectorXd& z,
                         const Eigen::VectorXd& w);

/// r = Mu - z - n and s = rho M^T (z_prev - z).
std::pair<Eigen::VectorXd, Eigen::VectorXd> residuals(const StackedProblem& problem,
                                                      const Eigen::VectorXd& u,
                                                      const Eigen::VectorXd& z,
                                                      const Eigen::VectorXd& z_prev);

/// One full sweep: u update, ball and halfspace projections, then the
/// angular projection, then dual ascent on every block. Residual norms are
/// stored in the state; history is appended when requested.
void iterate(const StackedProblem& problem, const EngagementScenario& scenario,
             SolverState& state, bool record_history = false);

/// Runs iterate() until both residual norms drop below tolerance or max_iter
/// is reached, then rebuilds everything from the final control stack by
/// forward simulation. Throws DivergenceError on non-finite iterates.
/// history_out, when given, receives the per-iteration residual samples.
GuidanceSolution solve(const EngagementScenario& scenario, const SolverConfig& config,
                       std::vector<ResidualSample>* history_out = nullptr);

// Warm-started variant; `start` must match the problem dimensions. The
// iterates (u, z, w) carry over; the iteration count restarts at zero.
GuidanceSolution solve_warm(const EngagementScenario& scenario, const SolverConfig& config,
                            const SolverState& start,
                            std::vector<ResidualSample>* history_out = nullptr);

// Diagnostics (miss distance, angle error, violation maxima) recomputed from
// a control sequence by forward simulation.
GuidanceSolution solution_from_controls(const EngagementScenario& scenario,
                                        const Eigen::VectorXd& u_stack, int iterations,
                                        bool converged, std::pair<double, double> final_residuals);

}  // namespace divert
