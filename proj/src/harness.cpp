#include "divert/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace divert {

Vec2 SweepSpec::cell_chi0(double range, double crosstrack) const {
    const Vec2 along = base_scenario.v0.normalized();
    return base_scenario.p0 + range * along + crosstrack * rot90(along);
}

int SweepSpec::cell_horizon(double range, double crosstrack) const {
    if (horizon_policy == HorizonPolicy::fixed_n) {
        return base_scenario.N;
    }
    const double base_dist = (base_scenario.chi0 - base_scenario.p0).norm();
    const double cell_dist = (cell_chi0(range, crosstrack) - base_scenario.p0).norm();
    if (base_dist == 0.0) {
        return base_scenario.N;
    }
    const double scaled = std::round(base_scenario.N * cell_dist / base_dist);
    return std::max(2, static_cast<int>(scaled));
}

void SweepSpec::validate() const {
    base_scenario.validate();
    config.validate();
    if (base_scenario.v0.norm() == 0.0) {
        throw std::invalid_argument(
            "sweep spec: base scenario needs a nonzero initial velocity to "
            "orient the range/crosstrack axes");
    }
    if (warm_start_from_base && horizon_policy != HorizonPolicy::fixed_n) {
        throw std::invalid_argument(
            "sweep spec: warm start requires the fixed horizon policy "
            "(state dimensions must match across cells)");
    }
    auto check_axis = [](const std::vector<double>& v, const char* name) {
        if (v.empty()) {
            throw std::invalid_argument(std::string("sweep spec: ") + name + " must be non-empty");
        }
        for (size_t i = 1; i < v.size(); ++i) {
            if (!(v[i] > v[i - 1])) {
                throw std::invalid_argument(std::string("sweep spec: ") + name +
                                            " must be strictly increasing");
            }
        }
    };
    check_axis(range_values, "range_values");
    check_axis(crosstrack_values, "crosstrack_values");
}

std::pair<GuidanceSolution, GuidanceSolution> compare(const EngagementScenario& scenario,
                                                      const SolverConfig& config) {
    return {solve(scenario, config), ogl_simulate(scenario)};
}

namespace {

SweepCell evaluate_cell(const SweepSpec& spec, double range, double crosstrack,
                        const SolverState* warm) {
    const EngagementScenario& base = spec.base_scenario;
    const SolverConfig& config = spec.config;
    SweepCell cell;
    cell.chi0 = spec.cell_chi0(range, crosstrack);
    EngagementScenario scenario = base;
    scenario.chi0 = cell.chi0;
    scenario.N = spec.cell_horizon(range, crosstrack);
    try {
        const GuidanceSolution admm =
            warm != nullptr ? solve_warm(scenario, config, *warm) : solve(scenario, config);
        const GuidanceSolution ogl = ogl_simulate(scenario);
        cell.miss_admm = admm.miss_distance;
        cell.miss_ogl = ogl.miss_distance;
        cell.angle_err_admm = admm.impact_angle_error;
        cell.angle_err_ogl = ogl.impact_angle_error;
        cell.admm_converged = admm.converged;
        cell.iterations = admm.iterations;
    } catch (const std::exception& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        cell.miss_admm = cell.miss_ogl = nan;
        cell.angle_err_admm = cell.angle_err_ogl = nan;
        cell.admm_converged = false;
        cell.iterations = 0;
        cell.error = e.what();
    }
    return cell;
}

// Common starting point shared by every cell: the base scenario's final
// iterate. Identical for all cells, so cell independence is preserved.
SolverState base_warm_state(const SweepSpec& spec) {
    const StackedProblem problem = assemble(spec.base_scenario, spec.config.rho);
    SolverState state = initial_state(problem);
    const double eps_pri = spec.config.resolved_eps_pri(problem.rows());
    const double eps_dual = spec.config.resolved_eps_dual(problem.rows());
    while (state.k < spec.config.max_iter) {
        iterate(problem, spec.base_scenario, state);
        if (state.r_norm <= eps_pri && state.s_norm <= eps_dual) {
            break;
        }
    }
    return state;
}

SweepResult run_sweep(const SweepSpec& spec, bool parallel) {
    spec.validate();
    SweepResult result;
    result.range_values = spec.range_values;
    result.crosstrack_values = spec.crosstrack_values;

    const int rows = static_cast<int>(spec.range_values.size());
    const int cols = static_cast<int>(spec.crosstrack_values.size());
    result.cells.resize(static_cast<size_t>(rows) * cols);

    SolverState warm;
    const SolverState* warm_ptr = nullptr;
    if (spec.warm_start_from_base) {
        warm = base_warm_state(spec);
        warm_ptr = &warm;
    }

    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int idx = 0; idx < rows * cols; ++idx) {
            const int i = idx / cols;
            const int j = idx % cols;
            result.cells[idx] =
                evaluate_cell(spec, spec.range_values[i], spec.crosstrack_values[j], warm_ptr);
        }
    } else {
        for (int idx = 0; idx < rows * cols; ++idx) {
            const int i = idx / cols;
            const int j = idx % cols;
            result.cells[idx] =
                evaluate_cell(spec, spec.range_values[i], spec.crosstrack_values[j], warm_ptr);
        }
    }
    return result;
}

}  // namespace

SweepResult sweep(const SweepSpec& spec) { return run_sweep(spec, true); }

SweepResult sweep_serial(const SweepSpec& spec) { return run_sweep(spec, false); }

double FeasibilityTolerance::miss_for(const EngagementScenario& s) const {
    return std::max(miss_per_km, miss_per_km * s.initial_range() / 1000.0);
}

bool is_feasible(const GuidanceSolution& solution, const EngagementScenario& scenario,
                 const FeasibilityTolerance& tol) {
    return solution.converged && solution.miss_distance <= tol.miss_for(scenario) &&
           solution.impact_angle_error <= tol.angle_tol;
}

namespace {

bool horizon_feasible(const EngagementScenario& scenario, const SolverConfig& config, int N,
                      const FeasibilityTolerance& tol) {
    EngagementScenario s = scenario;
    s.N = N;
    try {
        return is_feasible(solve(s, config), s, tol);
    } catch (const DivergenceError&) {
        return false;
    }
}

}  // namespace

int min_feasible_horizon(const EngagementScenario& scenario, const SolverConfig& config,
                         int N_lo, int N_hi, const FeasibilityTolerance& tol) {
    if (N_lo < 2 || N_lo > N_hi) {
        throw std::invalid_argument("min_feasible_horizon: invalid bracket");
    }
    if (horizon_feasible(scenario, config, N_lo, tol)) {
        return N_lo;
    }
    if (!horizon_feasible(scenario, config, N_hi, tol)) {
        throw std::runtime_error("min_feasible_horizon: infeasible at upper bound N = " +
                                 std::to_string(N_hi));
    }
    // Bisection assumes feasibility is monotone in N over the bracket; the
    // linear-scan reference below is the check for that assumption.
    int lo = N_lo;  // infeasible
    int hi = N_hi;  // feasible
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        if (horizon_feasible(scenario, config, mid, tol)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

int min_feasible_horizon_linear(const EngagementScenario& scenario, const SolverConfig& config,
                                int N_lo, int N_hi, const FeasibilityTolerance& tol) {
    if (N_lo < 2 || N_lo > N_hi) {
        throw std::invalid_argument("min_feasible_horizon: invalid bracket");
    }
    for (int n = N_lo; n <= N_hi; ++n) {
        if (horizon_feasible(scenario, config, n, tol)) {
            return n;
        }
    }
    throw std::runtime_error("min_feasible_horizon: infeasible at upper bound N = " +
                             std::to_string(N_hi));
}

}  // namespace divert
