#pragma once

#include <string>
#include <vector>

#include "divert/admm_solver.hpp"
#include "divert/ogl.hpp"

namespace divert {

// Per-cell horizon override: keep the base N everywhere (the fixed-iteration
// protocol used for grid comparisons) or scale it with cell distance.
enum class HorizonPolicy { fixed_n, scale_with_range };

struct SweepSpec {
    // Target initial positions relative to the interceptor's initial heading:
    // chi0 = p0 + range * v0_hat + crosstrack * rot90(v0_hat). Range runs
    // along the flight direction, crosstrack perpendicular to it.
    std::vector<double> range_values;       // [m]
    std::vector<double> crosstrack_values;  // [m]
    EngagementScenario base_scenario;       // chi0 is replaced per cell
    SolverConfig config;
    HorizonPolicy horizon_policy = HorizonPolicy::fixed_n;
    bool warm_start_from_base = false;  // reuse the base-cell solution as the
                                        // common starting point of every cell

    Vec2 cell_chi0(double range, double crosstrack) const;
    int cell_horizon(double range, double crosstrack) const;

    void validate() const;
};

struct SweepCell {
    Vec2 chi0{0.0, 0.0};
    double miss_admm = 0.0;
    double miss_ogl = 0.0;
    double angle_err_admm = 0.0;
    double angle_err_ogl = 0.0;
    bool admm_converged = false;
    int iterations = 0;
    std::string error;  // non-empty when the cell failed; metrics are NaN
};

/// Row-major grid: cell(i, j) pairs range_values[i] with crosstrack_values[j].
struct SweepResult {
    std::vector<double> range_values;
    std::vector<double> crosstrack_values;
    std::vector<SweepCell> cells;  // row-major

    const SweepCell& cell(int i, int j) const {
        return cells[static_cast<size_t>(i) * crosstrack_values.size() + j];
    }
};

// Runs both methods on one scenario with identical N, dt, u_ub.
std::pair<GuidanceSolution, GuidanceSolution> compare(const EngagementScenario& scenario,
                                                      const SolverConfig& config);

/// Evaluates compare() on every grid cell. Cells are independent; the OpenMP
/// variant assigns one cell per task and writes into preallocated slots, so
/// the result is bit-identical to the serial reference for any thread count.
/// A failing cell records NaN metrics and an error tag instead of aborting.
SweepResult sweep(const SweepSpec& spec);
SweepResult sweep_serial(const SweepSpec& spec);

struct FeasibilityTolerance {
    // Absolute miss tolerance in meters, scaled with engagement size:
    // 1e-2 m per kilometer of initial range, at least 1e-2 m.
    double miss_for(const EngagementScenario& s) const;
    double miss_per_km = 1e-2;  // [m/km]
    double angle_tol = 1e-2;    // [rad]
};

/// Feasibility verdict for the horizon search: the solver converged and the
/// simulated miss distance and impact-angle error are within tolerance.
/// Post-hoc simulated metrics, not solver residuals, make the call.
bool is_feasible(const GuidanceSolution& solution, const EngagementScenario& scenario,
                 const FeasibilityTolerance& tol);

/// Smallest N in [N_lo, N_hi] whose solve is feasible, found by bisection
/// under the (documented) assumption that feasibility is monotone in N.
/// Throws std::invalid_argument on an empty bracket and std::runtime_error
/// when N_hi itself is infeasible.
int min_feasible_horizon(const EngagementScenario& scenario, const SolverConfig& config,
                         int N_lo, int N_hi, const FeasibilityTolerance& tol = {});

// Exhaustive reference: first feasible N scanning N_lo..N_hi.
int min_feasible_horizon_linear(const EngagementScenario& scenario, const SolverConfig& config,
                                int N_lo, int N_hi, const FeasibilityTolerance& tol = {});

}  // namespace divert
