#pragma once

#include <string>
#include <vector>

#include "divert/admm_solver.hpp"
#include "divert/harness.hpp"
#include "divert/scenario.hpp"

namespace divert {

/// Provenance record written next to every command's outputs.
struct RunManifest {
    std::string command;
    std::string scenario_path;
    std::string config_hash;
    std::vector<std::string> output_paths;
    double duration_seconds = 0.0;
    std::string artifact_version;
};

// Full round-trip float formatting (17 significant digits, '.' decimal).
std::string format_double(double x);

/// Trajectory CSV behind the engagement plots. Columns:
/// t, p_x, p_y, v_x, v_y, u_x, u_y, l_x, l_y, u_norm, u_l_angle.
/// Rows cover t = 0..N; control columns are empty on the terminal row.
/// The first line is "# config_hash=<hash>".
void write_trajectory_csv(const std::string& path, const EngagementScenario& scenario,
                          const GuidanceSolution& solution, const std::string& hash);

// Residual history CSV: k, r_norm, s_norm.
void write_residuals_csv(const std::string& path, const std::vector<ResidualSample>& history,
                         const std::string& hash);

// Sweep CSV: range, crosstrack, miss_admm, miss_ogl, angle_err_admm,
// angle_err_ogl, converged, iters.
void write_sweep_csv(const std::string& path, const SweepResult& result,
                     const std::string& hash);

// JSON artifacts.
void write_solution_summary_json(const std::string& path, const GuidanceSolution& solution,
                                 const std::string& hash);
void write_compare_summary_json(const std::string& path, const GuidanceSolution& admm,
                                const GuidanceSolution& ogl, const std::string& hash);
void write_sweep_json(const std::string& path, const SweepSpec& spec, const SweepResult& result,
                      const std::string& hash);
void write_manifest_json(const std::string& path, const RunManifest& manifest);

}  // namespace divert
