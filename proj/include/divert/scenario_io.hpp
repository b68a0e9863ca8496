#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "divert/harness.hpp"
#include "divert/scenario.hpp"

namespace divert {

/// Parse error carrying the offending file and, when known, a JSON pointer
/// style location. Presented as-is by the CLI.
class ScenarioFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Command-line overrides; any set field wins over the file, which wins over
/// defaults (flags > file > defaults).
struct ConfigOverrides {
    std::optional<double> rho;
    std::optional<int> max_iter;
    std::optional<double> eps_pri;
    std::optional<double> eps_dual;
};

struct ScenarioFile {
    EngagementScenario scenario;
    SolverConfig config;
    std::string label;  // free-form tag carried from the file
};

/// Loads a scenario JSON file. Required keys: p0, v0, chi0, nu0 (2-arrays),
/// theta_f_deg, u_ub, dt, N. Optional: rho, max_iter, eps_pri, eps_dual,
/// label. Angles are degrees in the file and radians in memory.
ScenarioFile load_scenario(const std::string& path, const ConfigOverrides& overrides = {});

/// Loads a sweep spec: all scenario keys plus range_values and
/// crosstrack_values (non-empty, strictly increasing arrays).
SweepSpec load_sweep_spec(const std::string& path, const ConfigOverrides& overrides = {});

// Canonical serialization of the fully-resolved inputs, and its FNV-1a hash.
std::string canonical_config_string(const EngagementScenario& scenario,
                                    const SolverConfig& config);
std::uint64_t fnv1a64(const std::string& text);
std::string config_hash(const EngagementScenario& scenario, const SolverConfig& config);

}  // namespace divert
