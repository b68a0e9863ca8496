// Command-line front end: solve / compare / sweep / min-horizon over JSON
// scenario files, writing CSV and JSON artifacts plus a run manifest.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "divert/artifacts.hpp"
#include "divert/harness.hpp"
#include "divert/scenario_io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

constexpr const char* kVersion = "0.1.0";

namespace fs = std::filesystem;

struct CommonFlags {
    divert::ConfigOverrides overrides;
    std::string out_dir;
    std::optional<unsigned long long> seed;
    int parallel = 0;
};

std::string resolve_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) {
        return flag_value;
    }
    if (const char* env = std::getenv("DIVERT_ADMM_OUT_DIR")) {
        if (*env != '\0') {
            return std::string(env);
        }
    }
    return "out";
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--rho", [&flags](const std::vector<std::string>& v) {
        flags.overrides.rho = std::stod(v.front());
        return true;
    }, "ADMM penalty parameter (overrides the file)");
    cmd->add_option("--max-iter", [&flags](const std::vector<std::string>& v) {
        flags.overrides.max_iter = std::stoi(v.front());
        return true;
    }, "Iteration cap (overrides the file)");
    cmd->add_option("--eps-pri", [&flags](const std::vector<std::string>& v) {
        flags.overrides.eps_pri = std::stod(v.front());
        return true;
    }, "Primal residual tolerance (overrides the file)");
    cmd->add_option("--eps-dual", [&flags](const std::vector<std::string>& v) {
        flags.overrides.eps_dual = std::stod(v.front());
        return true;
    }, "Dual residual tolerance (overrides the file)");
    cmd->add_option("--out-dir", flags.out_dir,
                    "Output directory (default: $DIVERT_ADMM_OUT_DIR or ./out)");
    cmd->add_option("--seed", [&flags](const std::vector<std::string>& v) {
        flags.seed = std::stoull(v.front());
        return true;
    }, "Randomize sweep cell positions within the grid extents");
    cmd->add_option("--parallel", flags.parallel, "Thread count for the sweep (0 = default)");
}

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void write_manifest(const fs::path& dir, const std::string& command,
                    const std::string& scenario_path, const std::string& hash,
                    const std::vector<std::string>& outputs, double seconds) {
    divert::RunManifest manifest;
    manifest.command = command;
    manifest.scenario_path = scenario_path;
    manifest.config_hash = hash;
    manifest.output_paths = outputs;
    manifest.duration_seconds = seconds;
    manifest.artifact_version = kVersion;
    divert::write_manifest_json((dir / "manifest.json").string(), manifest);
}

int cmd_solve(const std::string& scenario_path, const CommonFlags& flags) {
    Timer timer;
    const divert::ScenarioFile file = divert::load_scenario(scenario_path, flags.overrides);
    const std::string hash = divert::config_hash(file.scenario, file.config);

    std::vector<divert::ResidualSample> history;
    const divert::GuidanceSolution solution = divert::solve(file.scenario, file.config, &history);

    const fs::path dir = resolve_out_dir(flags.out_dir);
    fs::create_directories(dir);
    const std::string traj = (dir / "trajectory.csv").string();
    const std::string resid = (dir / "residuals.csv").string();
    const std::string summary = (dir / "summary.json").string();
    divert::write_trajectory_csv(traj, file.scenario, solution, hash);
    divert::write_residuals_csv(resid, history, hash);
    divert::write_solution_summary_json(summary, solution, hash);
    write_manifest(dir, "solve", scenario_path, hash, {traj, resid, summary}, timer.seconds());

    std::cout << "solve: " << (solution.converged ? "converged" : "not converged") << " after "
              << solution.iterations << " iterations, miss " << solution.miss_distance
              << " m, angle error " << solution.impact_angle_error << " rad\n";
    return solution.converged ? 0 : 2;
}

int cmd_compare(const std::string& scenario_path, const CommonFlags& flags) {
    Timer timer;
    const divert::ScenarioFile file = divert::load_scenario(scenario_path, flags.overrides);
    const std::string hash = divert::config_hash(file.scenario, file.config);

    const auto [admm, ogl] = divert::compare(file.scenario, file.config);

    const fs::path dir = resolve_out_dir(flags.out_dir);
    fs::create_directories(dir);
    const std::string traj_admm = (dir / "trajectory_admm.csv").string();
    const std::string traj_ogl = (dir / "trajectory_ogl.csv").string();
    const std::string summary = (dir / "summary.json").string();
    divert::write_trajectory_csv(traj_admm, file.scenario, admm, hash);
    divert::write_trajectory_csv(traj_ogl, file.scenario, ogl, hash);
    divert::write_compare_summary_json(summary, admm, ogl, hash);
    write_manifest(dir, "compare", scenario_path, hash, {traj_admm, traj_ogl, summary},
                   timer.seconds());

    std::cout << "compare: admm miss " << admm.miss_distance << " m vs ogl miss "
              << ogl.miss_distance << " m\n";
    return admm.converged ? 0 : 2;
}

// Deterministic random grid within the spec's extents, one value per original
// grid line, kept strictly increasing.
std::vector<double> randomize_axis(const std::vector<double>& axis, std::mt19937_64& rng) {
    if (axis.size() < 2) {
        return axis;
    }
    std::uniform_real_distribution<double> dist(axis.front(), axis.back());
    std::vector<double> out(axis.size());
    for (double& x : out) {
        x = dist(rng);
    }
    std::sort(out.begin(), out.end());
    for (size_t i = 1; i < out.size(); ++i) {
        if (out[i] <= out[i - 1]) {
            out[i] = std::nextafter(out[i - 1], std::numeric_limits<double>::infinity());
        }
    }
    return out;
}

int cmd_sweep(const std::string& spec_path, const CommonFlags& flags) {
    Timer timer;
    divert::SweepSpec spec = divert::load_sweep_spec(spec_path, flags.overrides);
    if (flags.seed) {
        std::mt19937_64 rng(*flags.seed);
        spec.range_values = randomize_axis(spec.range_values, rng);
        spec.crosstrack_values = randomize_axis(spec.crosstrack_values, rng);
    }
#ifdef _OPENMP
    if (flags.parallel > 0) {
        omp_set_num_threads(flags.parallel);
    }
#endif
    const std::string hash = divert::config_hash(spec.base_scenario, spec.config);
    const divert::SweepResult result = divert::sweep(spec);

    const fs::path dir = resolve_out_dir(flags.out_dir);
    fs::create_directories(dir);
    const std::string csv = (dir / "sweep.csv").string();
    const std::string jsn = (dir / "sweep.json").string();
    divert::write_sweep_csv(csv, result, hash);
    divert::write_sweep_json(jsn, spec, result, hash);
    write_manifest(dir, "sweep", spec_path, hash, {csv, jsn}, timer.seconds());

    int failures = 0;
    int non_converged = 0;
    for (const divert::SweepCell& c : result.cells) {
        failures += c.error.empty() ? 0 : 1;
        non_converged += c.admm_converged ? 0 : 1;
    }
    std::cout << "sweep: " << result.cells.size() << " cells, " << non_converged
              << " not converged, " << failures << " failed\n";
    return non_converged == 0 ? 0 : 2;
}

int cmd_min_horizon(const std::string& scenario_path, int n_lo, int n_hi, bool linear_scan,
                    const CommonFlags& flags) {
    Timer timer;
    const divert::ScenarioFile file = divert::load_scenario(scenario_path, flags.overrides);
    const std::string hash = divert::config_hash(file.scenario, file.config);

    const int result =
        linear_scan
            ? divert::min_feasible_horizon_linear(file.scenario, file.config, n_lo, n_hi)
            : divert::min_feasible_horizon(file.scenario, file.config, n_lo, n_hi);

    const fs::path dir = resolve_out_dir(flags.out_dir);
    fs::create_directories(dir);
    const std::string summary = (dir / "min_horizon.json").string();
    nlohmann::json j{{"min_feasible_N", result},
                     {"n_lo", n_lo},
                     {"n_hi", n_hi},
                     {"linear_scan", linear_scan},
                     {"config_hash", hash}};
    std::ofstream(summary) << j.dump(2) << "\n";
    write_manifest(dir, "min-horizon", scenario_path, hash, {summary}, timer.seconds());

    std::cout << "min-horizon: smallest feasible N = " << result << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Impact-angle intercept guidance: ADMM solver and classical baseline"};
    app.require_subcommand(1);

    std::string scenario_path;
    CommonFlags flags;

    CLI::App* solve_cmd = app.add_subcommand("solve", "Run the ADMM solver on a scenario file");
    solve_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    add_common_flags(solve_cmd, flags);

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "Run the solver and the classical law side by side");
    compare_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    add_common_flags(compare_cmd, flags);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Evaluate a target-position grid with both methods");
    sweep_cmd->add_option("spec", scenario_path, "Sweep spec JSON file")->required();
    add_common_flags(sweep_cmd, flags);

    int n_lo = 0, n_hi = 0;
    bool linear_scan = false;
    CLI::App* horizon_cmd =
        app.add_subcommand("min-horizon", "Find the smallest feasible horizon by bisection");
    horizon_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    horizon_cmd->add_option("--n-lo", n_lo, "Lower bracket (inclusive)")->required();
    horizon_cmd->add_option("--n-hi", n_hi, "Upper bracket (inclusive)")->required();
    horizon_cmd->add_flag("--linear-scan", linear_scan,
                          "Use the exhaustive scan instead of bisection");
    add_common_flags(horizon_cmd, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) {
            return cmd_solve(scenario_path, flags);
        }
        if (compare_cmd->parsed()) {
            return cmd_compare(scenario_path, flags);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(scenario_path, flags);
        }
        if (horizon_cmd->parsed()) {
            return cmd_min_horizon(scenario_path, n_lo, n_hi, linear_scan, flags);
        }
    } catch (const divert::ScenarioFileError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
