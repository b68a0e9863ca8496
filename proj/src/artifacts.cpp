#include "divert/artifacts.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "divert/projections.hpp"

namespace divert {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

void write_trajectory_csv(const std::string& path, const EngagementScenario& scenario,
                          const GuidanceSolution& solution, const std::string& hash) {
    std::ofstream out = open_out(path);
    out << "# config_hash=" << hash << "\n";
    out << "t,p_x,p_y,v_x,v_y,u_x,u_y,l_x,l_y,u_norm,u_l_angle\n";
    const TrajectoryRecord& traj = solution.trajectory;
    const int N = scenario.N;
    for (int t = 0; t <= N; ++t) {
        out << format_double(t * scenario.dt) << ',' << format_double(traj.p[t].x()) << ','
            << format_double(traj.p[t].y()) << ',' << format_double(traj.v[t].x()) << ','
            << format_double(traj.v[t].y()) << ',';
        if (t < N) {
            const Vec2& u = traj.u[t];
            const Vec2& l = traj.l[t];
            const double angle =
                (u.norm() > 0.0 && l.norm() > 0.0) ? angle_between(u, l) : 0.0;
            out << format_double(u.x()) << ',' << format_double(u.y()) << ','
                << format_double(l.x()) << ',' << format_double(l.y()) << ','
                << format_double(u.norm()) << ',' << format_double(angle) << '\n';
        } else {
            out << ",," << format_double(traj.l[t].x()) << ',' << format_double(traj.l[t].y())
                << ",,\n";
        }
    }
}

void write_residuals_csv(const std::string& path, const std::vector<ResidualSample>& history,
                         const std::string& hash) {
    std::ofstream out = open_out(path);
    out << "# config_hash=" << hash << "\n";
    out << "k,r_norm,s_norm\n";
    for (const ResidualSample& s : history) {
        out << s.k << ',' << format_double(s.r_norm) << ',' << format_double(s.s_norm) << '\n';
    }
}

void write_sweep_csv(const std::string& path, const SweepResult& result,
                     const std::string& hash) {
    std::ofstream out = open_out(path);
    out << "# config_hash=" << hash << "\n";
    out << "range,crosstrack,miss_admm,miss_ogl,angle_err_admm,angle_err_ogl,converged,iters\n";
    for (size_t i = 0; i < result.range_values.size(); ++i) {
        for (size_t j = 0; j < result.crosstrack_values.size(); ++j) {
            const SweepCell& c = result.cell(static_cast<int>(i), static_cast<int>(j));
            out << format_double(result.range_values[i]) << ','
                << format_double(result.crosstrack_values[j]) << ','
                << format_double(c.miss_admm) << ',' << format_double(c.miss_ogl) << ','
                << format_double(c.angle_err_admm) << ',' << format_double(c.angle_err_ogl) << ','
                << (c.admm_converged ? 1 : 0) << ',' << c.iterations << '\n';
        }
    }
}

namespace {

json solution_to_json(const GuidanceSolution& s) {
    return json{{"miss_distance", s.miss_distance},
                {"impact_angle_error", s.impact_angle_error},
                {"max_ortho_violation", s.max_ortho_violation},
                {"max_accel_violation", s.max_accel_violation},
                {"iterations", s.iterations},
                {"converged", s.converged},
                {"r_norm", s.final_residuals.first},
                {"s_norm", s.final_residuals.second}};
}

}  // namespace

void write_solution_summary_json(const std::string& path, const GuidanceSolution& solution,
                                 const std::string& hash) {
    json j = solution_to_json(solution);
    j["config_hash"] = hash;
    open_out(path) << j.dump(2) << "\n";
}

void write_compare_summary_json(const std::string& path, const GuidanceSolution& admm,
                                const GuidanceSolution& ogl, const std::string& hash) {
    json j{{"admm", solution_to_json(admm)}, {"ogl", solution_to_json(ogl)},
           {"config_hash", hash}};
    open_out(path) << j.dump(2) << "\n";
}

void write_sweep_json(const std::string& path, const SweepSpec& spec, const SweepResult& result,
                      const std::string& hash) {
    json cells = json::array();
    for (size_t i = 0; i < result.range_values.size(); ++i) {
        for (size_t j = 0; j < result.crosstrack_values.size(); ++j) {
            const SweepCell& c = result.cell(static_cast<int>(i), static_cast<int>(j));
            json cell{{"range", result.range_values[i]},
                      {"crosstrack", result.crosstrack_values[j]},
                      {"miss_admm", c.miss_admm},
                      {"miss_ogl", c.miss_ogl},
                      {"angle_err_admm", c.angle_err_admm},
                      {"angle_err_ogl", c.angle_err_ogl},
                      {"converged", c.admm_converged},
                      {"iters", c.iterations}};
            if (!c.error.empty()) {
                cell["error"] = c.error;
            }
            // JSON rejects NaN; failed cells carry null metrics plus the tag.
            for (auto key : {"miss_admm", "miss_ogl", "angle_err_admm", "angle_err_ogl"}) {
                if (cell[key].is_number() && !std::isfinite(cell[key].get<double>())) {
                    cell[key] = nullptr;
                }
            }
            cells.push_back(cell);
        }
    }

    const EngagementScenario& b = spec.base_scenario;
    json spec_json{{"p0", {b.p0.x(), b.p0.y()}},
                   {"v0", {b.v0.x(), b.v0.y()}},
                   {"chi0", {b.chi0.x(), b.chi0.y()}},
                   {"nu0", {b.nu0.x(), b.nu0.y()}},
                   {"theta_f_deg", b.theta_f * 180.0 / M_PI},
                   {"u_ub", b.u_ub},
                   {"dt", b.dt},
                   {"N", b.N},
                   {"rho", spec.config.rho},
                   {"max_iter", spec.config.max_iter},
                   {"eps_pri", spec.config.eps_pri},
                   {"eps_dual", spec.config.eps_dual},
                   {"range_values", spec.range_values},
                   {"crosstrack_values", spec.crosstrack_values},
                   {"horizon_policy", spec.horizon_policy == HorizonPolicy::fixed_n
                                          ? "fixed"
                                          : "scale-with-range"},
                   {"warm_start_from_base", spec.warm_start_from_base}};

    json j{{"spec", spec_json}, {"config_hash", hash}, {"cells", cells}};
    open_out(path) << j.dump(2) << "\n";
}

void write_manifest_json(const std::string& path, const RunManifest& manifest) {
    json j{{"command", manifest.command},
           {"scenario_path", manifest.scenario_path},
           {"config_hash", manifest.config_hash},
           {"output_paths", manifest.output_paths},
           {"duration_seconds", manifest.duration_seconds},
           {"artifact_version", manifest.artifact_version}};
    open_out(path) << j.dump(2) << "\n";
}

}  // namespace divert
