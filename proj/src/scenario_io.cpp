#include "divert/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace divert {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ScenarioFileError(path + ": " + message);
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail(path, "cannot open file");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(path, e.what());
    }
}

double require_number(const json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key)) {
        fail(path, "missing required key '" + key + "'");
    }
    if (!j[key].is_number()) {
        fail(path, "key '" + key + "' must be a number");
    }
    return j[key].get<double>();
}

Vec2 require_vec2(const json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key)) {
        fail(path, "missing required key '" + key + "'");
    }
    const json& v = j[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(path, "key '" + key + "' must be a 2-element number array");
    }
    return Vec2(v[0].get<double>(), v[1].get<double>());
}

std::vector<double> require_axis(const json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key)) {
        fail(path, "missing required key '" + key + "'");
    }
    const json& v = j[key];
    if (!v.is_array() || v.empty()) {
        fail(path, "key '" + key + "' must be a non-empty number array");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) {
            fail(path, "key '" + key + "' must contain numbers only");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

ScenarioFile parse_scenario(const json& j, const std::string& path,
                            const ConfigOverrides& overrides) {
    ScenarioFile file;
    file.scenario.p0 = require_vec2(j, path, "p0");
    file.scenario.v0 = require_vec2(j, path, "v0");
    file.scenario.chi0 = require_vec2(j, path, "chi0");
    file.scenario.nu0 = require_vec2(j, path, "nu0");
    file.scenario.theta_f = require_number(j, path, "theta_f_deg") * M_PI / 180.0;
    file.scenario.u_ub = require_number(j, path, "u_ub");
    file.scenario.dt = require_number(j, path, "dt");
    const double n_raw = require_number(j, path, "N");
    file.scenario.N = static_cast<int>(n_raw);
    if (static_cast<double>(file.scenario.N) != n_raw) {
        fail(path, "key 'N' must be an integer");
    }

    if (j.contains("rho")) file.config.rho = j["rho"].get<double>();
    if (j.contains("max_iter")) file.config.max_iter = j["max_iter"].get<int>();
    if (j.contains("eps_pri")) file.config.eps_pri = j["eps_pri"].get<double>();
    if (j.contains("eps_dual")) file.config.eps_dual = j["eps_dual"].get<double>();
    if (j.contains("label")) file.label = j["label"].get<std::string>();

    // Flags beat the file, the file beats defaults.
    if (overrides.rho) file.config.rho = *overrides.rho;
    if (overrides.max_iter) file.config.max_iter = *overrides.max_iter;
    if (overrides.eps_pri) file.config.eps_pri = *overrides.eps_pri;
    if (overrides.eps_dual) file.config.eps_dual = *overrides.eps_dual;

    try {
        file.scenario.validate();
        file.config.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return file;
}

}  // namespace

ScenarioFile load_scenario(const std::string& path, const ConfigOverrides& overrides) {
    return parse_scenario(parse_file(path), path, overrides);
}

SweepSpec load_sweep_spec(const std::string& path, const ConfigOverrides& overrides) {
    const json j = parse_file(path);
    const ScenarioFile base = parse_scenario(j, path, overrides);

    SweepSpec spec;
    spec.base_scenario = base.scenario;
    spec.config = base.config;
    spec.range_values = require_axis(j, path, "range_values");
    spec.crosstrack_values = require_axis(j, path, "crosstrack_values");
    if (j.contains("warm_start_from_base")) {
        spec.warm_start_from_base = j["warm_start_from_base"].get<bool>();
    }
    if (j.contains("horizon_policy")) {
        const std::string policy = j["horizon_policy"].get<std::string>();
        if (policy == "fixed") {
            spec.horizon_policy = HorizonPolicy::fixed_n;
        } else if (policy == "scale-with-range") {
            spec.horizon_policy = HorizonPolicy::scale_with_range;
        } else {
            fail(path, "key 'horizon_policy' must be 'fixed' or 'scale-with-range'");
        }
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return spec;
}

std::string canonical_config_string(const EngagementScenario& s, const SolverConfig& c) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "p0=%.17g,%.17g;v0=%.17g,%.17g;chi0=%.17g,%.17g;nu0=%.17g,%.17g;"
                  "theta_f=%.17g;u_ub=%.17g;dt=%.17g;N=%d;"
                  "rho=%.17g;max_iter=%d;eps_pri=%.17g;eps_dual=%.17g",
                  s.p0.x(), s.p0.y(), s.v0.x(), s.v0.y(), s.chi0.x(), s.chi0.y(), s.nu0.x(),
                  s.nu0.y(), s.theta_f, s.u_ub, s.dt, s.N, c.rho, c.max_iter, c.eps_pri,
                  c.eps_dual);
    return std::string(buf);
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        hash ^= static_cast<std::uint64_t>(ch);
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string config_hash(const EngagementScenario& scenario, const SolverConfig& config) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical_config_string(scenario, config))));
    return std::string(buf);
}

}  // namespace divert
