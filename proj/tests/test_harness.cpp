#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "divert/harness.hpp"
#include "test_scenarios.hpp"

using namespace divert;

namespace {

bool cells_identical(const SweepResult& a, const SweepResult& b) {
    if (a.cells.size() != b.cells.size()) {
        return false;
    }
    for (size_t i = 0; i < a.cells.size(); ++i) {
        const SweepCell& x = a.cells[i];
        const SweepCell& y = b.cells[i];
        const bool same = x.chi0 == y.chi0 && x.miss_admm == y.miss_admm &&
                          x.miss_ogl == y.miss_ogl && x.angle_err_admm == y.angle_err_admm &&
                          x.angle_err_ogl == y.angle_err_ogl &&
                          x.admm_converged == y.admm_converged && x.iterations == y.iterations &&
                          x.error == y.error;
        if (!same) {
            return false;
        }
    }
    return true;
}

// Collision-course family: closing speed 250 m/s, intercept time scales the
// feasible horizon.
EngagementScenario collision_variant(double v_up, double v_down) {
    EngagementScenario s = testing::collision_file().scenario;
    s.v0 = Vec2(0.0, v_up);
    s.nu0 = Vec2(0.0, -v_down);
    return s;
}

}  // namespace

TEST_CASE("compare: trivial scenario is easy for both methods, and deterministic") {
    const auto file = testing::collision_file();
    const auto [admm, ogl] = compare(file.scenario, file.config);
    CHECK(admm.converged);
    CHECK(admm.miss_distance <= 1e-3);
    CHECK(ogl.miss_distance <= 1e-3);

    const auto [admm2, ogl2] = compare(file.scenario, file.config);
    CHECK(admm.miss_distance == admm2.miss_distance);
    CHECK(admm.impact_angle_error == admm2.impact_angle_error);
    CHECK(ogl.miss_distance == ogl2.miss_distance);
    for (size_t t = 0; t < admm.controls.size(); ++t) {
        CHECK(admm.controls[t] == admm2.controls[t]);
    }
}

TEST_CASE("sweep: 1x1 grid reduces to a single compare") {
    // Collision base flies +y, so range 1000 / crosstrack 0 lands on chi0.
    const auto file = testing::collision_file();
    SweepSpec spec;
    spec.base_scenario = file.scenario;
    spec.config = file.config;
    spec.range_values = {1000.0};
    spec.crosstrack_values = {0.0};
    REQUIRE(spec.cell_chi0(1000.0, 0.0) == file.scenario.chi0);

    const SweepResult result = sweep(spec);
    REQUIRE(result.cells.size() == 1);
    const auto [admm, ogl] = compare(file.scenario, file.config);
    CHECK(result.cells[0].miss_admm == admm.miss_distance);
    CHECK(result.cells[0].miss_ogl == ogl.miss_distance);
    CHECK(result.cells[0].angle_err_admm == admm.impact_angle_error);
    CHECK(result.cells[0].iterations == admm.iterations);
}

TEST_CASE("sweep: grid dimensions") {
    const auto spec_file = testing::scenario_path("sweep_small.json");
    SweepSpec spec = load_sweep_spec(spec_file);
    spec.range_values = {940.0, 1000.0, 1060.0};
    spec.crosstrack_values = {-60.0, -20.0, 20.0, 60.0};
    spec.config.max_iter = 150;
    const SweepResult result = sweep(spec);
    CHECK(result.cells.size() == 12);
    CHECK(result.range_values.size() == 3);
    CHECK(result.crosstrack_values.size() == 4);
    // Row-major layout; the base flies +x so (range, crosstrack) = (x, y).
    CHECK(result.cell(1, 2).chi0 == Vec2(1000.0, 20.0));
}

TEST_CASE("sweep: OpenMP evaluation is bit-identical to the serial reference") {
    SweepSpec spec = load_sweep_spec(testing::scenario_path("sweep_small.json"));
    spec.config.max_iter = 300;
    const SweepResult parallel = sweep(spec);
    const SweepResult serial = sweep_serial(spec);
    CHECK(cells_identical(parallel, serial));
}

TEST_CASE("sweep: validation rejects bad axes") {
    SweepSpec spec = load_sweep_spec(testing::scenario_path("sweep_small.json"));
    spec.range_values = {};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = load_sweep_spec(testing::scenario_path("sweep_small.json"));
    spec.crosstrack_values = {1.0, 1.0};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("min_feasible_horizon: trivial brackets") {
    const auto file = testing::collision_file();
    SolverConfig config = file.config;
    config.max_iter = 2000;

    // Feasible at the lower edge.
    CHECK(min_feasible_horizon(file.scenario, config, 40, 46) == 40);
    // Degenerate bracket.
    CHECK(min_feasible_horizon(file.scenario, config, 40, 40) == 40);
    // Invalid bracket.
    CHECK_THROWS_AS(min_feasible_horizon(file.scenario, config, 30, 20), std::invalid_argument);
    CHECK_THROWS_AS(min_feasible_horizon(file.scenario, config, 1, 40), std::invalid_argument);
}

TEST_CASE("min_feasible_horizon: infeasible upper bound raises") {
    EngagementScenario s = testing::collision_file().scenario;
    s.nu0 = Vec2(0.0, 400.0);  // target runs away faster than the interceptor
    SolverConfig config = testing::collision_file().config;
    config.max_iter = 150;
    CHECK_THROWS_AS(min_feasible_horizon(s, config, 10, 14), std::runtime_error);
    CHECK_THROWS_AS(min_feasible_horizon_linear(s, config, 10, 14), std::runtime_error);
}

TEST_CASE("min_feasible_horizon: bisection equals the linear scan") {
    SolverConfig config = testing::collision_file().config;
    config.max_iter = 2500;

    struct Case {
        EngagementScenario scenario;
        int lo;
        int hi;
    };
    const Case cases[] = {
        {collision_variant(200.0, 50.0), 32, 40},   // intercept at N = 40
        {collision_variant(100.0, 100.0), 44, 50},  // intercept at N = 50
        {collision_variant(150.0, 100.0), 34, 40},  // intercept at N = 40
    };
    for (const Case& c : cases) {
        const int bisect = min_feasible_horizon(c.scenario, config, c.lo, c.hi);
        const int scan = min_feasible_horizon_linear(c.scenario, config, c.lo, c.hi);
        CHECK(bisect == scan);
    }
}

TEST_CASE("sweep: horizon policy") {
    SweepSpec spec = load_sweep_spec(testing::scenario_path("sweep_small.json"));
    // Fixed policy keeps the base horizon everywhere.
    CHECK(spec.cell_horizon(100.0, 0.0) == spec.base_scenario.N);

    spec.horizon_policy = HorizonPolicy::scale_with_range;
    const double base_dist = (spec.base_scenario.chi0 - spec.base_scenario.p0).norm();
    const Vec2 twice = spec.cell_chi0(1000.0, 500.0);
    const int expected = static_cast<int>(
        std::round(spec.base_scenario.N * twice.norm() / base_dist));
    CHECK(spec.cell_horizon(1000.0, 500.0) == expected);

    // Scaled horizons change the state dimensions, so warm start is rejected.
    spec.warm_start_from_base = true;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("is_feasible: tolerance scales with engagement size") {
    FeasibilityTolerance tol;
    EngagementScenario s = testing::collision_file().scenario;
    CHECK(tol.miss_for(s) == doctest::Approx(0.01));  // 1 km range
    s.chi0 = Vec2(0.0, 10000.0);
    CHECK(tol.miss_for(s) == doctest::Approx(0.1));  // 10 km range
}
