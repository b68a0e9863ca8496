#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "divert/problem.hpp"
#include "divert/trajectory.hpp"
#include "test_scenarios.hpp"

using namespace divert;

namespace {

EngagementScenario simple_scenario(double dt, int N) {
    EngagementScenario s;
    s.v0 = Vec2(1.0, 0.0);
    s.chi0 = Vec2(5.0, 0.0);
    s.theta_f = M_PI_2;
    s.u_ub = 1.0;
    s.dt = dt;
    s.N = N;
    return s;
}

Eigen::VectorXd random_stack(int N, unsigned seed, double scale = 10.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-scale, scale);
    Eigen::VectorXd u(2 * N);
    for (int i = 0; i < 2 * N; ++i) {
        u[i] = dist(rng);
    }
    return u;
}

// Simulated counterparts of every block of M u - n.
struct SimulatedBlocks {
    Vec2 l_N;
    double angle_residual;
    double v_yN;
    Eigen::VectorXd l_stack;  // l_0..l_{N-1}
};

SimulatedBlocks simulate_blocks(const EngagementScenario& s, const Eigen::VectorXd& u) {
    const TrajectoryRecord rec = forward_simulate(s, u);
    SimulatedBlocks out;
    out.l_N = rec.l[s.N];
    out.angle_residual = std::sin(s.theta_f) * rec.v[s.N].x() - std::cos(s.theta_f) * rec.v[s.N].y();
    out.v_yN = rec.v[s.N].y();
    out.l_stack.resize(2 * s.N);
    for (int t = 0; t < s.N; ++t) {
        out.l_stack[2 * t] = rec.l[t].x();
        out.l_stack[2 * t + 1] = rec.l[t].y();
    }
    return out;
}

}  // namespace

TEST_CASE("forward_simulate: zero control is ballistic") {
    EngagementScenario s = simple_scenario(1.0, 3);
    const TrajectoryRecord rec = forward_simulate(s, Eigen::VectorXd::Zero(6));
    for (int t = 0; t <= 3; ++t) {
        CHECK(rec.p[t].x() == static_cast<double>(t));
        CHECK(rec.p[t].y() == 0.0);
    }
}

TEST_CASE("forward_simulate: stationary target gives l = chi0 - p") {
    EngagementScenario s = simple_scenario(1.0, 3);
    const TrajectoryRecord rec = forward_simulate(s, Eigen::VectorXd::Zero(6));
    CHECK(rec.l[3].x() == 2.0);
    CHECK(rec.l[3].y() == 0.0);
}

TEST_CASE("forward_simulate: one Euler step") {
    EngagementScenario s = simple_scenario(0.5, 2);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(4);
    u[1] = 2.0;  // u_0 = (0, 2)
    const TrajectoryRecord rec = forward_simulate(s, u);
    CHECK(rec.v[1] == Vec2(1.0, 1.0));
    CHECK(rec.p[1] == Vec2(0.5, 0.0));
}

TEST_CASE("forward_simulate: wrong stack length is rejected") {
    EngagementScenario s = simple_scenario(1.0, 3);
    CHECK_THROWS_AS(forward_simulate(s, Eigen::VectorXd::Zero(5)), std::invalid_argument);
    CHECK_THROWS_AS(forward_simulate(s, Eigen::VectorXd::Zero(8)), std::invalid_argument);
}

TEST_CASE("impact_angle_row: vertical impact angle selects v_x") {
    EngagementScenario s = simple_scenario(0.5, 4);
    s.theta_f = M_PI_2;
    const auto [row, offset] = impact_angle_row(s);
    for (int r = 0; r < s.N; ++r) {
        CHECK(row[2 * r] == doctest::Approx(s.dt));
        CHECK(std::abs(row[2 * r + 1]) < 1e-15);
    }
    CHECK(std::abs(offset - (-s.v0.x())) < 1e-15);
}

TEST_CASE("impact_angle_row: zero impact angle selects -v_y") {
    EngagementScenario s = simple_scenario(0.5, 4);
    s.theta_f = 0.0;
    const auto [row, offset] = impact_angle_row(s);
    for (int r = 0; r < s.N; ++r) {
        CHECK(row[2 * r] == 0.0);
        CHECK(row[2 * r + 1] == doctest::Approx(-s.dt));
    }
    CHECK(offset == doctest::Approx(s.v0.y()));
}

TEST_CASE("impact_angle_row: 45-degree impact with v_N = (3,3) is exact") {
    EngagementScenario s = simple_scenario(1.0, 2);
    s.theta_f = M_PI / 4.0;
    s.v0 = Vec2(3.0, 3.0);
    const auto [row, offset] = impact_angle_row(s);
    const Eigen::VectorXd u = Eigen::VectorXd::Zero(4);  // keeps v_N = v0
    CHECK(std::abs(row.dot(u) - offset) < 1e-14);
}

TEST_CASE("assemble: affine map at the origin matches the uncontrolled trajectory") {
    const EngagementScenario s = testing::nominal_file().scenario;
    const StackedProblem sp = assemble(s, 1.0);
    const SimulatedBlocks sim = simulate_blocks(s, Eigen::VectorXd::Zero(2 * s.N));

    const Eigen::Vector3d at_origin = -sp.b;  // A*0 - b
    CHECK(at_origin[0] == doctest::Approx(sim.l_N.x()).epsilon(1e-12));
    CHECK(at_origin[1] == doctest::Approx(sim.l_N.y()).epsilon(1e-12));
    CHECK(at_origin[2] == doctest::Approx(sim.angle_residual).epsilon(1e-12));

    // P*0 - q equals the constant-velocity terminal crosstrack speed.
    CHECK(-sp.q == doctest::Approx(sim.v_yN).epsilon(1e-12));
}

TEST_CASE("assemble: every block agrees with forward simulation on random controls") {
    const EngagementScenario nominal = testing::nominal_file().scenario;
    EngagementScenario small = nominal;
    small.N = 17;
    small.dt = 0.25;
    for (const EngagementScenario& s : {nominal, small}) {
        const StackedProblem sp = assemble(s, 2.5);
        for (unsigned seed = 0; seed < 20; ++seed) {
            const Eigen::VectorXd u = random_stack(s.N, seed, s.u_ub);
            const SimulatedBlocks sim = simulate_blocks(s, u);

            const Eigen::Vector3d terminal = sp.A * u - sp.b;
            const double scale_lN = std::max(1.0, sim.l_N.norm());
            CHECK(std::abs(terminal[0] - sim.l_N.x()) <= 1e-9 * scale_lN);
            CHECK(std::abs(terminal[1] - sim.l_N.y()) <= 1e-9 * scale_lN);
            CHECK(std::abs(terminal[2] - sim.angle_residual) <=
                  1e-9 * std::max(1.0, std::abs(sim.angle_residual)));

            const double v_yN = (sp.P * u)(0) - sp.q;
            CHECK(std::abs(v_yN - sim.v_yN) <= 1e-9 * std::max(1.0, std::abs(sim.v_yN)));

            const Eigen::VectorXd gu = sp.G * u - sp.h;
            CHECK((gu.head(2 * s.N) - u).lpNorm<Eigen::Infinity>() == 0.0);
            const double scale_l = std::max(1.0, sim.l_stack.norm());
            CHECK((gu.tail(2 * s.N) - sim.l_stack).norm() <= 1e-9 * scale_l);

            // Stacked M u - n reproduces the same pieces.
            const Eigen::VectorXd mu = sp.M * u - sp.n;
            CHECK((mu.segment(sp.off_terminal(), 3) - terminal).norm() == 0.0);
            CHECK((mu.segment(sp.off_ball(), 2 * s.N) - u).norm() == 0.0);
            CHECK(mu[sp.off_halfspace()] == doctest::Approx(v_yN).epsilon(1e-14));
            CHECK((mu.segment(sp.off_angle(), 4 * s.N) - gu).norm() == 0.0);
        }
    }
}

TEST_CASE("assemble: feasible instance satisfies A u = b exactly") {
    // Collision course: u = 0 keeps l_N = 0 and the heading at theta_f.
    const EngagementScenario s = testing::collision_file().scenario;
    const StackedProblem sp = assemble(s, 1.0);
    CHECK(sp.b.head<2>().norm() == 0.0);
    CHECK(std::abs(sp.b[2]) < 1e-12);
}

TEST_CASE("assemble: deterministic") {
    const EngagementScenario s = testing::nominal_file().scenario;
    const StackedProblem a = assemble(s, 1.0);
    const StackedProblem b = assemble(s, 1.0);
    CHECK(Eigen::MatrixXd(a.M) == Eigen::MatrixXd(b.M));
    CHECK(a.n == b.n);
    CHECK(a.b == b.b);
    CHECK(a.h == b.h);
    CHECK(a.q == b.q);
}

TEST_CASE("assemble: rejects non-positive rho") {
    const EngagementScenario s = testing::collision_file().scenario;
    CHECK_THROWS_AS(assemble(s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(assemble(s, -1.0), std::invalid_argument);
}

TEST_CASE("scenario validation") {
    EngagementScenario s = testing::collision_file().scenario;
    s.N = 1;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = testing::collision_file().scenario;
    s.dt = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = testing::collision_file().scenario;
    s.theta_f = 4.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
