// Timing comparison of the OpenMP kernels against their serial references:
// the per-pair angular projection stack and the scenario sweep.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "divert/harness.hpp"
#include "divert/projections.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double time_seconds(const std::function<void()>& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

Eigen::VectorXd random_eta(int N, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    Eigen::VectorXd eta(4 * N);
    for (int i = 0; i < eta.size(); ++i) {
        eta[i] = dist(rng);
    }
    return eta;
}

divert::EngagementScenario bench_scenario() {
    divert::EngagementScenario s;
    s.p0 = divert::Vec2(0.0, 0.0);
    s.v0 = divert::Vec2(250.0, 0.0);
    s.chi0 = divert::Vec2(3000.0, 800.0);
    s.nu0 = divert::Vec2(0.0, -120.0);
    s.theta_f = M_PI_2;
    s.u_ub = 45.0;
    s.dt = 0.1;
    s.N = 80;
    return s;
}

void bench_projection_stack() {
    std::printf("angular projection stack, serial vs OpenMP\n");
    std::printf("%10s %14s %14s %8s\n", "pairs", "serial [ms]", "openmp [ms]", "speedup");
    std::mt19937_64 rng(7);
    for (int N : {256, 1024, 4096, 16384, 65536}) {
        const Eigen::VectorXd eta = random_eta(N, rng);
        Eigen::VectorXd out_serial, out_parallel;
        const double ts = time_seconds(
            [&] { out_serial = divert::project_c3_stack_serial(eta, M_PI_2, N); }, 5);
        const double tp =
            time_seconds([&] { out_parallel = divert::project_c3_stack(eta, M_PI_2, N); }, 5);
        const bool identical = out_serial == out_parallel;
        std::printf("%10d %14.3f %14.3f %7.2fx%s\n", N, ts * 1e3, tp * 1e3, ts / tp,
                    identical ? "" : "  MISMATCH");
    }
}

void bench_sweep() {
    divert::SweepSpec spec;
    spec.base_scenario = bench_scenario();
    spec.config.rho = 1.0;
    spec.config.max_iter = 400;
    spec.range_values = {2600.0, 2800.0, 3000.0, 3200.0};
    spec.crosstrack_values = {500.0, 800.0, 1100.0, 1400.0};

    std::printf("\nscenario sweep (%zux%zu grid, %d iterations/cell), serial vs OpenMP\n",
                spec.range_values.size(), spec.crosstrack_values.size(), spec.config.max_iter);
    const double ts = time_seconds([&] { (void)divert::sweep_serial(spec); }, 3);
    const double tp = time_seconds([&] { (void)divert::sweep(spec); }, 3);
    std::printf("%10s %14.3f %14.3f %7.2fx\n", "cells", ts * 1e3, tp * 1e3, ts / tp);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
#endif
    bench_projection_stack();
    bench_sweep();
    return 0;
}
