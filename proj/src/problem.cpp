#include "divert/problem.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace divert {

namespace {

// Line-of-sight vector of the uncontrolled trajectory at step t.
Vec2 los_free(const EngagementScenario& s, int t) {
    return s.chi0 - s.p0 + s.dt * static_cast<double>(t) * (s.nu0 - s.v0);
}

}  // namespace

std::pair<Eigen::RowVectorXd, double> impact_angle_row(const EngagementScenario& scenario) {
    const int N = scenario.N;
    const double st = std::sin(scenario.theta_f);
    const double ct = std::cos(scenario.theta_f);

    // sin(theta_f) v_{x,N} - cos(theta_f) v_{y,N} with v_N = v0 + dt sum u.
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(2 * N);
    for (int r = 0; r < N; ++r) {
        row[2 * r] = scenario.dt * st;
        row[2 * r + 1] = -scenario.dt * ct;
    }
    const double offset = ct * scenario.v0.y() - st * scenario.v0.x();
    return {row, offset};
}

StackedProblem assemble(const EngagementScenario& scenario, double rho) {
    scenario.validate();
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw std::invalid_argument("assemble: rho must be positive");
    }

    const int N = scenario.N;
    const double dt = scenario.dt;
    const double dt2 = dt * dt;

    StackedProblem sp;
    sp.N = N;
    sp.rho = rho;

    using Triplet = Eigen::Triplet<double>;

    // Terminal block: two rows for l_N, one for the impact angle.
    {
        std::vector<Triplet> trip;
        trip.reserve(static_cast<size_t>(4 * N));
        for (int r = 0; r <= N - 2; ++r) {
            const double c = -dt2 * static_cast<double>(N - 1 - r);
            trip.emplace_back(0, 2 * r, c);
            trip.emplace_back(1, 2 * r + 1, c);
        }
        const auto [angle_row, angle_offset] = impact_angle_row(scenario);
        for (int j = 0; j < 2 * N; ++j) {
            if (angle_row[j] != 0.0) {
                trip.emplace_back(2, j, angle_row[j]);
            }
        }
        sp.A.resize(3, 2 * N);
        sp.A.setFromTriplets(trip.begin(), trip.end());
        const Vec2 lNf = los_free(scenario, N);
        sp.b = Eigen::Vector3d(-lNf.x(), -lNf.y(), angle_offset);
    }

    // Terminal crosstrack speed: v_{y,N} = P u - q.
    {
        std::vector<Triplet> trip;
        trip.reserve(static_cast<size_t>(N));
        for (int r = 0; r < N; ++r) {
            trip.emplace_back(0, 2 * r + 1, dt);
        }
        sp.P.resize(1, 2 * N);
        sp.P.setFromTriplets(trip.begin(), trip.end());
        sp.q = -scenario.v0.y();
    }

    // G = [I; L]: the control stack itself and the line-of-sight map for
    // t = 0..N-1 (l_N enters only through A).
    {
        std::vector<Triplet> trip;
        trip.reserve(static_cast<size_t>(2 * N + N * N));
        for (int j = 0; j < 2 * N; ++j) {
            trip.emplace_back(j, j, 1.0);
        }
        for (int t = 0; t < N; ++t) {
            for (int r = 0; r <= t - 2; ++r) {
                const double c = -dt2 * static_cast<double>(t - 1 - r);
                trip.emplace_back(2 * N + 2 * t, 2 * r, c);
                trip.emplace_back(2 * N + 2 * t + 1, 2 * r + 1, c);
            }
        }
        sp.G.resize(4 * N, 2 * N);
        sp.G.setFromTriplets(trip.begin(), trip.end());

        sp.h = Eigen::VectorXd::Zero(4 * N);
        for (int t = 0; t < N; ++t) {
            const Vec2 lf = los_free(scenario, t);
            sp.h[2 * N + 2 * t] = -lf.x();
            sp.h[2 * N + 2 * t + 1] = -lf.y();
        }
    }

    // Stack M = [A; I; P; G] and n = [b; 0; q; h].
    {
        std::vector<Triplet> trip;
        auto append = [&trip](const Eigen::SparseMatrix<double>& block, int row0) {
            for (int k = 0; k < block.outerSize(); ++k) {
                for (Eigen::SparseMatrix<double>::InnerIterator it(block, k); it; ++it) {
                    trip.emplace_back(row0 + static_cast<int>(it.row()),
                                      static_cast<int>(it.col()), it.value());
                }
            }
        };
        append(sp.A, sp.off_terminal());
        for (int j = 0; j < 2 * N; ++j) {
            trip.emplace_back(sp.off_ball() + j, j, 1.0);
        }
        append(sp.P, sp.off_halfspace());
        append(sp.G, sp.off_angle());

        sp.M.resize(sp.rows(), sp.cols());
        sp.M.setFromTriplets(trip.begin(), trip.end());
        sp.M.makeCompressed();
        sp.Mt = sp.M.transpose();
        sp.Mt.makeCompressed();

        sp.n = Eigen::VectorXd::Zero(sp.rows());
        sp.n.segment(sp.off_terminal(), 3) = sp.b;
        sp.n[sp.off_halfspace()] = sp.q;
        sp.n.segment(sp.off_angle(), 4 * N) = sp.h;
    }

    // I + (rho/2) M^T M is positive definite by construction.
    Eigen::MatrixXd K = Eigen::MatrixXd::Identity(2 * N, 2 * N);
    K += (rho / 2.0) * Eigen::MatrixXd(sp.Mt * sp.M);
    sp.ls_factorization.compute(K);
    assert(sp.ls_factorization.info() == Eigen::Success);

    return sp;
}

}  // namespace divert
