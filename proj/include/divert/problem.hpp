#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <utility>

#include "divert/scenario.hpp"

namespace divert {

/// Affine maps of the consensus form, assembled once per scenario.
///
/// Row layout of M = [A; I; P; G] and n = [b; 0; q; h]:
///   rows [0,3)              terminal map A (l_N rows + impact-angle row)
///   rows [3, 3+2N)          identity block paired with the acceleration ball
///   row  3+2N               terminal crosstrack-speed row P
///   rows [4+2N, 4+6N)       G = [I; L], control stack followed by the
///                           line-of-sight map for t = 0..N-1
/// M has 6N+4 rows and 2N columns. The least-squares factorization of
/// I + (rho/2) M^T M is cached here and reused by every iteration.
struct StackedProblem {
    int N = 0;
    double rho = 0.0;

    Eigen::SparseMatrix<double> A;  // 3 x 2N
    Eigen::Vector3d b;
    Eigen::SparseMatrix<double> P;  // 1 x 2N
    double q = 0.0;
    Eigen::SparseMatrix<double> G;  // 4N x 2N
    Eigen::VectorXd h;              // 4N

    Eigen::SparseMatrix<double> M;   // (6N+4) x 2N
    Eigen::SparseMatrix<double> Mt;  // cached transpose
    Eigen::VectorXd n;               // 6N+4

    Eigen::LLT<Eigen::MatrixXd> ls_factorization;  // of I + (rho/2) M^T M

    int rows() const { return 6 * N + 4; }
    int cols() const { return 2 * N; }

    // Row offsets of the stacked blocks.
    int off_terminal() const { return 0; }
    int off_ball() const { return 3; }
    int off_halfspace() const { return 3 + 2 * N; }
    int off_angle() const { return 4 + 2 * N; }        // G block start
    int off_angle_los() const { return 4 + 4 * N; }    // l-sub-block of G
};

/// Linear row enforcing sin(theta_f) v_{x,N} - cos(theta_f) v_{y,N} = 0 as a
/// function of the control stack, returned as (row, offset) with
/// row * u - offset = residual. Well defined for every theta_f including
/// +-pi/2, and equivalent to the tangent form wherever the latter exists.
std::pair<Eigen::RowVectorXd, double> impact_angle_row(const EngagementScenario& scenario);

/// Builds all affine maps and the cached factorization. Throws
/// std::invalid_argument for rho <= 0 or an invalid scenario.
StackedProblem assemble(const EngagementScenario& scenario, double rho);

}  // namespace divert
