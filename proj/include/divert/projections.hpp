#pragma once

#include <Eigen/Dense>

#include "divert/geometry.hpp"

namespace divert {

// Projection onto the ball of given radius centered at the origin.
Vec2 project_ball(const Vec2& x, double radius);

// Positive part (x)_+.
inline double project_halfspace(double x) { return x > 0.0 ? x : 0.0; }

/// Unsigned angle between two nonzero vectors, in [0, pi]. Uses
/// atan2(|cross|, dot) so results stay accurate near 0 and pi.
/// Throws std::invalid_argument on a zero-length input.
double angle_between(const Vec2& alpha, const Vec2& beta);

struct VectorPair {
    Vec2 alpha;
    Vec2 beta;
};

enum class ProjectionBranch {
    already_feasible,
    projected_narr,       // input angle > theta, closed toward theta
    projected_wide,       // input angle < theta, opened toward theta
    degenerate_zero,      // a zero vector; pair feasible by convention
    degenerate_collinear  // angle 0 or pi; deterministic tie-break applied
};

struct VectorPairProjection {
    Vec2 z_alpha;
    Vec2 z_beta;
    ProjectionBranch branch = ProjectionBranch::already_feasible;
    double psi = 0.0;  // minimizing rotation of alpha [rad], 0 when unused
};

/// Projects one (alpha, beta) pair onto the set of pairs whose inter-angle
/// equals theta. theta must lie in (0, pi). The pair rotates by the angle
/// psi = Omega/2 that minimizes
///     g(psi) = |alpha|^2 sin^2(psi) + |beta|^2 sin^2(offset - psi),
/// with offset = |angle(alpha,beta) - theta|; the projected vectors are the
/// perpendicular feet of alpha and beta on the rotated rays, recovered from
/// the 2x2 linear systems in the (alpha, beta) dot-product basis.
///
/// Degenerate inputs do not fail: a zero vector is returned unchanged
/// (its inter-angle constraint holds as dot(alpha, beta) = 0), and collinear
/// pairs split by a fixed tie-break (alpha rotates counterclockwise).
VectorPairProjection project_angle_set(const VectorPair& pair, double theta);

/// Per-pair projection of a stacked (u, l) point: eta holds 4N entries, the
/// first 2N the u-side and the last 2N the l-side; pair t is
/// (eta[2t..2t+1], eta[2N+2t..2N+2t+1]). Pairs are independent.
/// Throws std::invalid_argument when eta.size() != 4N.
Eigen::VectorXd project_c3_stack(const Eigen::VectorXd& eta, double theta, int N);

// Serial reference for the OpenMP kernel above; results are bit-identical.
Eigen::VectorXd project_c3_stack_serial(const Eigen::VectorXd& eta, double theta, int N);

}  // namespace divert
