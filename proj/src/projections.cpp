#include "divert/projections.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace divert {

namespace {

constexpr double kFeasibleAngleTol = 1e-12;   // |phi - theta| treated as on-set
constexpr double kCollinearTol = 1e-12;       // sin(phi) below this is collinear

// Golden-section minimizer of g(psi) = a2 sin^2(psi) + b2 sin^2(c - psi)
// on [0, c]. Only reached when the rotation offset exceeds pi/2, where the
// stationary-point formula stops selecting the bracketed minimum.
double golden_min_psi(double a2, double b2, double c) {
    auto g = [&](double psi) {
        const double sa = std::sin(psi);
        const double sb = std::sin(c - psi);
        return a2 * sa * sa + b2 * sb * sb;
    };
    const double inv_phi = 0.6180339887498949;
    double lo = 0.0, hi = c;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = g(x1), f2 = g(x2);
    while (hi - lo > 1e-12) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = g(x2);
        }
    }
    return 0.5 * (lo + hi);
}

// Optimal rotation of alpha for an angle offset c between the pair, from the
// stationarity condition gamma sin(2 psi) = delta cos(2 psi).
double optimal_psi(double a2, double b2, double c) {
    if (c > M_PI_2) {
        return golden_min_psi(a2, b2, c);
    }
    const double gamma = a2 + b2 * std::cos(2.0 * c);
    const double delta = b2 * std::sin(2.0 * c);
    const double omega = std::atan2(delta, gamma);
    return 0.5 * omega;
}

}  // namespace

Vec2 project_ball(const Vec2& x, double radius) {
    if (!(radius > 0.0)) {
        throw std::invalid_argument("project_ball: radius must be positive");
    }
    const double norm = x.norm();
    if (norm <= radius) {
        return x;
    }
    return (radius / norm) * x;
}

double angle_between(const Vec2& alpha, const Vec2& beta) {
    if (alpha.norm() == 0.0 || beta.norm() == 0.0) {
        throw std::invalid_argument("angle_between: zero-length input");
    }
    return std::atan2(std::abs(cross2(alpha, beta)), alpha.dot(beta));
}

VectorPairProjection project_angle_set(const VectorPair& pair, double theta) {
    if (!(theta > 0.0 && theta < M_PI)) {
        throw std::invalid_argument("project_angle_set: theta must lie in (0, pi)");
    }

    const Vec2 a = pair.alpha;
    const Vec2 b = pair.beta;
    const double na = a.norm();
    const double nb = b.norm();

    VectorPairProjection out;
    out.z_alpha = a;
    out.z_beta = b;

    // A zero vector satisfies the constraint in its dot-product form.
    if (na == 0.0 || nb == 0.0) {
        out.branch = ProjectionBranch::degenerate_zero;
        return out;
    }

    const double crs = cross2(a, b);
    const double dot = a.dot(b);
    const double phi = std::atan2(std::abs(crs), dot);

    if (std::abs(phi - theta) <= kFeasibleAngleTol) {
        out.branch = ProjectionBranch::already_feasible;
        return out;
    }

    const bool narr = phi > theta;
    const double c = std::abs(phi - theta);
    const double psi = optimal_psi(na * na, nb * nb, c);
    out.psi = psi;

    if (std::abs(crs) <= kCollinearTol * na * nb) {
        // Collinear: the span is one-dimensional and the opening side is
        // ambiguous. Tie-break: alpha rotates counterclockwise by psi and
        // beta clockwise by the remaining offset.
        out.branch = ProjectionBranch::degenerate_collinear;
        out.z_alpha = std::cos(psi) * rotate(a, psi);
        out.z_beta = std::cos(c - psi) * rotate(b, -(c - psi));
        return out;
    }

    out.branch = narr ? ProjectionBranch::projected_narr : ProjectionBranch::projected_wide;

    // Dot products of the projected vectors against alpha and beta; feet of
    // the perpendiculars onto the rays rotated by psi and c - psi.
    const double ca = std::cos(psi);
    const double cb = std::cos(c - psi);
    double d1, d2, d3, d4;
    if (narr) {
        d1 = na * na * ca * ca;
        d2 = na * nb * ca * std::cos(phi - psi);
        d3 = na * nb * cb * std::cos(theta + psi);
        d4 = nb * nb * cb * cb;
    } else {
        d1 = na * na * ca * ca;
        d2 = na * nb * ca * std::cos(phi + psi);
        d3 = na * nb * cb * std::cos(theta - psi);
        d4 = nb * nb * cb * cb;
    }

    // Two 2x2 systems sharing the matrix [alpha^T; beta^T].
    const double inv_det = 1.0 / crs;
    out.z_alpha = Vec2(inv_det * (b.y() * d1 - a.y() * d2), inv_det * (a.x() * d2 - b.x() * d1));
    out.z_beta = Vec2(inv_det * (b.y() * d3 - a.y() * d4), inv_det * (a.x() * d4 - b.x() * d3));
    return out;
}

namespace {

inline void project_pair_into(const Eigen::VectorXd& eta, Eigen::VectorXd& out, double theta,
                              int N, int t) {
    const VectorPair pair{Vec2(eta[2 * t], eta[2 * t + 1]),
                          Vec2(eta[2 * N + 2 * t], eta[2 * N + 2 * t + 1])};
    const VectorPairProjection proj = project_angle_set(pair, theta);
    out[2 * t] = proj.z_alpha.x();
    out[2 * t + 1] = proj.z_alpha.y();
    out[2 * N + 2 * t] = proj.z_beta.x();
    out[2 * N + 2 * t + 1] = proj.z_beta.y();
}

}  // namespace

Eigen::VectorXd project_c3_stack_serial(const Eigen::VectorXd& eta, double theta, int N) {
    if (N < 1 || eta.size() != 4 * N) {
        throw std::invalid_argument("project_c3_stack: eta must hold 4N entries");
    }
    Eigen::VectorXd out(4 * N);
    for (int t = 0; t < N; ++t) {
        project_pair_into(eta, out, theta, N, t);
    }
    return out;
}

Eigen::VectorXd project_c3_stack(const Eigen::VectorXd& eta, double theta, int N) {
    if (N < 1 || eta.size() != 4 * N) {
        throw std::invalid_argument("project_c3_stack: eta must hold 4N entries");
    }
#ifdef _OPENMP
    // Pairs are independent and each writes its own slots, so the schedule
    // does not affect the result. Small stacks and calls from inside an
    // already-parallel region (the sweep) skip the OpenMP runtime entirely.
    if (N >= 256 && !omp_in_parallel()) {
        Eigen::VectorXd out(4 * N);
#pragma omp parallel for schedule(static)
        for (int t = 0; t < N; ++t) {
            project_pair_into(eta, out, theta, N, t);
        }
        return out;
    }
#endif
    return project_c3_stack_serial(eta, theta, N);
}

}  // namespace divert
