#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace divert {

using Vec2 = Eigen::Vector2d;

// z-component of the 3D cross product of two planar vectors.
inline double cross2(const Vec2& a, const Vec2& b) {
    return a.x() * b.y() - a.y() * b.x();
}

// Counterclockwise rotation by +pi/2.
inline Vec2 rot90(const Vec2& v) {
    return Vec2(-v.y(), v.x());
}

inline Vec2 rotate(const Vec2& v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return Vec2(c * v.x() - s * v.y(), s * v.x() + c * v.y());
}

// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
    const double w = std::atan2(std::sin(a), std::cos(a));
    return w;
}

// Direction angle of a nonzero vector, in (-pi, pi].
inline double angle_of(const Vec2& v) {
    return std::atan2(v.y(), v.x());
}

}  // namespace divert
