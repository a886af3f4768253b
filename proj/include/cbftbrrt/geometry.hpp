#pragma once

#include <array>
#include <cmath>

namespace cbftbrrt {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    double squared_norm() const { return x * x + y * y; }
};

/// Wrap an angle to the half-open interval [-pi, pi).
inline double wrap_to_pi(double a) {
    a = std::fmod(a + M_PI, 2.0 * M_PI);
    if (a < 0.0) a += 2.0 * M_PI;
    return a - M_PI;
}

/// Shortest signed angular distance from `b` to `a`, in [-pi, pi).
inline double angle_diff(double a, double b) { return wrap_to_pi(a - b); }

/// Unicycle pose. theta is kept in [-pi, pi).
struct RobotState {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;

    Vec2 position() const { return {x, y}; }
};

/// Unicycle command: linear and angular velocity.
struct ControlInput {
    double v = 0.0;
    double omega = 0.0;
};

/// State shifted a distance `ell` ahead of the axle along the heading.
/// Both control channels act on the shifted position at relative degree 1.
struct TransformedState {
    double x_t = 0.0;
    double y_t = 0.0;
    double theta = 0.0;
    double ell = 0.0;

    Vec2 position() const { return {x_t, y_t}; }
};

struct GoalRegion {
    Vec2 center;
    double radius = 0.0;  // > 0
};

/// One explicit Euler step of the unicycle, heading re-normalized.
inline RobotState integrate_unicycle(const RobotState& s, const ControlInput& u, double dt) {
    RobotState out;
    out.x = s.x + dt * u.v * std::cos(s.theta);
    out.y = s.y + dt * u.v * std::sin(s.theta);
    out.theta = wrap_to_pi(s.theta + dt * u.omega);
    return out;
}

TransformedState to_transformed(const RobotState& s, double ell);

/// Input matrix of the transformed system:
/// [[cos t, -ell sin t], [sin t, ell cos t], [0, 1]].
std::array<std::array<double, 2>, 3> transformed_input_matrix(const TransformedState& s);

/// Goal membership on position only; heading is ignored. Boundary counts.
inline bool in_goal(const RobotState& s, const GoalRegion& g) {
    return (s.position() - g.center).squared_norm() <= g.radius * g.radius;
}

}  // namespace cbftbrrt
