#pragma once

#include <optional>
#include <vector>

#include "cbftbrrt/geometry.hpp"

namespace cbftbrrt {

enum class ObstacleKind { Static, PredictedDynamic };

struct DiscObstacle {
    Vec2 center;
    double radius = 0.0;  // >= 0
    ObstacleKind kind = ObstacleKind::Static;
    int agent_id = -1;        // predicted-dynamic only
    double timestamp = 0.0;   // predicted-dynamic only
};

/// Safe side satisfies normal . p - offset >= 0. normal is unit length.
struct HalfPlaneObstacle {
    Vec2 normal;
    double offset = 0.0;
};

/// Wall segment; treated as a zero-thickness capsule.
struct SegmentObstacle {
    Vec2 a;
    Vec2 b;

    Vec2 closest_point(const Vec2& p) const {
        const Vec2 d = b - a;
        const double len2 = d.squared_norm();
        if (len2 <= 0.0) return a;
        double s = (p - a).dot(d) / len2;
        s = std::min(1.0, std::max(0.0, s));
        return a + d * s;
    }
};

/// Per-agent sequence of prediction discs, one per horizon step,
/// starting at time t0 and spaced dt apart.
struct DiscTrack {
    int agent_id = -1;
    double t0 = 0.0;
    double dt = 0.1;
    std::vector<DiscObstacle> steps;

    /// Disc at plan time, clamped to the last horizon step.
    const DiscObstacle& at_time(double t) const;
};

struct ObstacleSet {
    std::vector<HalfPlaneObstacle> walls;
    std::vector<SegmentObstacle> wall_segments;
    std::vector<DiscObstacle> static_discs;
    std::vector<DiscTrack> tracks;
};

enum class ConstraintSource { StaticDisc, Wall, WallSegment, Dynamic };

/// One linear row a . u + b >= 0 with b = beta * h (drift-free system).
struct SafetyConstraint {
    double a_v = 0.0;
    double a_omega = 0.0;
    double b = 0.0;
    double h_value = 0.0;
    ConstraintSource source = ConstraintSource::StaticDisc;
    int agent_id = -1;

    double eval(const ControlInput& u) const { return a_v * u.v + a_omega * u.omega + b; }
};

/// h = |p_t - center|^2 - (radius + ell + r_r)^2. The ell padding covers
/// the gap between the transformed point and the axle.
double barrier_value_disc(const TransformedState& s, const DiscObstacle& obs, double robot_radius);

/// h for a half-plane wall: normal . p_t - offset - (ell + r_r).
double barrier_value_halfplane(const TransformedState& s, const HalfPlaneObstacle& wall,
                               double robot_radius);

double barrier_value_segment(const TransformedState& s, const SegmentObstacle& seg,
                             double robot_radius);

SafetyConstraint constraint_row_disc(const TransformedState& s, const DiscObstacle& obs,
                                     double beta, double robot_radius);

SafetyConstraint constraint_row_halfplane(const TransformedState& s, const HalfPlaneObstacle& wall,
                                          double beta, double robot_radius);

/// Segment row: the segment acts as a radius-zero disc at the closest point.
SafetyConstraint constraint_row_segment(const TransformedState& s, const SegmentObstacle& seg,
                                        double beta, double robot_radius);

/// Constraint rows for obstacles within `cutoff` of the transformed position.
/// Dynamic tracks contribute the disc at `plan_time` (clamped to horizon).
std::vector<SafetyConstraint> active_constraints(const TransformedState& s,
                                                 const ObstacleSet& obstacles, double plan_time,
                                                 double beta, double robot_radius, double cutoff);

/// Minimum barrier value over constraint-eligible obstacles. Empty range
/// yields +infinity.
double min_barrier(const TransformedState& s, const ObstacleSet& obstacles, double plan_time,
                   double robot_radius, double cutoff);

/// Same minimum restricted to disc obstacles (static + dynamic); used for
/// the reported safety measure.
double min_barrier_discs(const TransformedState& s, const ObstacleSet& obstacles, double plan_time,
                         double robot_radius, double cutoff);

}  // namespace cbftbrrt
