#include "cbftbrrt/obstacles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cbftbrrt {

const DiscObstacle& DiscTrack::at_time(double t) const {
    if (steps.empty()) throw std::logic_error("DiscTrack::at_time on empty track");
    const double fi = (t - t0) / dt;
    long i = std::lround(fi);
    if (i < 0) i = 0;
    if (i >= static_cast<long>(steps.size())) i = static_cast<long>(steps.size()) - 1;
    return steps[static_cast<size_t>(i)];
}

double barrier_value_disc(const TransformedState& s, const DiscObstacle& obs, double robot_radius) {
    const double pad = obs.radius + s.ell + robot_radius;
    return (s.position() - obs.center).squared_norm() - pad * pad;
}

double barrier_value_halfplane(const TransformedState& s, const HalfPlaneObstacle& wall,
                               double robot_radius) {
    return wall.normal.dot(s.position()) - wall.offset - (s.ell + robot_radius);
}

double barrier_value_segment(const TransformedState& s, const SegmentObstacle& seg,
                             double robot_radius) {
    const Vec2 cp = seg.closest_point(s.position());
    const double pad = s.ell + robot_radius;
    return (s.position() - cp).squared_norm() - pad * pad;
}

namespace {

// Row for a quadratic barrier h = |p_t - c|^2 - pad^2. With the transformed
// input matrix, a = grad(h)^T g~ = [2Dx cos + 2Dy sin, ell(-2Dx sin + 2Dy cos)].
SafetyConstraint quadratic_row(const TransformedState& s, const Vec2& center, double h,
                               double beta) {
    const double dx = s.x_t - center.x;
    const double dy = s.y_t - center.y;
    const double c = std::cos(s.theta);
    const double sn = std::sin(s.theta);
    SafetyConstraint row;
    row.a_v = 2.0 * dx * c + 2.0 * dy * sn;
    row.a_omega = s.ell * (-2.0 * dx * sn + 2.0 * dy * c);
    row.h_value = h;
    row.b = beta * h;
    return row;
}

}  // namespace

SafetyConstraint constraint_row_disc(const TransformedState& s, const DiscObstacle& obs,
                                     double beta, double robot_radius) {
    if (beta <= 0.0) throw std::invalid_argument("constraint_row_disc: beta must be > 0");
    SafetyConstraint row =
        quadratic_row(s, obs.center, barrier_value_disc(s, obs, robot_radius), beta);
    row.source = obs.kind == ObstacleKind::PredictedDynamic ? ConstraintSource::Dynamic
                                                            : ConstraintSource::StaticDisc;
    row.agent_id = obs.agent_id;
    return row;
}

SafetyConstraint constraint_row_halfplane(const TransformedState& s, const HalfPlaneObstacle& wall,
                                          double beta, double robot_radius) {
    if (beta <= 0.0) throw std::invalid_argument("constraint_row_halfplane: beta must be > 0");
    const double c = std::cos(s.theta);
    const double sn = std::sin(s.theta);
    SafetyConstraint row;
    row.a_v = wall.normal.x * c + wall.normal.y * sn;
    row.a_omega = s.ell * (-wall.normal.x * sn + wall.normal.y * c);
    row.h_value = barrier_value_halfplane(s, wall, robot_radius);
    row.b = beta * row.h_value;
    row.source = ConstraintSource::Wall;
    return row;
}

SafetyConstraint constraint_row_segment(const TransformedState& s, const SegmentObstacle& seg,
                                        double beta, double robot_radius) {
    if (beta <= 0.0) throw std::invalid_argument("constraint_row_segment: beta must be > 0");
    const Vec2 cp = seg.closest_point(s.position());
    SafetyConstraint row = quadratic_row(s, cp, barrier_value_segment(s, seg, robot_radius), beta);
    row.source = ConstraintSource::WallSegment;
    return row;
}

std::vector<SafetyConstraint> active_constraints(const TransformedState& s,
                                                 const ObstacleSet& obstacles, double plan_time,
                                                 double beta, double robot_radius, double cutoff) {
    if (cutoff <= 0.0) throw std::invalid_argument("active_constraints: cutoff must be > 0");
    std::vector<SafetyConstraint> rows;
    const Vec2 p = s.position();
    for (const auto& w : obstacles.walls) {
        if (w.normal.dot(p) - w.offset <= cutoff)
            rows.push_back(constraint_row_halfplane(s, w, beta, robot_radius));
    }
    for (const auto& seg : obstacles.wall_segments) {
        if ((p - seg.closest_point(p)).norm() <= cutoff)
            rows.push_back(constraint_row_segment(s, seg, beta, robot_radius));
    }
    for (const auto& d : obstacles.static_discs) {
        if ((p - d.center).norm() <= cutoff)
            rows.push_back(constraint_row_disc(s, d, beta, robot_radius));
    }
    for (const auto& tr : obstacles.tracks) {
        if (tr.steps.empty()) continue;
        const DiscObstacle& d = tr.at_time(plan_time);
        if ((p - d.center).norm() <= cutoff)
            rows.push_back(constraint_row_disc(s, d, beta, robot_radius));
    }
    return rows;
}

double min_barrier(const TransformedState& s, const ObstacleSet& obstacles, double plan_time,
                   double robot_radius, double cutoff) {
    double h = std::numeric_limits<double>::infinity();
    const Vec2 p = s.position();
    for (const auto& w : obstacles.walls) {
        if (w.normal.dot(p) - w.offset <= cutoff)
            h = std::min(h, barrier_value_halfplane(s, w, robot_radius));
    }
    for (const auto& seg : obstacles.wall_segments) {
        if ((p - seg.closest_point(p)).norm() <= cutoff)
            h = std::min(h, barrier_value_segment(s, seg, robot_radius));
    }
    return std::min(h, min_barrier_discs(s, obstacles, plan_time, robot_radius, cutoff));
}

double min_barrier_discs(const TransformedState& s, const ObstacleSet& obstacles, double plan_time,
                         double robot_radius, double cutoff) {
    double h = std::numeric_limits<double>::infinity();
    const Vec2 p = s.position();
    for (const auto& d : obstacles.static_discs) {
        if ((p - d.center).norm() <= cutoff)
            h = std::min(h, barrier_value_disc(s, d, robot_radius));
    }
    for (const auto& tr : obstacles.tracks) {
        if (tr.steps.empty()) continue;
        const DiscObstacle& d = tr.at_time(plan_time);
        if ((p - d.center).norm() <= cutoff)
            h = std::min(h, barrier_value_disc(s, d, robot_radius));
    }
    return h;
}

}  // namespace cbftbrrt
