#pragma once

#include <map>
#include <string>
#include <vector>

#include "cbftbrrt/geometry.hpp"
#include "cbftbrrt/obstacles.hpp"
#include "cbftbrrt/params.hpp"

namespace cbftbrrt {

/// Scripted pedestrian: walks its waypoint polyline at constant speed and
/// stops at the final waypoint. speed = 0 is a standing agent.
struct ScriptedAgent {
    int agent_id = -1;
    double speed = 1.0;
    double body_radius = 0.25;
    std::vector<Vec2> waypoints;

    Vec2 position_at(double time) const;
};

/// Declarative world description; the line-oriented text format is
/// documented in docs/scenario_format.md.
struct ScenarioSpec {
    RobotState start;
    GoalRegion goal;
    std::vector<HalfPlaneObstacle> walls;
    std::vector<SegmentObstacle> wall_segments;
    std::vector<DiscObstacle> static_discs;
    std::vector<ScriptedAgent> agents;
    std::vector<Vec2> human_goals;  // predictor goal set
    std::map<std::string, double> param_overrides;
};

struct ParseError {
    int line = 0;
    std::string message;
};

/// Strict parse + validation. Unknown keys are errors. On failure, `errors`
/// holds position-annotated diagnostics and the returned value is unusable.
bool parse_scenario(const std::string& text, ScenarioSpec& out, std::vector<ParseError>& errors);

/// Canonical text form; parse(print(spec)) == spec for valid specs.
std::string print_scenario(const ScenarioSpec& spec);

/// Applies `param <name> <value>` overrides onto defaults. Throws on an
/// unknown parameter name.
PlannerParams apply_overrides(const PlannerParams& base,
                              const std::map<std::string, double>& overrides);

}  // namespace cbftbrrt
