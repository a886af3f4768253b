#pragma once

#include <map>

#include "cbftbrrt/geometry.hpp"
#include "cbftbrrt/planner.hpp"
#include "cbftbrrt/prediction.hpp"
#include "cbftbrrt/scenario.hpp"
#include "cbftbrrt/trace.hpp"

namespace cbftbrrt {

struct WorldState {
    double sim_time = 0.0;
    RobotState robot;
    std::map<int, Vec2> agents;
    bool collision = false;
};

struct SimOutcome {
    bool success = false;
    bool collision = false;
    double time_to_goal = 0.0;
    double min_clearance = 0.0;  // min(robot-agent distance - r_r - body)
    double min_h = 0.0;          // min reported safety measure over the run
    int steps = 0;
};

/// Deterministic discrete-time world driving the planning loop.
class World {
  public:
    World(const ScenarioSpec& spec, const PlannerParams& params);

    const WorldState& state() const { return state_; }

    /// Advances robot and agents by one step; flags ground-truth collisions.
    void step(const ControlInput& control);

    /// Exact agent positions stamped with the current sim time.
    std::vector<std::pair<int, Vec2>> observe() const;

  private:
    const ScenarioSpec& spec_;
    PlannerParams params_;
    WorldState state_;
};

struct Observation {
    int agent_id;
    double time;
    Vec2 position;
};

/// Full planning loop: observe, predict, grow, execute, re-root, until the
/// goal is reached, a collision occurs, or max_time elapses.
SimOutcome run_scenario(const ScenarioSpec& spec, const PlannerParams& params, double max_time,
                        Trace* trace = nullptr);

}  // namespace cbftbrrt
