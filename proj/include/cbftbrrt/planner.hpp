#pragma once

#include <vector>

#include "cbftbrrt/geometry.hpp"
#include "cbftbrrt/obstacles.hpp"
#include "cbftbrrt/params.hpp"
#include "cbftbrrt/qp.hpp"
#include "cbftbrrt/rng.hpp"

namespace cbftbrrt {

struct TreeVertex {
    RobotState state;
    double cost = 0.0;
    double timestamp = 0.0;
    int parent = -1;  // -1 for the root
};

/// Edge from parent to vertex i; states[0] is the parent state.
struct TreeEdge {
    std::vector<ControlInput> controls;
    std::vector<RobotState> states;
};

struct PlanTree {
    std::vector<TreeVertex> vertices;
    std::vector<TreeEdge> edges;  // edges[i] leads into vertices[i]; root entry empty

    static PlanTree rooted_at(const RobotState& state, double time);
    std::size_t size() const { return vertices.size(); }
};

/// Per-cycle growth budget: a node count (simulation mode) or a wall-clock
/// deadline in seconds (real-time mode, deadline > 0 takes precedence).
struct CycleBudget {
    int nodes = 0;
    double deadline_s = 0.0;
};

struct CycleResult {
    std::vector<ControlInput> commit;  // controls to execute this cycle
    int selected_vertex = 0;           // min-cost vertex (0 = root / wait)
    int committed_child = -1;          // child-of-root on the selected path
    double selected_cost = 0.0;
    int inserted = 0;                  // vertices added this cycle
};

std::size_t vertex_sample(const PlanTree& tree, Rng& rng);

/// Replaces the vertex heading with a Gaussian draw centered on the bearing
/// to the goal; position is unchanged.
RobotState state_sample(const TreeVertex& v, const GoalRegion& goal, double sigma_theta, Rng& rng);

/// v_ref uniform over the sampling range, omega_ref proportional to the
/// wrapped heading error, clamped to the box.
ControlInput ref_sample(const RobotState& x_rand, const GoalRegion& goal,
                        const PlannerParams& params, Rng& rng);

/// z = a1 * dist(x, goal) / (a2 * h), with h the minimum barrier over
/// eligible obstacles clamped into [h_floor, cutoff^2].
double vertex_cost(const RobotState& x_new, double t_new, const GoalRegion& goal,
                   const ObstacleSet& obstacles, const PlannerParams& params);

/// One expansion attempt; returns true when a vertex was added.
bool grow_once(PlanTree& tree, const ObstacleSet& obstacles, const GoalRegion& goal,
               const PlannerParams& params, Rng& rng);

/// One planning cycle: prune stale-unsafe retained branches, grow until the
/// budget runs out, select the min-cost vertex (ties to earliest insertion)
/// and commit the first control(s) of the root edge on that path. A tree
/// with no usable child commits the zero control.
CycleResult plan_cycle(PlanTree& tree, const ObstacleSet& obstacles, const GoalRegion& goal,
                       const PlannerParams& params, const CycleBudget& budget, Rng& rng);

/// Re-roots the tree at the executed state. The branch through
/// `committed_child` survives when its stored state at `steps_executed`
/// matches the executed state (within 1e-6); otherwise the tree is reset.
PlanTree reroot(const PlanTree& tree, int committed_child, int steps_executed,
                const RobotState& executed_state, double executed_time);

}  // namespace cbftbrrt
