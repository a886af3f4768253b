#include "cbftbrrt/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace cbftbrrt {

PlanTree PlanTree::rooted_at(const RobotState& state, double time) {
    PlanTree t;
    t.vertices.push_back({state, 0.0, time, -1});
    t.edges.emplace_back();
    return t;
}

std::size_t vertex_sample(const PlanTree& tree, Rng& rng) {
    if (tree.vertices.empty()) throw std::logic_error("vertex_sample: empty tree");
    return rng.uniform_index(tree.vertices.size());
}

RobotState state_sample(const TreeVertex& v, const GoalRegion& goal, double sigma_theta,
                        Rng& rng) {
    const double theta_g =
        std::atan2(goal.center.y - v.state.y, goal.center.x - v.state.x);
    RobotState s = v.state;
    s.theta = wrap_to_pi(rng.normal(theta_g, sigma_theta));
    return s;
}

ControlInput ref_sample(const RobotState& x_rand, const GoalRegion& goal,
                        const PlannerParams& params, Rng& rng) {
    const double theta_g = std::atan2(goal.center.y - x_rand.y, goal.center.x - x_rand.x);
    ControlInput u;
    u.v = rng.uniform(params.v_min_sample, params.v_max);
    u.omega = std::clamp(params.a_omega * angle_diff(x_rand.theta, theta_g), -params.omega_max,
                         params.omega_max);
    return u;
}

double vertex_cost(const RobotState& x_new, double t_new, const GoalRegion& goal,
                   const ObstacleSet& obstacles, const PlannerParams& params) {
    const double dist =
        std::max(0.0, (x_new.position() - goal.center).norm() - goal.radius);
    const TransformedState ts = to_transformed(x_new, params.ell);
    double h = min_barrier(ts, obstacles, t_new, params.r_r, params.cutoff);
    h = std::clamp(h, params.h_floor, params.cutoff * params.cutoff);
    return params.a1 * dist / (params.a2 * h);
}

bool grow_once(PlanTree& tree, const ObstacleSet& obstacles, const GoalRegion& goal,
               const PlannerParams& params, Rng& rng) {
    const std::size_t vi = vertex_sample(tree, rng);
    const TreeVertex v = tree.vertices[vi];
    const RobotState x_rand = state_sample(v, goal, params.sigma_theta, rng);
    const ControlInput u_ref = ref_sample(x_rand, goal, params, rng);

    // The sampled heading only shapes u_ref; steering starts from the stored
    // vertex state so edges replay exactly when executed.
    const SteerResult seg = steer(v.state, v.timestamp, u_ref, params.ns, obstacles, params);
    if (!seg.feasible) return false;

    TreeVertex nv;
    nv.state = seg.end_state;
    nv.timestamp = seg.end_time;
    nv.parent = static_cast<int>(vi);
    nv.cost = vertex_cost(seg.end_state, seg.end_time, goal, obstacles, params);
    tree.vertices.push_back(nv);
    tree.edges.push_back({seg.controls, seg.states});
    return true;
}

namespace {

// Drop retained vertices that are unsafe against the fresh obstacle
// snapshot, together with their subtrees.
void prune_stale(PlanTree& tree, const ObstacleSet& obstacles, const PlannerParams& params) {
    const std::size_t n = tree.vertices.size();
    if (n <= 1) return;
    std::vector<bool> keep(n, true);
    for (std::size_t i = 1; i < n; ++i) {
        const auto& v = tree.vertices[i];
        if (!keep[static_cast<std::size_t>(v.parent)]) {
            keep[i] = false;
            continue;
        }
        // validate every stored state of the incoming edge, not just the
        // endpoint: a retained prefix may be committed and executed later
        const double t_parent = tree.vertices[static_cast<std::size_t>(v.parent)].timestamp;
        const auto& edge = tree.edges[i];
        for (std::size_t k = 0; k < edge.states.size(); ++k) {
            const TransformedState ts = to_transformed(edge.states[k], params.ell);
            if (min_barrier(ts, obstacles, t_parent + static_cast<double>(k) * params.ts,
                            params.r_r, params.cutoff) < 0.0) {
                keep[i] = false;
                break;
            }
        }
    }
    PlanTree pruned;
    std::vector<int> remap(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (!keep[i]) continue;
        remap[i] = static_cast<int>(pruned.vertices.size());
        TreeVertex v = tree.vertices[i];
        if (v.parent >= 0) v.parent = remap[static_cast<std::size_t>(v.parent)];
        pruned.vertices.push_back(v);
        pruned.edges.push_back(tree.edges[i]);
    }
    tree = std::move(pruned);
}

// Keep the newest half (plus ancestors) when the retained tree grows past
// the cap; a bloated tree starves the exploration frontier of samples, and
// recent vertices are the frontier.
void prune_to_cap(PlanTree& tree, int cap) {
    const std::size_t n = tree.vertices.size();
    if (cap <= 0 || n <= static_cast<std::size_t>(cap)) return;

    std::vector<bool> keep(n, false);
    keep[0] = true;
    for (std::size_t j = n - static_cast<std::size_t>(cap) / 2; j < n; ++j) {
        for (int i = static_cast<int>(j); i >= 0 && !keep[static_cast<std::size_t>(i)];
             i = tree.vertices[static_cast<std::size_t>(i)].parent)
            keep[static_cast<std::size_t>(i)] = true;
    }

    PlanTree pruned;
    std::vector<int> remap(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (!keep[i]) continue;
        remap[i] = static_cast<int>(pruned.vertices.size());
        TreeVertex v = tree.vertices[i];
        if (v.parent >= 0) v.parent = remap[static_cast<std::size_t>(v.parent)];
        pruned.vertices.push_back(v);
        pruned.edges.push_back(tree.edges[i]);
    }
    tree = std::move(pruned);
}

}  // namespace

CycleResult plan_cycle(PlanTree& tree, const ObstacleSet& obstacles, const GoalRegion& goal,
                       const PlannerParams& params, const CycleBudget& budget, Rng& rng) {
    if (tree.vertices.empty()) throw std::logic_error("plan_cycle: tree has no root");

    prune_stale(tree, obstacles, params);

    // refresh costs against the new snapshot
    for (auto& v : tree.vertices)
        v.cost = vertex_cost(v.state, v.timestamp, goal, obstacles, params);

    prune_to_cap(tree, params.tree_cap);

    CycleResult res;
    if (budget.deadline_s > 0.0) {
        const auto start = std::chrono::steady_clock::now();
        while (std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() <
               budget.deadline_s) {
            // in trivial worlds a deadline admits huge trees whose upkeep
            // would dominate the next cycle; growth stops at a small
            // multiple of the retention cap
            if (static_cast<int>(tree.size()) > 4 * params.tree_cap) break;
            if (grow_once(tree, obstacles, goal, params, rng)) ++res.inserted;
        }
    } else {
        for (int i = 0; i < budget.nodes; ++i)
            if (grow_once(tree, obstacles, goal, params, rng)) ++res.inserted;
    }

    // min-cost vertex; the root wins ties, which realizes the wait behavior
    std::size_t best = 0;
    for (std::size_t i = 1; i < tree.vertices.size(); ++i)
        if (tree.vertices[i].cost < tree.vertices[best].cost) best = i;
    res.selected_vertex = static_cast<int>(best);
    res.selected_cost = tree.vertices[best].cost;

    if (best == 0) {
        res.commit.push_back({0.0, 0.0});
        return res;
    }

    std::size_t child = best;
    while (tree.vertices[child].parent != 0)
        child = static_cast<std::size_t>(tree.vertices[child].parent);
    res.committed_child = static_cast<int>(child);

    const auto& edge = tree.edges[child];
    const int n_commit = params.commit_horizon >= static_cast<int>(edge.controls.size())
                             ? static_cast<int>(edge.controls.size())
                             : std::max(1, params.commit_horizon);
    res.commit.assign(edge.controls.begin(), edge.controls.begin() + n_commit);
    return res;
}

namespace {

bool states_match(const RobotState& a, const RobotState& b) {
    return std::abs(a.x - b.x) <= 1e-6 && std::abs(a.y - b.y) <= 1e-6 &&
           std::abs(angle_diff(a.theta, b.theta)) <= 1e-6;
}

}  // namespace

PlanTree reroot(const PlanTree& tree, int committed_child, int steps_executed,
                const RobotState& executed_state, double executed_time) {
    if (committed_child <= 0 || committed_child >= static_cast<int>(tree.vertices.size())) {
        // zero-control wait: the robot is still at the root, so keep the
        // whole tree and only shift vertex timestamps forward
        if (!tree.vertices.empty() && states_match(tree.vertices[0].state, executed_state)) {
            PlanTree out = tree;
            const double delta = executed_time - out.vertices[0].timestamp;
            for (auto& v : out.vertices) v.timestamp += delta;
            return out;
        }
        return PlanTree::rooted_at(executed_state, executed_time);
    }

    const auto& edge = tree.edges[static_cast<std::size_t>(committed_child)];
    if (steps_executed < 1 || steps_executed >= static_cast<int>(edge.states.size()) ||
        !states_match(edge.states[static_cast<std::size_t>(steps_executed)], executed_state))
        return PlanTree::rooted_at(executed_state, executed_time);

    PlanTree out = PlanTree::rooted_at(executed_state, executed_time);

    const std::size_t n = tree.vertices.size();
    std::vector<int> remap(n, -1);

    if (steps_executed == static_cast<int>(edge.controls.size())) {
        // the whole edge was executed; the committed child becomes the root
        remap[static_cast<std::size_t>(committed_child)] = 0;
    } else {
        // mid-edge: keep the child with the remaining edge suffix
        TreeVertex child = tree.vertices[static_cast<std::size_t>(committed_child)];
        child.parent = 0;
        TreeEdge suffix;
        suffix.controls.assign(edge.controls.begin() + steps_executed, edge.controls.end());
        suffix.states.assign(edge.states.begin() + steps_executed, edge.states.end());
        remap[static_cast<std::size_t>(committed_child)] = 1;
        out.vertices.push_back(child);
        out.edges.push_back(std::move(suffix));
    }

    // keep the committed child's descendants (vertex indices grow with depth)
    for (std::size_t i = static_cast<std::size_t>(committed_child) + 1; i < n; ++i) {
        const int p = tree.vertices[i].parent;
        if (p < 0 || remap[static_cast<std::size_t>(p)] < 0) continue;
        TreeVertex v = tree.vertices[i];
        v.parent = remap[static_cast<std::size_t>(p)];
        remap[i] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(v);
        out.edges.push_back(tree.edges[i]);
    }
    return out;
}

}  // namespace cbftbrrt
