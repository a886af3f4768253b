#include "cbftbrrt/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cbftbrrt {

World::World(const ScenarioSpec& spec, const PlannerParams& params)
    : spec_(spec), params_(params) {
    state_.robot = spec.start;
    state_.sim_time = 0.0;
    for (const auto& a : spec.agents) state_.agents[a.agent_id] = a.position_at(0.0);
}

void World::step(const ControlInput& control) {
    state_.robot = integrate_unicycle(state_.robot, control, params_.ts);
    state_.sim_time += params_.ts;
    for (const auto& a : spec_.agents) {
        const Vec2 p = a.position_at(state_.sim_time);
        state_.agents[a.agent_id] = p;
        if ((state_.robot.position() - p).norm() < params_.r_r + a.body_radius)
            state_.collision = true;
    }
    const Vec2 rp = state_.robot.position();
    for (const auto& w : spec_.walls)
        if (w.normal.dot(rp) - w.offset < params_.r_r) state_.collision = true;
    for (const auto& s : spec_.wall_segments)
        if ((rp - s.closest_point(rp)).norm() < params_.r_r) state_.collision = true;
    for (const auto& d : spec_.static_discs)
        if ((rp - d.center).norm() < params_.r_r + d.radius) state_.collision = true;
}

std::vector<std::pair<int, Vec2>> World::observe() const {
    std::vector<std::pair<int, Vec2>> obs;
    obs.reserve(state_.agents.size());
    for (const auto& [id, p] : state_.agents) obs.emplace_back(id, p);
    return obs;
}

namespace {

ObstacleSet build_obstacle_set(const ScenarioSpec& spec, const PlannerParams& params,
                               const TrackletStore& store, const PredictorConfig& cfg,
                               double sim_time, Rng& rng) {
    ObstacleSet obs;
    obs.walls = spec.walls;
    obs.wall_segments = spec.wall_segments;
    obs.static_discs = spec.static_discs;

    std::map<int, double> body;
    for (const auto& a : spec.agents) body[a.agent_id] = a.body_radius;

    auto maps = predict(store, cfg, rng);
    for (const auto& [id, agent_maps] : maps) {
        DiscTrack track;
        track.agent_id = id;
        track.t0 = sim_time;
        track.dt = params.ts;
        const double pad = body.count(id) ? body.at(id) : params.body_radius;
        bool have_prev = false;
        DiscObstacle prev;
        for (const auto& m : agent_maps) {
            const PredictedDisc d = extract_disc(m, params.p_o);
            if (d.vacuous) {
                if (have_prev) track.steps.push_back(prev);  // carry forward
                continue;
            }
            DiscObstacle o;
            o.center = d.center;
            o.radius = d.radius + pad;  // pedestrian body folded into the disc
            o.kind = ObstacleKind::PredictedDynamic;
            o.agent_id = id;
            o.timestamp = d.timestamp;
            track.steps.push_back(o);
            prev = o;
            have_prev = true;
        }
        if (!track.steps.empty()) obs.tracks.push_back(std::move(track));
    }
    return obs;
}

}  // namespace

SimOutcome run_scenario(const ScenarioSpec& spec, const PlannerParams& base_params,
                        double max_time, Trace* trace) {
    const PlannerParams params = apply_overrides(base_params, spec.param_overrides);

    World world(spec, params);
    Rng rng(params.seed);
    TrackletStore store;
    for (const auto& [id, p] : world.observe()) store.ingest_observation(id, 0.0, p);

    PredictorConfig cfg = PredictorConfig::defaults();
    cfg.horizon = params.no;
    cfg.samples = params.k_samples;
    cfg.step = params.ts;
    cfg.goals = spec.human_goals;
    cfg.grid.cell_size = params.cell_size;

    PlanTree tree = PlanTree::rooted_at(spec.start, 0.0);

    SimOutcome outcome;
    outcome.min_clearance = std::numeric_limits<double>::infinity();
    outcome.min_h = std::numeric_limits<double>::infinity();

    while (true) {
        if (in_goal(world.state().robot, spec.goal)) {
            outcome.success = true;
            outcome.time_to_goal = world.state().sim_time;
            break;
        }
        if (world.state().sim_time >= max_time - 1e-9) break;

        const ObstacleSet obs = build_obstacle_set(spec, params, store, cfg,
                                                   world.state().sim_time, rng);
        const CycleResult cycle =
            plan_cycle(tree, obs, spec.goal, params, {params.node_budget, 0.0}, rng);

        int executed = 0;
        bool done = false;
        for (const auto& u : cycle.commit) {
            world.step(u);
            ++executed;
            const auto& ws = world.state();
            for (const auto& [id, p] : ws.agents) {
                double body = params.body_radius;
                for (const auto& a : spec.agents)
                    if (a.agent_id == id) body = a.body_radius;
                outcome.min_clearance = std::min(
                    outcome.min_clearance, (ws.robot.position() - p).norm() - params.r_r - body);
            }
            const TransformedState ts = to_transformed(ws.robot, params.ell);
            const double h =
                min_barrier_discs(ts, obs, ws.sim_time, params.r_r, params.cutoff);
            outcome.min_h = std::min(outcome.min_h, h);
            ++outcome.steps;

            for (const auto& [id, p] : world.observe())
                store.ingest_observation(id, ws.sim_time, p);

            if (trace) {
                TraceRecord rec;
                rec.sim_time = ws.sim_time;
                rec.robot = ws.robot;
                rec.control = u;
                rec.selected_cost = cycle.selected_cost;
                rec.min_h = h;
                rec.tree_size = static_cast<int>(tree.size());
                for (const auto& [id, p] : ws.agents) {
                    TraceAgentRecord ar;
                    ar.agent_id = id;
                    ar.position = p;
                    for (const auto& tr : obs.tracks) {
                        if (tr.agent_id != id) continue;
                        const DiscObstacle& d = tr.at_time(ws.sim_time);
                        ar.disc_center = d.center;
                        ar.disc_radius = d.radius;
                        ar.disc_timestamp = d.timestamp;
                        ar.has_disc = true;
                    }
                    rec.agents.push_back(ar);
                }
                trace->push_back(std::move(rec));
            }

            if (ws.collision) {
                outcome.collision = true;
                done = true;
                break;
            }
            if (in_goal(ws.robot, spec.goal)) {
                outcome.success = true;
                outcome.time_to_goal = ws.sim_time;
                done = true;
                break;
            }
        }
        if (done) break;

        tree = reroot(tree, cycle.committed_child, executed, world.state().robot,
                      world.state().sim_time);
    }

    return outcome;
}

}  // namespace cbftbrrt
