#include "cbftbrrt/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cbftbrrt {

void TrackletStore::ingest_observation(int agent_id, double time, const Vec2& position) {
    auto& tl = tracklets_[agent_id];
    if (tl.samples.empty()) tl.agent_id = agent_id;
    if (!tl.samples.empty() && time <= tl.samples.back().time)
        throw std::invalid_argument("ingest_observation: timestamp not increasing");
    tl.samples.push_back({time, position});
}

const Tracklet* TrackletStore::find(int agent_id) const {
    auto it = tracklets_.find(agent_id);
    return it == tracklets_.end() ? nullptr : &it->second;
}

bool OccupancyMap::index_of(const Vec2& p, int& ix, int& iy) const {
    ix = static_cast<int>(std::floor((p.x - origin.x) / cell_size));
    iy = static_cast<int>(std::floor((p.y - origin.y) / cell_size));
    return ix >= 0 && ix < nx && iy >= 0 && iy < ny;
}

PredictorConfig PredictorConfig::defaults() {
    PredictorConfig c;
    for (double dth : {-0.6, -0.3, 0.0, 0.3, 0.6}) {
        c.action_set.push_back({dth, 1.0});
        c.action_set.push_back({dth, 0.5});
    }
    c.action_set.push_back({0.0, 0.0});  // stay
    return c;
}

namespace {

OccupancyMap make_map(const Vec2& center, const GridSpec& grid, double timestamp, int agent_id) {
    OccupancyMap m;
    m.cell_size = grid.cell_size;
    const int half = static_cast<int>(std::ceil(grid.half_extent / grid.cell_size));
    m.nx = 2 * half + 1;
    m.ny = 2 * half + 1;
    // snap the origin to the cell lattice so the agent sits at a cell center
    const double ax = std::floor(center.x / grid.cell_size) * grid.cell_size;
    const double ay = std::floor(center.y / grid.cell_size) * grid.cell_size;
    m.origin = {ax - half * grid.cell_size, ay - half * grid.cell_size};
    m.cells.assign(static_cast<size_t>(m.nx) * m.ny, 0.0);
    m.timestamp = timestamp;
    m.agent_id = agent_id;
    return m;
}

void deposit(OccupancyMap& m, const Vec2& p, double mass) {
    int ix, iy;
    if (m.index_of(p, ix, iy)) m.cells[static_cast<size_t>(iy) * m.nx + ix] += mass;
}

}  // namespace

std::map<int, std::vector<OccupancyMap>> predict(const TrackletStore& store,
                                                 const PredictorConfig& config, Rng& rng) {
    if (config.samples < 1 || config.horizon < 1 || config.action_set.empty())
        throw std::invalid_argument("predict: bad config");

    std::map<int, std::vector<OccupancyMap>> out;
    const double dt = config.step;

    for (const auto& [id, tl] : store.tracklets()) {
        const Vec2 pos0 = tl.samples.back().position;
        Vec2 vel{0.0, 0.0};
        if (tl.samples.size() >= 2) {
            const auto& a = tl.samples[tl.samples.size() - 2];
            const auto& b = tl.samples.back();
            const double span = b.time - a.time;
            if (span > 0.0) vel = (b.position - a.position) * (1.0 / span);
        }
        double speed = std::min(vel.norm(), 2.0);
        if (speed < 1e-9) speed = 0.0;
        const double heading0 = speed > 0.0 ? std::atan2(vel.y, vel.x) : 0.0;

        std::vector<OccupancyMap> maps;
        maps.reserve(static_cast<size_t>(config.horizon) + 1);
        for (int i = 0; i <= config.horizon; ++i)
            maps.push_back(make_map(pos0, config.grid, tl.samples.back().time + i * dt, id));
        deposit(maps[0], pos0, 1.0);

        const double mass = 1.0 / config.samples;
        std::vector<double> goal_w(config.goals.size());
        std::vector<double> act_w(config.action_set.size());

        for (int k = 0; k < config.samples; ++k) {
            // goal choice, weighted by alignment with the observed velocity
            Vec2 goal = pos0 + Vec2{std::cos(heading0), std::sin(heading0)} *
                                   (speed * config.horizon * dt);
            if (!config.goals.empty()) {
                double total = 0.0;
                for (size_t g = 0; g < config.goals.size(); ++g) {
                    double w = 1.0;
                    if (speed > 0.0) {
                        const Vec2 d = config.goals[g] - pos0;
                        const double bearing = std::atan2(d.y, d.x);
                        w = std::exp(config.goal_kappa * std::cos(bearing - heading0));
                    }
                    goal_w[g] = w;
                    total += w;
                }
                double pick = rng.uniform() * total;
                size_t g = 0;
                for (; g + 1 < goal_w.size(); ++g) {
                    if (pick < goal_w[g]) break;
                    pick -= goal_w[g];
                }
                goal = config.goals[g];
            }

            Vec2 pos = pos0;
            double heading =
                speed > 0.0 ? heading0 : std::atan2(goal.y - pos0.y, goal.x - pos0.x);
            for (int i = 1; i <= config.horizon; ++i) {
                // softmax over actions, scored by progress toward the goal
                double total = 0.0;
                const double d0 = (goal - pos).norm();
                for (size_t a = 0; a < config.action_set.size(); ++a) {
                    const auto& act = config.action_set[a];
                    const double th = heading + act.dtheta;
                    const Vec2 next =
                        pos + Vec2{std::cos(th), std::sin(th)} * (act.speed_scale * speed * dt);
                    const double progress =
                        (d0 - (goal - next).norm()) / std::max(speed * dt, 1e-9);
                    const double w = std::exp(progress / config.policy_temp);
                    act_w[a] = w;
                    total += w;
                }
                double pick = rng.uniform() * total;
                size_t a = 0;
                for (; a + 1 < act_w.size(); ++a) {
                    if (pick < act_w[a]) break;
                    pick -= act_w[a];
                }
                const auto& act = config.action_set[a];
                heading += act.dtheta;
                pos = pos + Vec2{std::cos(heading), std::sin(heading)} *
                                (act.speed_scale * speed * dt);
                deposit(maps[static_cast<size_t>(i)], pos, mass);
            }
        }
        out.emplace(id, std::move(maps));
    }
    return out;
}

PredictedDisc extract_disc(const OccupancyMap& map, double p_o) {
    if (p_o <= 0.0 || p_o > 1.0) throw std::invalid_argument("extract_disc: p_o out of range");

    PredictedDisc disc;
    disc.timestamp = map.timestamp;
    disc.agent_id = map.agent_id;
    disc.p_o = p_o;

    double best = -1.0;
    size_t best_i = 0;
    for (size_t i = 0; i < map.cells.size(); ++i) {
        if (map.cells[i] > best) {  // strict: first (row-major) cell wins ties
            best = map.cells[i];
            best_i = i;
        }
    }
    if (best <= 0.0) {
        disc.center = map.origin;
        disc.vacuous = true;
        return disc;
    }
    const int cx = static_cast<int>(best_i) % map.nx;
    const int cy = static_cast<int>(best_i) / map.nx;
    disc.center = map.cell_center(cx, cy);

    double r = 0.0;
    for (int iy = 0; iy < map.ny; ++iy) {
        for (int ix = 0; ix < map.nx; ++ix) {
            if (map.at(ix, iy) >= p_o)
                r = std::max(r, (map.cell_center(ix, iy) - disc.center).norm());
        }
    }
    disc.radius = r;
    return disc;
}

}  // namespace cbftbrrt
