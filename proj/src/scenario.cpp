#include "cbftbrrt/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cbftbrrt {

Vec2 ScriptedAgent::position_at(double time) const {
    if (waypoints.empty()) throw std::logic_error("ScriptedAgent: no waypoints");
    if (waypoints.size() == 1 || speed <= 0.0 || time <= 0.0) return waypoints.front();
    double remain = speed * time;
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
        const Vec2 d = waypoints[i + 1] - waypoints[i];
        const double len = d.norm();
        if (remain <= len) {
            if (len <= 0.0) continue;
            return waypoints[i] + d * (remain / len);
        }
        remain -= len;
    }
    return waypoints.back();
}

namespace {

std::map<std::string, double*> param_table(PlannerParams& p) {
    return {
        {"ts", &p.ts},
        {"a1", &p.a1},
        {"a2", &p.a2},
        {"sigma_theta", &p.sigma_theta},
        {"a_omega", &p.a_omega},
        {"v_min_sample", &p.v_min_sample},
        {"v_max", &p.v_max},
        {"omega_max", &p.omega_max},
        {"p_o", &p.p_o},
        {"cutoff", &p.cutoff},
        {"beta", &p.beta},
        {"ell", &p.ell},
        {"r_r", &p.r_r},
        {"h_floor", &p.h_floor},
        {"qp_weight", &p.qp_weight},
        {"cell_size", &p.cell_size},
        {"body_radius", &p.body_radius},
    };
}

std::map<std::string, int*> int_param_table(PlannerParams& p) {
    return {
        {"ns", &p.ns},           {"no", &p.no},
        {"node_budget", &p.node_budget}, {"commit_horizon", &p.commit_horizon},
        {"k_samples", &p.k_samples},
    };
}

}  // namespace

PlannerParams apply_overrides(const PlannerParams& base,
                              const std::map<std::string, double>& overrides) {
    PlannerParams p = base;
    auto dbl = param_table(p);
    auto ints = int_param_table(p);
    for (const auto& [name, value] : overrides) {
        if (auto it = dbl.find(name); it != dbl.end()) {
            *it->second = value;
        } else if (auto ii = ints.find(name); ii != ints.end()) {
            *ii->second = static_cast<int>(std::lround(value));
        } else {
            throw std::invalid_argument("unknown parameter: " + name);
        }
    }
    return p;
}

namespace {

bool validate(const ScenarioSpec& spec, std::vector<ParseError>& errors) {
    bool ok = true;
    auto fail = [&](const std::string& msg) {
        errors.push_back({0, msg});
        ok = false;
    };

    if (spec.goal.radius <= 0.0) fail("goal radius must be > 0");

    // goal region must not intersect walls
    for (std::size_t i = 0; i < spec.walls.size(); ++i) {
        if (spec.walls[i].normal.dot(spec.goal.center) - spec.walls[i].offset <
            spec.goal.radius)
            fail("goal region intersects wall halfplane " + std::to_string(i));
    }
    for (std::size_t i = 0; i < spec.wall_segments.size(); ++i) {
        const Vec2 cp = spec.wall_segments[i].closest_point(spec.goal.center);
        if ((spec.goal.center - cp).norm() < spec.goal.radius)
            fail("goal region intersects wall segment " + std::to_string(i));
    }

    // robot start must be outside all inflated obstacles
    PlannerParams defaults = apply_overrides(PlannerParams{}, spec.param_overrides);
    const double pad = defaults.ell + defaults.r_r;
    const Vec2 p = spec.start.position();
    for (std::size_t i = 0; i < spec.walls.size(); ++i) {
        if (spec.walls[i].normal.dot(p) - spec.walls[i].offset < pad)
            fail("robot start inside inflated wall halfplane " + std::to_string(i));
    }
    for (std::size_t i = 0; i < spec.wall_segments.size(); ++i) {
        if ((p - spec.wall_segments[i].closest_point(p)).norm() < pad)
            fail("robot start inside inflated wall segment " + std::to_string(i));
    }
    for (std::size_t i = 0; i < spec.static_discs.size(); ++i) {
        if ((p - spec.static_discs[i].center).norm() < spec.static_discs[i].radius + pad)
            fail("robot start inside inflated static disc " + std::to_string(i));
    }

    std::set<int> ids;
    for (const auto& a : spec.agents) {
        if (!ids.insert(a.agent_id).second)
            fail("duplicate agent_id " + std::to_string(a.agent_id));
        if (a.waypoints.empty()) fail("agent " + std::to_string(a.agent_id) + " has no waypoints");
        if (a.speed < 0.0) fail("agent " + std::to_string(a.agent_id) + " has negative speed");
    }
    return ok;
}

}  // namespace

bool parse_scenario(const std::string& text, ScenarioSpec& out, std::vector<ParseError>& errors) {
    out = ScenarioSpec{};
    errors.clear();
    bool have_start = false, have_goal = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;

        auto err = [&](const std::string& msg) { errors.push_back({lineno, msg}); };
        auto need = [&](double& v) {
            if (!(ls >> v)) {
                err("expected a number");
                return false;
            }
            return true;
        };

        if (key == "start") {
            double x, y, th;
            if (need(x) && need(y) && need(th)) {
                out.start = {x, y, wrap_to_pi(th)};
                have_start = true;
            }
        } else if (key == "goal") {
            double x, y, r;
            if (need(x) && need(y) && need(r)) {
                out.goal = {{x, y}, r};
                have_goal = true;
            }
        } else if (key == "wall") {
            std::string kind;
            ls >> kind;
            if (kind == "halfplane") {
                double nx, ny, off;
                if (need(nx) && need(ny) && need(off)) {
                    const double n = std::hypot(nx, ny);
                    if (n < 1e-12) {
                        err("halfplane normal must be nonzero");
                    } else {
                        out.walls.push_back({{nx / n, ny / n}, off});
                    }
                }
            } else if (kind == "segment") {
                double x1, y1, x2, y2;
                if (need(x1) && need(y1) && need(x2) && need(y2))
                    out.wall_segments.push_back({{x1, y1}, {x2, y2}});
            } else {
                err("unknown wall kind '" + kind + "' (expected halfplane or segment)");
            }
        } else if (key == "disc") {
            double x, y, r;
            if (need(x) && need(y) && need(r)) {
                DiscObstacle d;
                d.center = {x, y};
                d.radius = r;
                out.static_discs.push_back(d);
            }
        } else if (key == "agent") {
            ScriptedAgent a;
            std::string tok;
            if (!(ls >> a.agent_id)) {
                err("agent needs an integer id");
                continue;
            }
            bool bad = false;
            while (ls >> tok) {
                if (tok == "speed") {
                    if (!need(a.speed)) bad = true;
                } else if (tok == "radius") {
                    if (!need(a.body_radius)) bad = true;
                } else if (tok == "waypoints") {
                    double x, y;
                    while (ls >> x) {
                        if (!(ls >> y)) {
                            err("waypoints need x y pairs");
                            bad = true;
                            break;
                        }
                        a.waypoints.push_back({x, y});
                    }
                } else {
                    err("unknown agent attribute '" + tok + "'");
                    bad = true;
                }
                if (bad) break;
            }
            if (!bad) out.agents.push_back(std::move(a));
        } else if (key == "human_goal") {
            double x, y;
            if (need(x) && need(y)) out.human_goals.push_back({x, y});
        } else if (key == "param") {
            std::string name;
            double value;
            if (!(ls >> name >> value)) {
                err("param needs a name and a value");
            } else {
                try {
                    apply_overrides(PlannerParams{}, {{name, value}});
                    out.param_overrides[name] = value;
                } catch (const std::exception& e) {
                    err(e.what());
                }
            }
        } else {
            err("unknown key '" + key + "'");
        }
        std::string trailing;
        if (errors.empty() && ls >> trailing) err("trailing token '" + trailing + "'");
    }

    if (!have_start) errors.push_back({0, "missing 'start'"});
    if (!have_goal) errors.push_back({0, "missing 'goal'"});
    if (!errors.empty()) return false;
    return validate(out, errors);
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

std::string print_scenario(const ScenarioSpec& spec) {
    std::ostringstream os;
    os << "start " << fmt(spec.start.x) << ' ' << fmt(spec.start.y) << ' '
       << fmt(spec.start.theta) << '\n';
    os << "goal " << fmt(spec.goal.center.x) << ' ' << fmt(spec.goal.center.y) << ' '
       << fmt(spec.goal.radius) << '\n';
    for (const auto& w : spec.walls)
        os << "wall halfplane " << fmt(w.normal.x) << ' ' << fmt(w.normal.y) << ' '
           << fmt(w.offset) << '\n';
    for (const auto& s : spec.wall_segments)
        os << "wall segment " << fmt(s.a.x) << ' ' << fmt(s.a.y) << ' ' << fmt(s.b.x) << ' '
           << fmt(s.b.y) << '\n';
    for (const auto& d : spec.static_discs)
        os << "disc " << fmt(d.center.x) << ' ' << fmt(d.center.y) << ' ' << fmt(d.radius)
           << '\n';
    for (const auto& a : spec.agents) {
        os << "agent " << a.agent_id << " speed " << fmt(a.speed) << " radius "
           << fmt(a.body_radius) << " waypoints";
        for (const auto& w : a.waypoints) os << ' ' << fmt(w.x) << ' ' << fmt(w.y);
        os << '\n';
    }
    for (const auto& g : spec.human_goals)
        os << "human_goal " << fmt(g.x) << ' ' << fmt(g.y) << '\n';
    for (const auto& [k, v] : spec.param_overrides) os << "param " << k << ' ' << fmt(v) << '\n';
    return os.str();
}

}  // namespace cbftbrrt
