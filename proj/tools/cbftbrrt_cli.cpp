// Command-line front end: run scenarios, sweep seeds, exercise the QP
// solver against its oracles, and dump predictor occupancy maps.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "cbftbrrt/planner.hpp"
#include "cbftbrrt/prediction.hpp"
#include "cbftbrrt/qp.hpp"
#include "cbftbrrt/scenario.hpp"
#include "cbftbrrt/sim.hpp"
#include "cbftbrrt/trace.hpp"

using namespace cbftbrrt;

namespace {

constexpr int kExitCollision = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitSpecError = 4;

bool load_scenario(const std::string& path, ScenarioSpec& spec) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open scenario file '" << path << "'\n";
        return false;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    std::vector<ParseError> errors;
    if (!parse_scenario(ss.str(), spec, errors)) {
        for (const auto& e : errors)
            std::cerr << path << ':' << e.line << ": " << e.message << '\n';
        return false;
    }
    return true;
}

bool load_params_file(const std::string& path, PlannerParams& params) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open params file '" << path << "'\n";
        return false;
    }
    std::string line;
    int lineno = 0;
    std::map<std::string, double> overrides;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key, name;
        double value;
        if (!(ls >> key)) continue;
        if (key != "param" || !(ls >> name >> value)) {
            std::cerr << path << ':' << lineno << ": expected 'param <name> <value>'\n";
            return false;
        }
        overrides[name] = value;
    }
    try {
        params = apply_overrides(params, overrides);
    } catch (const std::exception& e) {
        std::cerr << path << ": " << e.what() << '\n';
        return false;
    }
    return true;
}

int run_plan(const std::string& scenario_path, std::uint64_t seed, double max_time,
             int commit_horizon, const std::string& trace_path, const std::string& plot_path,
             const std::string& params_path) {
    ScenarioSpec spec;
    if (!load_scenario(scenario_path, spec)) return kExitSpecError;

    PlannerParams params;
    if (!params_path.empty() && !load_params_file(params_path, params)) return kExitSpecError;
    params.seed = seed;
    if (commit_horizon > 0) params.commit_horizon = commit_horizon;

    Trace trace;
    const SimOutcome out = run_scenario(spec, params, max_time, &trace);

    std::printf("success=%d collision=%d steps=%d time_to_goal=%.9g min_clearance=%.9g min_h=%.9g\n",
                out.success ? 1 : 0, out.collision ? 1 : 0, out.steps, out.time_to_goal,
                out.min_clearance, out.min_h);

    if (!trace_path.empty()) {
        std::ofstream sink(trace_path, std::ios::binary);
        if (!sink) {
            std::cerr << "error: cannot write trace file '" << trace_path << "'\n";
            return kExitSpecError;
        }
        emit_trace(trace, sink);
    }
    if (!plot_path.empty()) {
        std::ofstream sink(plot_path, std::ios::binary);
        if (!sink) {
            std::cerr << "error: cannot write plot file '" << plot_path << "'\n";
            return kExitSpecError;
        }
        emit_plot_data(trace, sink);
    }

    if (out.collision) return kExitCollision;
    if (!out.success) return kExitTimeout;
    return 0;
}

int run_sweep(const std::string& scenario_path, int seeds, double max_time) {
    ScenarioSpec spec;
    if (!load_scenario(scenario_path, spec)) return kExitSpecError;

    int successes = 0, collisions = 0;
    double sum_time = 0.0;
    double global_min_h = std::numeric_limits<double>::infinity();
    for (int s = 0; s < seeds; ++s) {
        PlannerParams params;
        params.seed = static_cast<std::uint64_t>(s);
        const SimOutcome out = run_scenario(spec, params, max_time);
        if (out.success) {
            ++successes;
            sum_time += out.time_to_goal;
        }
        if (out.collision) ++collisions;
        global_min_h = std::min(global_min_h, out.min_h);
        std::printf("seed=%d success=%d collision=%d time_to_goal=%.9g min_h=%.9g\n", s,
                    out.success ? 1 : 0, out.collision ? 1 : 0, out.time_to_goal, out.min_h);
    }
    std::printf("summary seeds=%d successes=%d collisions=%d mean_time_to_goal=%.9g min_h=%.9g\n",
                seeds, successes, collisions, successes ? sum_time / successes : 0.0,
                global_min_h);
    return collisions == 0 ? 0 : kExitCollision;
}

// Random QP instances checked against an exhaustive box-grid search.
int run_qp_check(int count, std::uint64_t seed) {
    Rng rng(seed);
    int failures = 0;
    for (int it = 0; it < count; ++it) {
        QpProblem p;
        p.box = {-0.33, 0.33, -0.3, 0.3};
        p.u_ref = {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
        const int n_rows = static_cast<int>(rng.uniform_index(6));
        for (int i = 0; i < n_rows; ++i) {
            SafetyConstraint r;
            r.a_v = rng.uniform(-3.0, 3.0);
            r.a_omega = rng.uniform(-3.0, 3.0);
            r.b = rng.uniform(-0.5, 2.0);
            r.h_value = r.b / 100.0;
            p.rows.push_back(r);
        }
        const QpResult sol = solve_qp(p);

        const double step = 1e-3;
        double best = std::numeric_limits<double>::infinity();
        for (double v = p.box.v_lo; v <= p.box.v_hi + 1e-12; v += step) {
            for (double w = p.box.omega_lo; w <= p.box.omega_hi + 1e-12; w += step) {
                bool ok = true;
                for (const auto& r : p.rows)
                    if (r.a_v * v + r.a_omega * w + r.b < 0.0) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                const double j = p.w_v * (v - p.u_ref.v) * (v - p.u_ref.v) +
                                 p.w_omega * (w - p.u_ref.omega) * (w - p.u_ref.omega);
                best = std::min(best, j);
            }
        }
        const bool grid_feasible = std::isfinite(best);
        bool ok = true;
        if (sol.feasible != grid_feasible && grid_feasible) ok = false;
        if (sol.feasible && grid_feasible && sol.objective > best + 1e-9) ok = false;
        if (!ok) {
            ++failures;
            std::printf("qp-check mismatch at iteration %d\n", it);
        }
    }
    std::printf("qp-check ran %d instances, %d failures\n", count, failures);
    return failures == 0 ? 0 : 1;
}

int run_predict_demo(const std::string& out_path) {
    TrackletStore store;
    for (int i = 0; i <= 5; ++i)
        store.ingest_observation(1, 0.1 * i, {0.1 * i, 0.0});  // 1 m/s along +x

    PredictorConfig cfg = PredictorConfig::defaults();
    cfg.horizon = 10;
    cfg.samples = 2000;
    cfg.goals = {{5.0, 0.0}};
    Rng rng(0);
    const auto maps = predict(store, cfg, rng);

    std::ofstream file;
    std::ostream* sink = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return kExitSpecError;
        }
        sink = &file;
    }
    for (const auto& [id, agent_maps] : maps)
        for (const auto& m : agent_maps) emit_occupancy_map(m, *sink);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CBF-TB-RRT corridor planner"};
    app.require_subcommand(1);

    std::string scenario_path, trace_path, plot_path, params_path, demo_out;
    std::uint64_t seed = 0;
    double max_time = 120.0;
    int commit_horizon = 0;
    int sweep_seeds = 20;
    int qp_count = 500;

    auto* plan = app.add_subcommand("plan", "Run one scenario");
    plan->add_option("scenario", scenario_path, "Scenario file")->required();
    plan->add_option("--seed", seed, "Random seed");
    plan->add_option("--max-time", max_time, "Simulated time limit, seconds");
    plan->add_option("--commit-horizon", commit_horizon, "Controls executed per cycle (1 or Ns)");
    plan->add_option("--trace", trace_path, "Trace output file");
    plan->add_option("--plot", plot_path, "Plot-data output file");
    plan->add_option("--params", params_path, "Parameter override file");

    auto* sweep = app.add_subcommand("sweep", "Run a batch of seeds and aggregate outcomes");
    sweep->add_option("scenario", scenario_path, "Scenario file")->required();
    sweep->add_option("--seeds", sweep_seeds, "Number of seeds");
    sweep->add_option("--max-time", max_time, "Simulated time limit, seconds");

    auto* qp = app.add_subcommand("qp-check", "Randomized QP solver check vs a grid oracle");
    qp->add_option("--count", qp_count, "Number of random instances");
    qp->add_option("--seed", seed, "Random seed");

    auto* demo = app.add_subcommand("predict-demo", "Dump occupancy maps for a fixture tracklet");
    demo->add_option("--out", demo_out, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan->parsed())
            return run_plan(scenario_path, seed, max_time, commit_horizon, trace_path, plot_path,
                            params_path);
        if (sweep->parsed()) return run_sweep(scenario_path, sweep_seeds, max_time);
        if (qp->parsed()) return run_qp_check(qp_count, seed);
        if (demo->parsed()) return run_predict_demo(demo_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSpecError;
    }
    return 0;
}
