// Python bindings for the planner core. The surface mirrors the CLI: parse
// a scenario, solve single QPs, run predictions, and run full scenarios.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cbftbrrt/obstacles.hpp"
#include "cbftbrrt/planner.hpp"
#include "cbftbrrt/prediction.hpp"
#include "cbftbrrt/qp.hpp"
#include "cbftbrrt/scenario.hpp"
#include "cbftbrrt/sim.hpp"
#include "cbftbrrt/trace.hpp"

namespace py = pybind11;
using namespace cbftbrrt;

namespace {

ScenarioSpec parse_or_throw(const std::string& text) {
    ScenarioSpec spec;
    std::vector<ParseError> errors;
    if (!parse_scenario(text, spec, errors)) {
        std::ostringstream msg;
        for (const auto& e : errors) msg << "line " << e.line << ": " << e.message << "\n";
        throw std::invalid_argument(msg.str());
    }
    return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "CBF-constrained time-budgeted RRT planner core";

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<>())
        .def(py::init([](double x, double y) { return Vec2{x, y}; }))
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("norm", &Vec2::norm)
        .def("__repr__", [](const Vec2& v) {
            return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
        });

    py::class_<RobotState>(m, "RobotState")
        .def(py::init<>())
        .def(py::init([](double x, double y, double theta) {
            return RobotState{x, y, theta};
        }))
        .def_readwrite("x", &RobotState::x)
        .def_readwrite("y", &RobotState::y)
        .def_readwrite("theta", &RobotState::theta);

    py::class_<ControlInput>(m, "ControlInput")
        .def(py::init<>())
        .def(py::init([](double v, double omega) { return ControlInput{v, omega}; }))
        .def_readwrite("v", &ControlInput::v)
        .def_readwrite("omega", &ControlInput::omega);

    py::class_<GoalRegion>(m, "GoalRegion")
        .def(py::init<>())
        .def_readwrite("center", &GoalRegion::center)
        .def_readwrite("radius", &GoalRegion::radius);

    py::class_<PlannerParams>(m, "PlannerParams")
        .def(py::init<>())
        .def_readwrite("ts", &PlannerParams::ts)
        .def_readwrite("ns", &PlannerParams::ns)
        .def_readwrite("no", &PlannerParams::no)
        .def_readwrite("v_max", &PlannerParams::v_max)
        .def_readwrite("omega_max", &PlannerParams::omega_max)
        .def_readwrite("p_o", &PlannerParams::p_o)
        .def_readwrite("beta", &PlannerParams::beta)
        .def_readwrite("ell", &PlannerParams::ell)
        .def_readwrite("r_r", &PlannerParams::r_r)
        .def_readwrite("node_budget", &PlannerParams::node_budget)
        .def_readwrite("seed", &PlannerParams::seed);

    py::class_<Box>(m, "Box")
        .def(py::init<>())
        .def(py::init([](double vl, double vh, double wl, double wh) {
            return Box{vl, vh, wl, wh};
        }))
        .def_readwrite("v_lo", &Box::v_lo)
        .def_readwrite("v_hi", &Box::v_hi)
        .def_readwrite("omega_lo", &Box::omega_lo)
        .def_readwrite("omega_hi", &Box::omega_hi);

    py::class_<SafetyConstraint>(m, "SafetyConstraint")
        .def(py::init<>())
        .def(py::init([](double a_v, double a_omega, double b) {
            SafetyConstraint r;
            r.a_v = a_v;
            r.a_omega = a_omega;
            r.b = b;
            return r;
        }))
        .def_readwrite("a_v", &SafetyConstraint::a_v)
        .def_readwrite("a_omega", &SafetyConstraint::a_omega)
        .def_readwrite("b", &SafetyConstraint::b)
        .def_readwrite("h_value", &SafetyConstraint::h_value);

    py::class_<QpProblem>(m, "QpProblem")
        .def(py::init<>())
        .def_readwrite("u_ref", &QpProblem::u_ref)
        .def_readwrite("w_v", &QpProblem::w_v)
        .def_readwrite("w_omega", &QpProblem::w_omega)
        .def_readwrite("rows", &QpProblem::rows)
        .def_readwrite("box", &QpProblem::box);

    py::class_<QpResult>(m, "QpResult")
        .def_readonly("feasible", &QpResult::feasible)
        .def_readonly("u", &QpResult::u)
        .def_readonly("objective", &QpResult::objective);

    py::class_<ScenarioSpec>(m, "ScenarioSpec")
        .def_readwrite("start", &ScenarioSpec::start)
        .def_readwrite("goal", &ScenarioSpec::goal)
        .def_property_readonly("agent_count",
                               [](const ScenarioSpec& s) { return s.agents.size(); });

    py::class_<SimOutcome>(m, "SimOutcome")
        .def_readonly("success", &SimOutcome::success)
        .def_readonly("collision", &SimOutcome::collision)
        .def_readonly("time_to_goal", &SimOutcome::time_to_goal)
        .def_readonly("min_clearance", &SimOutcome::min_clearance)
        .def_readonly("min_h", &SimOutcome::min_h)
        .def_readonly("steps", &SimOutcome::steps);

    py::class_<PredictedDisc>(m, "PredictedDisc")
        .def_readonly("center", &PredictedDisc::center)
        .def_readonly("radius", &PredictedDisc::radius)
        .def_readonly("timestamp", &PredictedDisc::timestamp)
        .def_readonly("agent_id", &PredictedDisc::agent_id)
        .def_readonly("vacuous", &PredictedDisc::vacuous);

    m.def("solve_qp", &solve_qp, py::arg("problem"),
          "Exact solution of a 2-variable box-and-rows QP");

    m.def("parse_scenario", &parse_or_throw, py::arg("text"),
          "Parse scenario text; raises ValueError with diagnostics on failure");

    m.def("print_scenario", &print_scenario, py::arg("spec"));

    m.def(
        "run_scenario",
        [](const ScenarioSpec& spec, std::uint64_t seed, double max_time, bool want_trace) {
            PlannerParams params;
            params.seed = seed;
            Trace trace;
            const SimOutcome out = run_scenario(spec, params, max_time, want_trace ? &trace : nullptr);
            std::string trace_text;
            if (want_trace) {
                std::ostringstream sink;
                emit_trace(trace, sink);
                trace_text = sink.str();
            }
            return py::make_tuple(out, trace_text);
        },
        py::arg("spec"), py::arg("seed") = 0, py::arg("max_time") = 120.0,
        py::arg("want_trace") = false,
        "Run the full planning loop; returns (SimOutcome, trace_text)");

    m.def(
        "predict_discs",
        [](const std::vector<std::pair<double, std::pair<double, double>>>& track,
           const std::vector<std::pair<double, double>>& goals, int horizon, double p_o,
           std::uint64_t seed) {
            TrackletStore store;
            for (const auto& [t, p] : track) store.ingest_observation(0, t, {p.first, p.second});
            PredictorConfig cfg = PredictorConfig::defaults();
            cfg.horizon = horizon;
            for (const auto& [x, y] : goals) cfg.goals.push_back({x, y});
            Rng rng(seed);
            auto maps = predict(store, cfg, rng);
            std::vector<PredictedDisc> discs;
            for (const auto& m : maps.at(0)) discs.push_back(extract_disc(m, p_o));
            return discs;
        },
        py::arg("track"), py::arg("goals"), py::arg("horizon") = 10, py::arg("p_o") = 0.2,
        py::arg("seed") = 0,
        "Predict one agent from (time, (x, y)) samples; returns level-set discs per step");
}
