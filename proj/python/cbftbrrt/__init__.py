"""Python interface to the CBF-constrained time-budgeted RRT planner."""

from ._core import (
    Box,
    ControlInput,
    GoalRegion,
    PlannerParams,
    PredictedDisc,
    QpProblem,
    QpResult,
    RobotState,
    SafetyConstraint,
    ScenarioSpec,
    SimOutcome,
    Vec2,
    parse_scenario,
    predict_discs,
    print_scenario,
    run_scenario,
    solve_qp,
)

__all__ = [
    "Box",
    "ControlInput",
    "GoalRegion",
    "PlannerParams",
    "PredictedDisc",
    "QpProblem",
    "QpResult",
    "RobotState",
    "SafetyConstraint",
    "ScenarioSpec",
    "SimOutcome",
    "Vec2",
    "load_scenario",
    "parse_scenario",
    "predict_discs",
    "print_scenario",
    "run_scenario",
    "solve_qp",
]


def load_scenario(path):
    """Parse a scenario file from disk."""
    with open(path, "r", encoding="utf-8") as f:
        return parse_scenario(f.read())
