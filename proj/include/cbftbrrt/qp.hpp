#pragma once

#include <vector>

#include "cbftbrrt/geometry.hpp"
#include "cbftbrrt/obstacles.hpp"
#include "cbftbrrt/params.hpp"

namespace cbftbrrt {

struct Box {
    double v_lo = 0.0;
    double v_hi = 0.0;
    double omega_lo = 0.0;
    double omega_hi = 0.0;
};

/// min (u - u_ref)^T diag(w_v, w_omega) (u - u_ref)
/// s.t. a_i . u + b_i >= 0 for every row, u inside box.
struct QpProblem {
    ControlInput u_ref;
    double w_v = 1e5;      // >= 0
    double w_omega = 1e5;  // >= 0
    std::vector<SafetyConstraint> rows;
    Box box;
};

struct QpResult {
    bool feasible = false;
    ControlInput u;
    double objective = 0.0;
};

/// Exact minimizer by active-set enumeration over rows plus box edges.
/// Subsets of size 0, 1, 2 are solved as KKT equality systems; the feasible
/// candidate with least objective wins. A zero objective weight is treated
/// as a vanishing weight, which ties break toward u_ref in that coordinate.
QpResult solve_qp(const QpProblem& p);

struct SteerResult {
    std::vector<ControlInput> controls;
    std::vector<RobotState> states;  // controls.size() + 1 entries when feasible
    RobotState end_state;
    double end_time = 0.0;
    bool feasible = false;
};

/// N_s-step steering loop: per step, assemble the active constraint rows at
/// the step-aligned plan time, solve the QP, take one Euler step. Segments
/// rooted at h < 0 are rejected; any infeasible step or a step landing at
/// h < 0 discards the whole segment.
SteerResult steer(const RobotState& start, double start_time, const ControlInput& u_ref,
                  int n_steps, const ObstacleSet& obstacles, const PlannerParams& params);

}  // namespace cbftbrrt
