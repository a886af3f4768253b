#include "cbftbrrt/qp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cbftbrrt {

namespace {

struct Row {
    double av, aw, b;
    double eval(double v, double w) const { return av * v + aw * w + b; }
};

constexpr double kFeasTol = 1e-9;

bool feasible_point(const std::vector<Row>& rows, double v, double w) {
    for (const auto& r : rows)
        if (r.eval(v, w) < -kFeasTol) return false;
    return true;
}

}  // namespace

QpResult solve_qp(const QpProblem& p) {
    if (p.w_v < 0.0 || p.w_omega < 0.0)
        throw std::invalid_argument("solve_qp: objective weights must be >= 0");
    if (p.box.v_lo > p.box.v_hi || p.box.omega_lo > p.box.omega_hi)
        throw std::invalid_argument("solve_qp: empty box");

    // Degenerate zero weights get a vanishing surrogate so the KKT systems
    // stay solvable; the minimizer then tie-breaks toward u_ref.
    const double scale = std::max({p.w_v, p.w_omega, 1.0});
    const double wv = std::max(p.w_v, 1e-9 * scale);
    const double ww = std::max(p.w_omega, 1e-9 * scale);

    std::vector<Row> rows;
    rows.reserve(p.rows.size() + 4);
    for (const auto& r : p.rows) rows.push_back({r.a_v, r.a_omega, r.b});
    rows.push_back({1.0, 0.0, -p.box.v_lo});
    rows.push_back({-1.0, 0.0, p.box.v_hi});
    rows.push_back({0.0, 1.0, -p.box.omega_lo});
    rows.push_back({0.0, -1.0, p.box.omega_hi});

    const double rv = p.u_ref.v;
    const double rw = p.u_ref.omega;
    QpResult best;
    double best_j = std::numeric_limits<double>::infinity();
    auto consider = [&](double v, double w) {
        if (!std::isfinite(v) || !std::isfinite(w)) return;
        if (!feasible_point(rows, v, w)) return;
        const double j = wv * (v - rv) * (v - rv) + ww * (w - rw) * (w - rw);
        if (j < best_j) {
            best_j = j;
            best.feasible = true;
            best.u = {v, w};
        }
    };

    // size-0 active set
    consider(rv, rw);

    // size-1: minimize subject to a . u = -b
    for (const auto& r : rows) {
        const double denom = r.av * r.av / wv + r.aw * r.aw / ww;
        if (denom < 1e-300) continue;
        const double lam = r.eval(rv, rw) / denom;
        consider(rv - lam * r.av / wv, rw - lam * r.aw / ww);
    }

    // size-2: intersection points
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const double det = rows[i].av * rows[j].aw - rows[i].aw * rows[j].av;
            if (std::abs(det) < 1e-12) continue;
            const double v = (-rows[i].b * rows[j].aw + rows[j].b * rows[i].aw) / det;
            const double w = (-rows[i].av * rows[j].b + rows[j].av * rows[i].b) / det;
            consider(v, w);
        }
    }

    if (best.feasible) {
        const double dv = best.u.v - rv;
        const double dw = best.u.omega - rw;
        best.objective = p.w_v * dv * dv + p.w_omega * dw * dw;
    }
    return best;
}

SteerResult steer(const RobotState& start, double start_time, const ControlInput& u_ref,
                  int n_steps, const ObstacleSet& obstacles, const PlannerParams& params) {
    if (n_steps < 1) throw std::invalid_argument("steer: n_steps must be >= 1");

    SteerResult out;
    out.end_state = start;
    out.end_time = start_time;

    RobotState state = start;
    std::vector<ControlInput> controls;
    std::vector<RobotState> states{start};

    for (int i = 0; i < n_steps; ++i) {
        const double t_i = start_time + i * params.ts;
        const TransformedState ts = to_transformed(state, params.ell);
        const auto rows =
            active_constraints(ts, obstacles, t_i, params.beta, params.r_r, params.cutoff);
        for (const auto& r : rows)
            if (r.h_value < 0.0) return out;  // segment enters (or starts in) unsafe set

        QpProblem qp;
        qp.u_ref = u_ref;
        qp.w_v = params.qp_weight;
        qp.w_omega = params.qp_weight;
        qp.rows = rows;
        qp.box = {0.0, params.v_max, -params.omega_max, params.omega_max};
        const QpResult sol = solve_qp(qp);
        if (!sol.feasible) return out;

        state = integrate_unicycle(state, sol.u, params.ts);
        controls.push_back(sol.u);
        states.push_back(state);
    }

    // reject segments whose final state lands unsafe
    {
        const TransformedState ts = to_transformed(state, params.ell);
        const double h = min_barrier(ts, obstacles, start_time + n_steps * params.ts, params.r_r,
                                     params.cutoff);
        if (h < 0.0) return out;
    }

    out.controls = std::move(controls);
    out.states = std::move(states);
    out.end_state = state;
    out.end_time = start_time + n_steps * params.ts;
    out.feasible = true;
    return out;
}

}  // namespace cbftbrrt
