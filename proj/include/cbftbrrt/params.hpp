#pragma once

#include <cstdint>

namespace cbftbrrt {

/// Planner and controller parameters. Defaults follow the evaluated
/// configuration: T_s = 0.1 s cycles, 7-step segments, beta = 100,
/// ell = 0.1, robot radius 0.25.
struct PlannerParams {
    double ts = 0.1;    // cycle / integration step, seconds
    int ns = 7;         // steps per tree edge
    int no = 10;        // prediction horizon, steps

    double a1 = 1.0;    // vertex cost numerator weight
    double a2 = 1.5;    // vertex cost denominator weight
    double sigma_theta = 1.0;
    double a_omega = 0.2;

    double v_min_sample = 0.2;  // lower bound for sampled v_ref
    double v_max = 0.33;
    double omega_max = 0.3;

    double p_o = 0.2;       // occupancy level-set threshold
    double cutoff = 5.0;    // constraint eligibility radius, meters
    double beta = 100.0;
    double ell = 0.1;
    double r_r = 0.25;      // robot radius
    double h_floor = 1e-3;  // lower clamp for the cost denominator

    double qp_weight = 1e5;   // diagonal objective weight, both channels

    int node_budget = 60;     // grow attempts per cycle (simulation mode)
    int commit_horizon = 1;   // controls executed per cycle: 1 or ns
    int tree_cap = 600;       // retained-tree size bound across cycles

    int k_samples = 200;      // predictor rollouts per agent
    double cell_size = 0.1;   // occupancy grid resolution
    double body_radius = 0.25;  // pedestrian body, ground truth + disc padding

    std::uint64_t seed = 0;
};

}  // namespace cbftbrrt
