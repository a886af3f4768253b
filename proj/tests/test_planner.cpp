#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cbftbrrt/planner.hpp"

using namespace cbftbrrt;

namespace {

ObstacleSet no_obstacles() { return {}; }

}  // namespace

TEST_CASE("vertex_sample is uniform over vertices") {
    PlanTree tree = PlanTree::rooted_at({0, 0, 0}, 0.0);
    Rng rng(1);
    CHECK(vertex_sample(tree, rng) == 0);  // single vertex

    for (int i = 0; i < 3; ++i) {
        tree.vertices.push_back({{double(i), 0, 0}, 1.0, 0.7, 0});
        tree.edges.emplace_back();
    }
    std::vector<int> counts(4, 0);
    const int draws = 40000;
    for (int i = 0; i < draws; ++i) ++counts[vertex_sample(tree, rng)];
    // chi-square against uniform, 3 dof, alpha = 0.01 -> 11.34
    double chi2 = 0.0;
    const double expect = draws / 4.0;
    for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
    CHECK(chi2 < 11.34);
}

TEST_CASE("state_sample centers on the goal bearing") {
    const GoalRegion goal{{0, 5}, 0.3};
    const TreeVertex v{{0, 0, 0}, 0.0, 0.0, -1};
    Rng rng(5);

    // sigma -> 0 limit
    RobotState tight = state_sample(v, goal, 1e-12, rng);
    CHECK(tight.theta == doctest::Approx(M_PI / 2));
    CHECK(tight.x == doctest::Approx(0.0));
    CHECK(tight.y == doctest::Approx(0.0));

    // circular mean over many draws
    double sx = 0.0, sy = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const RobotState s = state_sample(v, goal, 1.0, rng);
        CHECK(s.theta >= -M_PI);
        CHECK(s.theta < M_PI);
        sx += std::cos(s.theta);
        sy += std::sin(s.theta);
    }
    const double mean = std::atan2(sy / n, sx / n);
    CHECK(std::abs(angle_diff(mean, M_PI / 2)) < 0.05);
}

TEST_CASE("ref_sample geometry and distribution") {
    PlannerParams params;
    const GoalRegion goal{{0, 5}, 0.3};
    Rng rng(9);

    // theta == theta_g -> omega_ref = 0
    const ControlInput aligned = ref_sample({0, 0, M_PI / 2}, goal, params, rng);
    CHECK(aligned.omega == doctest::Approx(0.0));

    // wrapped error of pi clamps at -omega_max
    const ControlInput flipped = ref_sample({0, 0, -M_PI / 2}, goal, params, rng);
    CHECK(flipped.omega == doctest::Approx(-0.3));

    // v_ref uniform on [0.2, 0.33]: bounds + Kolmogorov-Smirnov at alpha 0.01
    const int n = 10000;
    std::vector<double> vs(n);
    for (int i = 0; i < n; ++i) vs[i] = ref_sample({0, 0, 1.0}, goal, params, rng).v;
    std::sort(vs.begin(), vs.end());
    CHECK(vs.front() >= 0.2);
    CHECK(vs.back() <= 0.33);
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = (vs[i] - 0.2) / 0.13;
        ks = std::max(ks, std::abs(cdf - (i + 1.0) / n));
        ks = std::max(ks, std::abs(cdf - i / static_cast<double>(n)));
    }
    CHECK(ks < 1.628 / std::sqrt(n));  // critical value at 0.01
}

TEST_CASE("vertex_cost examples") {
    PlannerParams params;
    ObstacleSet obs;

    // inside the goal: zero cost regardless of h
    GoalRegion goal{{0, 5}, 0.3};
    CHECK(vertex_cost({0, 5, 0.4}, 0.0, goal, obs, params) == doctest::Approx(0.0));

    // dist 3, min-h 2: z = 1*3 / (1.5*2) = 1
    // obstacle placed so the transformed point sits at h = 2 exactly
    DiscObstacle d;
    d.radius = 0.3;
    const double rho = std::sqrt(2.0 + 0.65 * 0.65);
    d.center = {0.1 + rho, 0.0};  // transformed point of (0,0,0) is (0.1, 0)
    obs.static_discs.push_back(d);
    GoalRegion goal2{{0, 3.5}, 0.5};
    CHECK(vertex_cost({0, 0, 0}, 0.0, goal2, obs, params) == doctest::Approx(1.0).epsilon(1e-9));

    // h <= 0 clamps to the floor: cost becomes very large
    ObstacleSet swallowed;
    DiscObstacle big;
    big.center = {0, 0};
    big.radius = 1.0;
    swallowed.static_discs.push_back(big);
    const double z = vertex_cost({0, 0, 0}, 0.0, goal2, swallowed, params);
    CHECK(z == doctest::Approx(1.0 * 3.0 / (1.5 * params.h_floor)));
}

TEST_CASE("grow_once in open space makes progress toward the goal") {
    PlannerParams params;
    params.seed = 4;
    Rng rng(params.seed);
    PlanTree tree = PlanTree::rooted_at({0, 0, 0}, 0.0);
    const GoalRegion goal{{5, 0}, 0.3};
    const ObstacleSet obs = no_obstacles();

    for (int i = 0; i < 50; ++i) grow_once(tree, obs, goal, params, rng);
    REQUIRE(tree.size() > 1);
    const double root_dist = (tree.vertices[0].state.position() - goal.center).norm();
    bool closer = false;
    for (size_t i = 1; i < tree.size(); ++i) {
        if ((tree.vertices[i].state.position() - goal.center).norm() < root_dist) closer = true;
        // timestamps are exact multiples of ns*ts from the root
        const double k = tree.vertices[i].timestamp / (params.ns * params.ts);
        CHECK(std::abs(k - std::round(k)) < 1e-9);
    }
    CHECK(closer);
}

TEST_CASE("grow_once adds nothing when the root is enclosed") {
    PlannerParams params;
    Rng rng(8);
    PlanTree tree = PlanTree::rooted_at({0, 0, 0}, 0.0);
    const GoalRegion goal{{5, 0}, 0.3};
    ObstacleSet obs;
    DiscObstacle ring;
    ring.center = {0, 0};
    ring.radius = 1.0;  // root is deep inside the inflated disc
    obs.static_discs.push_back(ring);

    for (int i = 0; i < 100; ++i) grow_once(tree, obs, goal, params, rng);
    CHECK(tree.size() == 1);
}

TEST_CASE("plan_cycle budget and selection rules") {
    PlannerParams params;
    const GoalRegion goal{{5, 0}, 0.3};
    const ObstacleSet obs = no_obstacles();

    // budget 0: tree unchanged, zero-control fallback
    {
        Rng rng(0);
        PlanTree tree = PlanTree::rooted_at({0, 0, 0}, 0.0);
        const CycleResult r = plan_cycle(tree, obs, goal, params, {0, 0.0}, rng);
        CHECK(tree.size() == 1);
        REQUIRE(r.commit.size() == 1);
        CHECK(r.commit[0].v == doctest::Approx(0.0));
        CHECK(r.commit[0].omega == doctest::Approx(0.0));
        CHECK(r.selected_vertex == 0);
    }

    // node budget respected
    {
        Rng rng(1);
        PlanTree tree = PlanTree::rooted_at({0, 0, 0}, 0.0);
        const CycleResult r = plan_cycle(tree, obs, goal, params, {25, 0.0}, rng);
        CHECK(r.inserted <= 25);
        CHECK(tree.size() == static_cast<size_t>(1 + r.inserted));
    }
}

TEST_CASE("plan_cycle returns the first control of the selected edge") {
    PlannerParams params;
    const GoalRegion goal{{5, 0}, 0.3};
    const ObstacleSet obs = no_obstacles();

    PlanTree tree = PlanTree::rooted_at({0, 0, 0}, 0.0);
    // hand-built child edge with known first control and lowest cost
    TreeEdge edge;
    RobotState s{0, 0, 0};
    edge.states.push_back(s);
    for (int i = 0; i < 7; ++i) {
        s = integrate_unicycle(s, {0.3, 0.1}, params.ts);
        edge.controls.push_back({0.3, 0.1});
        edge.states.push_back(s);
    }
    tree.vertices.push_back({s, 0.0, 0.7, 0});
    tree.edges.push_back(edge);

    Rng rng(2);
    const CycleResult r = plan_cycle(tree, obs, goal, params, {0, 0.0}, rng);
    CHECK(r.committed_child == 1);
    REQUIRE(r.commit.size() == 1);
    CHECK(r.commit[0].v == doctest::Approx(0.3));
    CHECK(r.commit[0].omega == doctest::Approx(0.1));
}

TEST_CASE("equal-cost vertices: earliest insertion wins") {
    PlannerParams params;
    const GoalRegion goal{{100, 0}, 0.3};  // far away; costs dominated by dist
    const ObstacleSet obs = no_obstacles();

    PlanTree tree = PlanTree::rooted_at({0, 0, 0}, 0.0);
    // two children at mirrored positions -> identical costs
    for (int k = 0; k < 2; ++k) {
        TreeEdge edge;
        RobotState s{0, 0, 0};
        edge.states.push_back(s);
        const double w = k == 0 ? 0.1 : -0.1;
        for (int i = 0; i < 7; ++i) {
            s = integrate_unicycle(s, {0.3, w}, params.ts);
            edge.controls.push_back({0.3, w});
            edge.states.push_back(s);
        }
        tree.vertices.push_back({s, 0.0, 0.7, 0});
        tree.edges.push_back(edge);
    }
    Rng rng(3);
    const CycleResult r = plan_cycle(tree, obs, goal, params, {0, 0.0}, rng);
    CHECK(r.selected_vertex == 1);  // first inserted of the equal pair
}

TEST_CASE("reroot keeps a matching branch and discards on mismatch") {
    PlannerParams params;
    PlanTree tree = PlanTree::rooted_at({0, 0, 0}, 0.0);

    TreeEdge edge;
    RobotState s{0, 0, 0};
    edge.states.push_back(s);
    for (int i = 0; i < 7; ++i) {
        s = integrate_unicycle(s, {0.3, 0.0}, params.ts);
        edge.controls.push_back({0.3, 0.0});
        edge.states.push_back(s);
    }
    tree.vertices.push_back({s, 1.0, 0.7, 0});
    tree.edges.push_back(edge);

    // grandchild hanging off the child
    TreeEdge edge2;
    RobotState s2 = s;
    edge2.states.push_back(s2);
    for (int i = 0; i < 7; ++i) {
        s2 = integrate_unicycle(s2, {0.2, 0.0}, params.ts);
        edge2.controls.push_back({0.2, 0.0});
        edge2.states.push_back(s2);
    }
    tree.vertices.push_back({s2, 1.0, 1.4, 1});
    tree.edges.push_back(edge2);

    SUBCASE("exact mid-edge replay keeps the branch") {
        const RobotState executed = edge.states[1];
        PlanTree out = reroot(tree, 1, 1, executed, 0.1);
        REQUIRE(out.size() == 3);  // root + child + grandchild
        CHECK(out.vertices[0].state.x == doctest::Approx(executed.x));
        CHECK(out.edges[1].controls.size() == 6);  // edge suffix
        CHECK(out.vertices[2].parent == 1);
    }

    SUBCASE("full-edge replay promotes the child to root") {
        PlanTree out = reroot(tree, 1, 7, edge.states[7], 0.7);
        REQUIRE(out.size() == 2);  // child-as-root + grandchild
        CHECK(out.vertices[1].parent == 0);
        CHECK(out.edges[1].controls.size() == 7);
    }

    SUBCASE("disturbance mismatch resets the tree") {
        RobotState off = edge.states[1];
        off.y += 0.01;
        PlanTree out = reroot(tree, 1, 1, off, 0.1);
        CHECK(out.size() == 1);
    }

    SUBCASE("childless commit resets at the executed state") {
        PlanTree out = reroot(tree, -1, 1, {1, 2, 0.5}, 0.1);
        REQUIRE(out.size() == 1);
        CHECK(out.vertices[0].state.y == doctest::Approx(2.0));
    }
}

TEST_CASE("grown vertices always satisfy their snapshot constraints") {
    PlannerParams params;
    params.no = 5;
    Rng rng(21);
    const GoalRegion goal{{4, 0}, 0.3};
    ObstacleSet obs;
    DiscObstacle d;
    d.center = {2.0, 0.3};
    d.radius = 0.3;
    obs.static_discs.push_back(d);

    PlanTree tree = PlanTree::rooted_at({0, 0, 0}, 0.0);
    for (int i = 0; i < 300; ++i) grow_once(tree, obs, goal, params, rng);
    for (size_t i = 1; i < tree.size(); ++i) {
        for (const auto& s : tree.edges[i].states) {
            const TransformedState ts = to_transformed(s, params.ell);
            CHECK(min_barrier(ts, obs, tree.vertices[i].timestamp, params.r_r, params.cutoff) >=
                  0.0);
        }
    }
}
