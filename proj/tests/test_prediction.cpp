#include <doctest.h>

#include <cmath>

#include "cbftbrrt/prediction.hpp"

using namespace cbftbrrt;

namespace {

OccupancyMap blank_map(int nx, int ny, double cell = 0.1) {
    OccupancyMap m;
    m.origin = {0, 0};
    m.cell_size = cell;
    m.nx = nx;
    m.ny = ny;
    m.cells.assign(static_cast<size_t>(nx) * ny, 0.0);
    return m;
}

}  // namespace

TEST_CASE("tracklet store ingest") {
    TrackletStore store;
    store.ingest_observation(3, 0.0, {1, 2});
    REQUIRE(store.find(3) != nullptr);
    CHECK(store.find(3)->samples.size() == 1);

    CHECK_THROWS(store.ingest_observation(3, 0.0, {1, 2}));  // same timestamp

    store.ingest_observation(5, 0.0, {0, 0});
    store.ingest_observation(3, 0.1, {1.1, 2});
    store.ingest_observation(5, 0.1, {0.1, 0});
    CHECK(store.find(3)->samples.size() == 2);
    CHECK(store.find(5)->samples.size() == 2);
}

TEST_CASE("constant-velocity agent: argmax tracks the extrapolation") {
    TrackletStore store;
    for (int i = 0; i <= 5; ++i) store.ingest_observation(1, 0.1 * i, {0.1 * i, 0.0});

    PredictorConfig cfg = PredictorConfig::defaults();
    cfg.horizon = 5;
    cfg.samples = 10000;
    cfg.goals = {{10.0, 0.0}};  // straight-ahead goal
    Rng rng(0);
    const auto maps = predict(store, cfg, rng);
    REQUIRE(maps.count(1));
    const auto& agent_maps = maps.at(1);
    REQUIRE(agent_maps.size() == 6);

    const Vec2 p0{0.5, 0.0};
    for (int i = 1; i <= 5; ++i) {
        const PredictedDisc d = extract_disc(agent_maps[static_cast<size_t>(i)], 0.2);
        REQUIRE_FALSE(d.vacuous);
        const Vec2 expect{p0.x + 0.1 * i, 0.0};  // 1 m/s along +x
        CHECK(std::abs(d.center.x - expect.x) <= cfg.grid.cell_size + 1e-9);
        CHECK(std::abs(d.center.y - expect.y) <= cfg.grid.cell_size + 1e-9);
    }
}

TEST_CASE("stationary agent: occupancy stays at the current cell") {
    TrackletStore store;
    for (int i = 0; i <= 4; ++i) store.ingest_observation(2, 0.1 * i, {1.0, -2.0});

    PredictorConfig cfg = PredictorConfig::defaults();
    cfg.horizon = 8;
    cfg.samples = 2000;
    cfg.goals = {{5.0, 5.0}};
    Rng rng(1);
    const auto maps = predict(store, cfg, rng);
    const PredictedDisc d0 = extract_disc(maps.at(2)[0], 0.2);
    for (const auto& m : maps.at(2)) {
        const PredictedDisc d = extract_disc(m, 0.2);
        REQUIRE_FALSE(d.vacuous);
        CHECK(d.center.x == doctest::Approx(d0.center.x));
        CHECK(d.center.y == doctest::Approx(d0.center.y));
        CHECK(d.radius == doctest::Approx(0.0));
    }
}

TEST_CASE("single observation falls back to the zero-velocity prior") {
    TrackletStore store;
    store.ingest_observation(7, 0.0, {3.0, 1.0});
    PredictorConfig cfg = PredictorConfig::defaults();
    cfg.horizon = 4;
    cfg.samples = 500;
    Rng rng(2);
    const auto maps = predict(store, cfg, rng);
    for (const auto& m : maps.at(7)) {
        const PredictedDisc d = extract_disc(m, 0.2);
        REQUIRE_FALSE(d.vacuous);
        CHECK(std::abs(d.center.x - 3.0) <= cfg.grid.cell_size);
        CHECK(std::abs(d.center.y - 1.0) <= cfg.grid.cell_size);
    }
}

TEST_CASE("empty store yields empty output") {
    TrackletStore store;
    Rng rng(0);
    CHECK(predict(store, PredictorConfig::defaults(), rng).empty());
}

TEST_CASE("extract_disc examples") {
    // single cell of probability 1
    OccupancyMap m = blank_map(5, 5);
    m.cells[2 * 5 + 3] = 1.0;
    PredictedDisc d = extract_disc(m, 0.2);
    CHECK_FALSE(d.vacuous);
    CHECK(d.center.x == doctest::Approx(0.35));
    CHECK(d.center.y == doctest::Approx(0.25));
    CHECK(d.radius == doctest::Approx(0.0));

    // all-zero map is vacuous
    PredictedDisc v = extract_disc(blank_map(3, 3), 0.2);
    CHECK(v.vacuous);
    CHECK(v.radius == doctest::Approx(0.0));

    // everything below p_o except the argmax: radius 0
    OccupancyMap m2 = blank_map(4, 4);
    for (auto& c : m2.cells) c = 0.05;
    m2.cells[5] = 0.5;
    PredictedDisc d2 = extract_disc(m2, 0.2);
    CHECK(d2.radius == doctest::Approx(0.0));
}

TEST_CASE("uniform block: first tied cell wins, radius from brute force") {
    OccupancyMap m = blank_map(6, 6);
    for (int iy = 1; iy <= 3; ++iy)
        for (int ix = 2; ix <= 4; ++ix) m.cells[static_cast<size_t>(iy) * 6 + ix] = 0.25;
    const PredictedDisc d = extract_disc(m, 0.2);

    // row-major argmax is (ix=2, iy=1)
    CHECK(d.center.x == doctest::Approx(m.cell_center(2, 1).x));
    CHECK(d.center.y == doctest::Approx(m.cell_center(2, 1).y));

    // brute-force radius over all qualifying cells
    double expect = 0.0;
    for (int iy = 0; iy < 6; ++iy)
        for (int ix = 0; ix < 6; ++ix)
            if (m.at(ix, iy) >= 0.2)
                expect = std::max(expect, (m.cell_center(ix, iy) - d.center).norm());
    CHECK(d.radius == doctest::Approx(expect));
}

TEST_CASE("threshold coverage and monotonicity in p_o") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        OccupancyMap m = blank_map(12, 12);
        for (auto& c : m.cells) c = rng.uniform() < 0.3 ? rng.uniform() : 0.0;

        double prev_radius = -1.0;
        for (double p_o : {0.4, 0.2, 0.1}) {  // decreasing threshold
            const PredictedDisc d = extract_disc(m, p_o);
            if (d.vacuous) continue;
            for (int iy = 0; iy < m.ny; ++iy)
                for (int ix = 0; ix < m.nx; ++ix)
                    if (m.at(ix, iy) >= p_o)
                        CHECK((m.cell_center(ix, iy) - d.center).norm() <= d.radius + 1e-12);
            CHECK(d.radius >= prev_radius);  // lowering p_o never shrinks
            prev_radius = d.radius;
        }
    }
}

TEST_CASE("per-step mass stays within [0, 1]") {
    TrackletStore store;
    for (int i = 0; i <= 3; ++i) store.ingest_observation(1, 0.1 * i, {0.12 * i, 0.05 * i});
    PredictorConfig cfg = PredictorConfig::defaults();
    cfg.horizon = 6;
    cfg.samples = 800;
    cfg.goals = {{4.0, 2.0}, {-4.0, 1.0}};
    Rng rng(3);
    for (const auto& m : predict(store, cfg, rng).at(1)) {
        double total = 0.0;
        for (double c : m.cells) {
            CHECK(c >= 0.0);
            CHECK(c <= 1.0 + 1e-9);
            total += c;
        }
        CHECK(total <= 1.0 + 1e-6);
    }
}

TEST_CASE("identical store, config and seed reproduce identical maps") {
    TrackletStore store;
    for (int i = 0; i <= 4; ++i) store.ingest_observation(9, 0.1 * i, {0.1 * i, 0.02 * i});
    PredictorConfig cfg = PredictorConfig::defaults();
    cfg.horizon = 5;
    cfg.samples = 400;
    cfg.goals = {{3.0, 0.5}};

    Rng rng_a(77), rng_b(77);
    const auto a = predict(store, cfg, rng_a);
    const auto b = predict(store, cfg, rng_b);
    REQUIRE(a.at(9).size() == b.at(9).size());
    for (size_t i = 0; i < a.at(9).size(); ++i) CHECK(a.at(9)[i].cells == b.at(9)[i].cells);
}
