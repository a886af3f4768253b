#pragma once

#include <map>
#include <vector>

#include "cbftbrrt/geometry.hpp"
#include "cbftbrrt/rng.hpp"

namespace cbftbrrt {

struct TrackSample {
    double time = 0.0;
    Vec2 position;
};

/// Time-ordered observations of one agent, spaced by the sampling period.
struct Tracklet {
    int agent_id = -1;
    std::vector<TrackSample> samples;
};

/// Observed-tracklet store; single writer (the simulation loop).
class TrackletStore {
  public:
    /// Appends a sample. Throws on out-of-order or duplicate timestamps.
    void ingest_observation(int agent_id, double time, const Vec2& position);

    const Tracklet* find(int agent_id) const;
    const std::map<int, Tracklet>& tracklets() const { return tracklets_; }
    bool empty() const { return tracklets_.empty(); }

  private:
    std::map<int, Tracklet> tracklets_;
};

/// Dense per-step probability grid for one agent. Cell (ix, iy) covers
/// [origin + ix*cell, origin + (ix+1)*cell) x [...]. Probabilities are the
/// fraction of sampled rollouts visiting the cell at that step.
struct OccupancyMap {
    Vec2 origin;
    double cell_size = 0.1;
    int nx = 0;
    int ny = 0;
    std::vector<double> cells;  // row-major: iy * nx + ix
    double timestamp = 0.0;
    int agent_id = -1;

    double at(int ix, int iy) const { return cells[static_cast<size_t>(iy) * nx + ix]; }
    Vec2 cell_center(int ix, int iy) const {
        return {origin.x + (ix + 0.5) * cell_size, origin.y + (iy + 0.5) * cell_size};
    }
    bool index_of(const Vec2& p, int& ix, int& iy) const;
};

struct PredictedDisc {
    Vec2 center;
    double radius = 0.0;
    double timestamp = 0.0;
    int agent_id = -1;
    double p_o = 0.0;
    bool vacuous = false;  // all-zero map; excluded from constraints
};

/// One discretized heading-change / speed-scale action of the rollout policy.
struct PredictorAction {
    double dtheta = 0.0;
    double speed_scale = 1.0;
};

struct GridSpec {
    double cell_size = 0.1;
    double half_extent = 2.5;  // local window around the agent, meters
};

struct PredictorConfig {
    int horizon = 10;   // N_o, steps ahead
    int samples = 200;  // K rollouts
    double step = 0.1;  // seconds per step
    std::vector<PredictorAction> action_set;
    std::vector<Vec2> goals;
    GridSpec grid;
    double goal_kappa = 2.0;   // heading-alignment concentration for goal choice
    double policy_temp = 0.25; // softmax temperature of the rollout policy

    static PredictorConfig defaults();
};

/// Goal-directed sampling predictor. For each agent, K rollouts each pick a
/// goal weighted by alignment with the observed velocity, then follow a
/// softmax policy over the action set scored by progress to that goal;
/// visited cells are accumulated per step. Returns maps for steps 0..N_o
/// (step 0 is the current position). Agents with a single observation get a
/// zero-velocity prior.
std::map<int, std::vector<OccupancyMap>> predict(const TrackletStore& store,
                                                 const PredictorConfig& config, Rng& rng);

/// Level-set disc: center at the argmax cell (row-major tie-break), radius
/// reaching every cell with probability >= p_o.
PredictedDisc extract_disc(const OccupancyMap& map, double p_o);

}  // namespace cbftbrrt
