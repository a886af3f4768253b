#pragma once

#include <iosfwd>
#include <vector>

#include "cbftbrrt/geometry.hpp"
#include "cbftbrrt/prediction.hpp"

namespace cbftbrrt {

struct TraceAgentRecord {
    int agent_id = -1;
    Vec2 position;
    Vec2 disc_center;
    double disc_radius = 0.0;
    double disc_timestamp = 0.0;
    bool has_disc = false;
};

/// One record per executed step.
struct TraceRecord {
    double sim_time = 0.0;
    RobotState robot;
    ControlInput control;
    double selected_cost = 0.0;
    double min_h = 0.0;
    int tree_size = 0;
    std::vector<TraceAgentRecord> agents;
};

using Trace = std::vector<TraceRecord>;

/// Newline-delimited records, fixed field order, %.9g formatting, so traces
/// from identical runs are byte-identical. Returns bytes written.
std::size_t emit_trace(const Trace& trace, std::ostream& sink);

/// Flat (time, v, omega, min_h) columns for plotting.
std::size_t emit_plot_data(const Trace& trace, std::ostream& sink);

/// Dense text dump of one occupancy map (for offline visualization).
void emit_occupancy_map(const OccupancyMap& map, std::ostream& sink);

}  // namespace cbftbrrt
