#include "cbftbrrt/trace.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace cbftbrrt {

namespace {

void put(std::ostringstream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    os << buf;
}

}  // namespace

std::size_t emit_trace(const Trace& trace, std::ostream& sink) {
    std::ostringstream os;
    os << "# cbftbrrt-trace v1\n";
    os << "# t x y theta v omega cost min_h tree"
          " [| agent id x y has_disc dcx dcy dr dt]*\n";
    for (const auto& r : trace) {
        put(os, r.sim_time);
        os << ' ';
        put(os, r.robot.x);
        os << ' ';
        put(os, r.robot.y);
        os << ' ';
        put(os, r.robot.theta);
        os << ' ';
        put(os, r.control.v);
        os << ' ';
        put(os, r.control.omega);
        os << ' ';
        put(os, r.selected_cost);
        os << ' ';
        put(os, r.min_h);
        os << ' ' << r.tree_size;
        for (const auto& a : r.agents) {
            os << " | " << a.agent_id << ' ';
            put(os, a.position.x);
            os << ' ';
            put(os, a.position.y);
            os << ' ' << (a.has_disc ? 1 : 0) << ' ';
            put(os, a.disc_center.x);
            os << ' ';
            put(os, a.disc_center.y);
            os << ' ';
            put(os, a.disc_radius);
            os << ' ';
            put(os, a.disc_timestamp);
        }
        os << '\n';
    }
    const std::string s = os.str();
    sink << s;
    if (!sink) throw std::ios_base::failure("emit_trace: sink write failed");
    return s.size();
}

std::size_t emit_plot_data(const Trace& trace, std::ostream& sink) {
    std::ostringstream os;
    os << "# t v omega min_h\n";
    for (const auto& r : trace) {
        put(os, r.sim_time);
        os << ' ';
        put(os, r.control.v);
        os << ' ';
        put(os, r.control.omega);
        os << ' ';
        put(os, r.min_h);
        os << '\n';
    }
    const std::string s = os.str();
    sink << s;
    if (!sink) throw std::ios_base::failure("emit_plot_data: sink write failed");
    return s.size();
}

void emit_occupancy_map(const OccupancyMap& map, std::ostream& sink) {
    std::ostringstream os;
    os << "# occupancy agent=" << map.agent_id << " t=";
    put(os, map.timestamp);
    os << " origin=";
    put(os, map.origin.x);
    os << ',';
    put(os, map.origin.y);
    os << " cell=";
    put(os, map.cell_size);
    os << " nx=" << map.nx << " ny=" << map.ny << '\n';
    for (int iy = 0; iy < map.ny; ++iy) {
        for (int ix = 0; ix < map.nx; ++ix) {
            if (ix) os << ' ';
            put(os, map.at(ix, iy));
        }
        os << '\n';
    }
    sink << os.str();
}

}  // namespace cbftbrrt
