#include "cbftbrrt/geometry.hpp"

#include <stdexcept>

namespace cbftbrrt {

TransformedState to_transformed(const RobotState& s, double ell) {
    if (ell <= 0.0) throw std::invalid_argument("to_transformed: ell must be > 0");
    TransformedState t;
    t.x_t = s.x + ell * std::cos(s.theta);
    t.y_t = s.y + ell * std::sin(s.theta);
    t.theta = s.theta;
    t.ell = ell;
    return t;
}

std::array<std::array<double, 2>, 3> transformed_input_matrix(const TransformedState& s) {
    const double c = std::cos(s.theta);
    const double sn = std::sin(s.theta);
    return {{{c, -s.ell * sn}, {sn, s.ell * c}, {0.0, 1.0}}};
}

}  // namespace cbftbrrt
