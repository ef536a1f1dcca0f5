#pragma once

// Closed forms used as independent references by the unit and acceptance
// tests. None of these call into the library.

#include <cmath>
#include <numbers>

namespace qhgeo::oracle {

// k in R^2 \ {0} with the Euclidean norm: the log-polar map
// z -> (log|z|, arg z) is an isometry onto a flat cylinder.
inline double punctured_plane_k(double x0, double x1, double y0, double y1) {
    const double r1 = std::hypot(x0, x1);
    const double r2 = std::hypot(y0, y1);
    double theta = std::abs(std::atan2(x1, x0) - std::atan2(y1, y0));
    if (theta > std::numbers::pi) theta = 2.0 * std::numbers::pi - theta;
    const double radial = std::log(r1 / r2);
    return std::sqrt(theta * theta + radial * radial);
}

// k in the Euclidean half-plane {y < 0} is the hyperbolic distance.
inline double half_plane_k(double x0, double x1, double y0, double y1) {
    const double dx = x0 - y0, dy = x1 - y1;
    return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * x1 * y1));
}

}  // namespace qhgeo::oracle
