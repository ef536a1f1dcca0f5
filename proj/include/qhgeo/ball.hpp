#pragma once

#include "qhgeo/domain.hpp"
#include "qhgeo/geodesic.hpp"
#include "qhgeo/norm.hpp"
#include "qhgeo/paths.hpp"

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qhgeo {

// Distance to a fixed center as a bracket. For j both ends are the exact
// value; for k the lower end is j and the upper end comes from a
// KDistanceField built around the center.
class CenterDistance {
public:
    CenterDistance(const Domain& domain, const NormSpec& spec, MetricKind metric, const Point& center,
                   double radius);

    double lower(const Point& p) const;
    double upper(const Point& p) const;
    MetricKind metric() const noexcept { return metric_; }
    const Point& center() const noexcept { return center_; }
    double center_clearance() const noexcept { return d0_; }

private:
    Domain domain_;
    NormSpec spec_;
    MetricKind metric_;
    Point center_;
    double d0_;
    std::shared_ptr<const KDistanceField> field_;
};

struct RayCrossing {
    double t_star = 0.0;
    bool clipped = false;  // the ray left the domain first; t_star is the exit
};

struct TracedRay {
    double angle = 0.0;
    Point direction;  // Euclidean unit vector
    double t_star = 0.0;
    Point boundary;
    bool clipped = false;
};

struct BallTrace {
    Point center;
    double radius = 0.0;
    MetricKind metric = MetricKind::DistanceRatio;
    std::vector<TracedRay> rays;
};

struct Violation {
    Point y;
    Point z;  // equals the center for starlikeness checks
    double s = 0.0;
    Point point;  // s y + (1 - s) z
    double distance = 0.0;  // certified lower bound at `point`
    double excess = 0.0;    // distance - radius - tol
};

struct CheckReport {
    std::string suite;
    std::size_t configurations = 0;
    std::size_t points_checked = 0;
    std::size_t violation_count = 0;
    std::vector<Violation> violations;  // the first kMaxRecordedViolations
    double max_excess = -std::numeric_limits<double>::infinity();
    // k only: largest upper-bound excess over the radius; not a verdict
    double max_upper_excess = std::numeric_limits<double>::quiet_NaN();
    // convexity only: smallest radius - distance at chord midpoints
    double min_midpoint_margin = std::numeric_limits<double>::quiet_NaN();
    bool passed = true;

    static constexpr std::size_t kMaxRecordedViolations = 256;

    void record(const Violation& v);
    // Folds another report into this one (configurations add up).
    void merge(const CheckReport& other);
};

inline constexpr double kJCrossingTol = 1e-9;
inline constexpr double kKCrossingTol = 1e-4;

// First t > 0 where dist(center, center + t u) exceeds r, u = direction
// normalized in the Euclidean norm. Marches from r d(center) / 8 with
// steps growing by 1.5 and bisects until r - dist <= tol on the inner side;
// the returned parameter is always inside the ball.
RayCrossing first_crossing_along_ray(const CenterDistance& dist, const Domain& domain, const Point& direction,
                                     double r, double tol);
RayCrossing first_crossing_along_ray(const Domain& domain, const NormSpec& spec, MetricKind metric,
                                     const Point& center, const Point& direction, double r, double tol);

// n_rays directions at uniform angles (2-D), rays traced in parallel.
BallTrace trace_ball(const CenterDistance& dist, const Domain& domain, double r, std::size_t n_rays, double tol);
BallTrace trace_ball(const Domain& domain, const NormSpec& spec, MetricKind metric, const Point& center,
                     double r, std::size_t n_rays, double tol);

// Chord points s y + (1 - s) center, s = i / (n_chord + 1), for every traced
// boundary point y; a violation needs the certified lower bound above r + tol.
CheckReport starlike_check(const Domain& domain, const NormSpec& spec, MetricKind metric, const Point& center,
                           double r, std::size_t n_rays, std::size_t n_chord, double tol);

// Same on chords between every pair of traced boundary points.
CheckReport convexity_check(const Domain& domain, const NormSpec& spec, MetricKind metric, const Point& center,
                            double r, std::size_t n_rays, std::size_t n_chord, double tol);

// Lower-level forms that reuse an existing trace.
CheckReport starlike_check(const CenterDistance& dist, const Domain& domain, const BallTrace& trace,
                           std::size_t n_chord, double tol);
CheckReport convexity_check(const CenterDistance& dist, const Domain& domain, const BallTrace& trace,
                            std::size_t n_chord, double tol);

struct NonconvexWitness {
    double radius = 0.0;
    bool found = false;
    Point center;
    Point y;
    Point z;
    double s = 0.0;
    Point point;
    double distance = 0.0;
    double excess = 0.0;  // distance - radius
    std::size_t centers_tried = 0;
};

struct WitnessSearch {
    std::size_t max_centers = 32;
    std::size_t n_rays = 720;
    std::size_t n_chord = 8;
    std::uint64_t seed = 0;
};

// j-balls of R^2 \ {0} under `spec`: for each radius, searches centers near
// the diagonal and chords between traced boundary points for a point with
// j > r + 1e-9. One entry per radius, in input order.
std::vector<NonconvexWitness> find_nonconvex_witness(const NormSpec& spec, const std::vector<double>& radii,
                                                     const WitnessSearch& search = {});

}  // namespace qhgeo
