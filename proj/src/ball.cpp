#include "qhgeo/ball.hpp"

#include "qhgeo/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qhgeo {

namespace {

// Half width of an axis box holding the norm ball of radius `rad`.
double box_half_width(const NormSpec& spec, double rad) {
    double inv = 1.0;
    if (spec.kind() == NormKind::WeightedPNorm) {
        for (double w : spec.weights()) inv = std::max(inv, 1.0 / w);
    }
    return rad * inv;
}

constexpr int kFieldCells = 40;  // lattice cells per field half width
constexpr double kWitnessMargin = 1e-9;

}  // namespace

CenterDistance::CenterDistance(const Domain& domain, const NormSpec& spec, MetricKind metric,
                               const Point& center, double radius)
    : domain_(domain), spec_(spec), metric_(metric), center_(center),
      d0_(boundary_distance(domain, spec, center)) {
    if (!(radius >= 0.0)) throw std::invalid_argument("radius must be non-negative");
    if (metric == MetricKind::QuasiHyperbolic) {
        // j <= k keeps the whole k-ball inside the norm ball of radius
        // d(center) (e^r - 1)
        const double half = 1.1 * box_half_width(spec, d0_ * std::expm1(radius)) + 1e-9;
        SolverParams params;
        params.grid_spacing = half / kFieldCells;
        field_ = std::make_shared<const KDistanceField>(domain, spec, center, half + 2.0 * params.grid_spacing,
                                                        params);
    }
}

double CenterDistance::lower(const Point& p) const {
    if (!contains(domain_, p)) return kInf;
    return j_distance(domain_, spec_, center_, p);
}

double CenterDistance::upper(const Point& p) const {
    if (metric_ == MetricKind::DistanceRatio) return lower(p);
    return field_->upper(p);
}

void CheckReport::record(const Violation& v) {
    ++violation_count;
    passed = false;
    if (violations.size() < kMaxRecordedViolations) violations.push_back(v);
}

void CheckReport::merge(const CheckReport& other) {
    configurations += other.configurations;
    points_checked += other.points_checked;
    violation_count += other.violation_count;
    for (const Violation& v : other.violations) {
        if (violations.size() < kMaxRecordedViolations) violations.push_back(v);
    }
    max_excess = std::max(max_excess, other.max_excess);
    if (!std::isnan(other.max_upper_excess))
        max_upper_excess = std::isnan(max_upper_excess) ? other.max_upper_excess
                                                        : std::max(max_upper_excess, other.max_upper_excess);
    if (!std::isnan(other.min_midpoint_margin))
        min_midpoint_margin = std::isnan(min_midpoint_margin)
                                  ? other.min_midpoint_margin
                                  : std::min(min_midpoint_margin, other.min_midpoint_margin);
    passed = passed && other.passed;
}

RayCrossing first_crossing_along_ray(const CenterDistance& dist, const Domain& domain, const Point& direction,
                                     double r, double tol) {
    if (!(r >= 0.0)) throw std::invalid_argument("radius must be non-negative");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const double len = std::sqrt(dot(direction, direction));
    if (!(len > 0.0)) throw std::invalid_argument("direction must be nonzero");
    if (r == 0.0) return {0.0, false};
    const Point u = (1.0 / len) * direction;
    const Point& c = dist.center();
    auto at = [&](double t) { return c + t * u; };

    // march until the certified-inside test fails or the ray leaves
    double lo = 0.0;
    double step = r * dist.center_clearance() / 8.0;
    double hi = step;
    bool clipped = false;
    for (int it = 0;; ++it) {
        if (it > 400) throw std::runtime_error("ray march did not leave the ball");
        const Point p = at(hi);
        if (!contains(domain, p)) {
            clipped = true;
            break;
        }
        if (dist.upper(p) > r) break;
        lo = hi;
        step *= 1.5;
        hi = lo + step;
    }
    if (clipped) {
        // locate the exit, then see whether the ball ends before it
        double in = lo;
        double out = hi;
        for (int it = 0; it < 200 && out - in > 1e-15 * out; ++it) {
            const double mid = 0.5 * (in + out);
            (contains(domain, at(mid)) ? in : out) = mid;
        }
        if (in == lo || dist.upper(at(in)) <= r) return {in, true};
        hi = in;
    }
    double lo_value = lo == 0.0 ? 0.0 : dist.upper(at(lo));
    for (int it = 0; it < 200 && r - lo_value > tol && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = dist.upper(at(mid));
        if (v <= r) {
            lo = mid;
            lo_value = v;
        } else {
            hi = mid;
        }
    }
    return {lo, false};
}

RayCrossing first_crossing_along_ray(const Domain& domain, const NormSpec& spec, MetricKind metric,
                                     const Point& center, const Point& direction, double r, double tol) {
    const CenterDistance dist(domain, spec, metric, center, r);
    return first_crossing_along_ray(dist, domain, direction, r, tol);
}

BallTrace trace_ball(const CenterDistance& dist, const Domain& domain, double r, std::size_t n_rays, double tol) {
    if (domain.dim() != 2) throw std::invalid_argument("ball tracing is planar");
    if (n_rays == 0) throw std::invalid_argument("n_rays must be positive");
    BallTrace trace{dist.center(), r, dist.metric(), std::vector<TracedRay>(n_rays)};
    const auto count = static_cast<long>(n_rays);
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_cap()) if (count > 8)
    for (long i = 0; i < count; ++i) {
        TracedRay& ray = trace.rays[static_cast<std::size_t>(i)];
        ray.angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_rays);
        ray.direction = Point{std::cos(ray.angle), std::sin(ray.angle)};
        const RayCrossing x = first_crossing_along_ray(dist, domain, ray.direction, r, tol);
        ray.t_star = x.t_star;
        ray.clipped = x.clipped;
        ray.boundary = dist.center() + x.t_star * ray.direction;
    }
    return trace;
}

BallTrace trace_ball(const Domain& domain, const NormSpec& spec, MetricKind metric, const Point& center,
                     double r, std::size_t n_rays, double tol) {
    const CenterDistance dist(domain, spec, metric, center, r);
    return trace_ball(dist, domain, r, n_rays, tol);
}

namespace {


double chord_s(std::size_t k, std::size_t n_chord) {
    return static_cast<double>(k + 1) / static_cast<double>(n_chord + 1);
}

void check_point(const CenterDistance& dist, double r, double tol, const Point& y, const Point& z, double s,
                 CheckReport& rep) {
    const Point p = lerp(z, y, s);
    const double v = dist.lower(p);
    const double excess = v - r - tol;
    ++rep.points_checked;
    rep.max_excess = std::max(rep.max_excess, excess);
    if (excess > 0.0) rep.record({y, z, s, p, v, excess});
}

void note_upper(CheckReport& rep, double excess) {
    rep.max_upper_excess = std::isnan(rep.max_upper_excess) ? excess : std::max(rep.max_upper_excess, excess);
}

}  // namespace

CheckReport starlike_check(const CenterDistance& dist, const Domain& domain, const BallTrace& trace,
                           std::size_t n_chord, double tol) {
    (void)domain;
    CheckReport rep;
    rep.suite = "starlike";
    rep.configurations = 1;
    const double r = trace.radius;
    const bool k = dist.metric() == MetricKind::QuasiHyperbolic;
    std::vector<CheckReport> parts(trace.rays.size());
    const auto count = static_cast<long>(trace.rays.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_cap()) if (count > 8)
    for (long i = 0; i < count; ++i) {
        CheckReport& part = parts[static_cast<std::size_t>(i)];
        const Point& y = trace.rays[static_cast<std::size_t>(i)].boundary;
        for (std::size_t c = 0; c < n_chord; ++c) {
            const double s = chord_s(c, n_chord);
            check_point(dist, r, tol, y, dist.center(), s, part);
            if (k) note_upper(part, dist.upper(lerp(dist.center(), y, s)) - r);
        }
    }
    for (const CheckReport& part : parts) {
        CheckReport p = part;
        p.configurations = 0;
        rep.merge(p);
    }
    return rep;
}

CheckReport convexity_check(const CenterDistance& dist, const Domain& domain, const BallTrace& trace,
                            std::size_t n_chord, double tol) {
    (void)domain;
    CheckReport rep;
    rep.suite = "convexity";
    rep.configurations = 1;
    const double r = trace.radius;
    const bool k = dist.metric() == MetricKind::QuasiHyperbolic;
    const std::size_t n = trace.rays.size();
    std::vector<CheckReport> parts(n);
    const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 2) num_threads(thread_cap()) if (count > 8)
    for (long i = 0; i < count; ++i) {
        const auto a = static_cast<std::size_t>(i);
        CheckReport& part = parts[a];
        const Point& y = trace.rays[a].boundary;
        for (std::size_t b = a + 1; b < n; ++b) {
            const Point& z = trace.rays[b].boundary;
            for (std::size_t c = 0; c < n_chord; ++c) check_point(dist, r, tol, y, z, chord_s(c, n_chord), part);
            const Point mid = lerp(y, z, 0.5);
            const double margin = r - (k ? dist.upper(mid) : dist.lower(mid));
            part.min_midpoint_margin =
                std::isnan(part.min_midpoint_margin) ? margin : std::min(part.min_midpoint_margin, margin);
            if (k) note_upper(part, -margin);
        }
    }
    for (const CheckReport& part : parts) {
        CheckReport p = part;
        p.configurations = 0;
        rep.merge(p);
    }
    return rep;
}

CheckReport starlike_check(const Domain& domain, const NormSpec& spec, MetricKind metric, const Point& center,
                           double r, std::size_t n_rays, std::size_t n_chord, double tol) {
    const CenterDistance dist(domain, spec, metric, center, r);
    const double crossing_tol = metric == MetricKind::DistanceRatio ? kJCrossingTol : kKCrossingTol;
    return starlike_check(dist, domain, trace_ball(dist, domain, r, n_rays, crossing_tol), n_chord, tol);
}

CheckReport convexity_check(const Domain& domain, const NormSpec& spec, MetricKind metric, const Point& center,
                            double r, std::size_t n_rays, std::size_t n_chord, double tol) {
    const CenterDistance dist(domain, spec, metric, center, r);
    const double crossing_tol = metric == MetricKind::DistanceRatio ? kJCrossingTol : kKCrossingTol;
    return convexity_check(dist, domain, trace_ball(dist, domain, r, n_rays, crossing_tol), n_chord, tol);
}

namespace {

struct ChordBest {
    double excess = -kInf;
    std::size_t a = 0, b = 0;
    double s = 0.0;
};

// Largest j - r over all chords of the trace.
ChordBest worst_chord(const CenterDistance& dist, const BallTrace& trace, std::size_t n_chord) {
    const std::size_t n = trace.rays.size();
    std::vector<ChordBest> best(n);
    const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_cap()) if (count > 8)
    for (long i = 0; i < count; ++i) {
        const auto a = static_cast<std::size_t>(i);
        ChordBest& mine = best[a];
        for (std::size_t b = a + 1; b < n; ++b) {
            for (std::size_t c = 0; c < n_chord; ++c) {
                const double s = chord_s(c, n_chord);
                const double e = dist.lower(lerp(trace.rays[b].boundary, trace.rays[a].boundary, s)) - trace.radius;
                if (e > mine.excess) mine = {e, a, b, s};
            }
        }
    }
    ChordBest out;
    for (const ChordBest& c : best) {
        if (c.excess > out.excess) out = c;
    }
    return out;
}

}  // namespace

std::vector<NonconvexWitness> find_nonconvex_witness(const NormSpec& spec, const std::vector<double>& radii,
                                                     const WitnessSearch& search) {
    if (spec.dim() != 2) throw std::invalid_argument("witness search is planar");
    const Domain dom = Domain::punctured({{0.0, 0.0}});
    std::mt19937_64 rng(search.seed);
    std::uniform_real_distribution<double> unit(0.02, 0.98);
    std::vector<NonconvexWitness> out;
    for (double r : radii) {
        if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");
        const double c = std::expm1(r);
        // the diagonal itself first, then centers displaced off the corner
        // direction by a fraction of the ball's norm radius
        std::vector<Point> centers{{1.0, 1.0}};
        for (double f : {0.5, 0.25, 0.75, 0.1, 0.9}) centers.push_back({1.0, 1.0 - f * c});
        NonconvexWitness w;
        w.radius = r;
        for (std::size_t k = 0; k < search.max_centers && !w.found; ++k) {
            const Point center = k < centers.size() ? centers[k] : Point{1.0, 1.0 - unit(rng) * c};
            ++w.centers_tried;
            const CenterDistance dist(dom, spec, MetricKind::DistanceRatio, center, r);
            const BallTrace trace = trace_ball(dist, dom, r, search.n_rays, kJCrossingTol);
            const ChordBest best = worst_chord(dist, trace, search.n_chord);
            if (best.excess > kWitnessMargin) {
                w.found = true;
                w.center = center;
                w.y = trace.rays[best.a].boundary;
                w.z = trace.rays[best.b].boundary;
                w.s = best.s;
                w.point = lerp(w.z, w.y, w.s);
                w.distance = j_distance(dom, spec, center, w.point);
                w.excess = w.distance - r;
            }
        }
        out.push_back(w);
    }
    return out;
}

}  // namespace qhgeo
