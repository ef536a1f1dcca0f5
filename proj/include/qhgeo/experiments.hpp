#pragma once

#include "qhgeo/ball.hpp"
#include "qhgeo/domain.hpp"
#include "qhgeo/emit.hpp"
#include "qhgeo/geodesic.hpp"
#include "qhgeo/norm.hpp"
#include "qhgeo/paths.hpp"
#include "qhgeo/report.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace qhgeo {

// Half-plane {y < 0} under the l-infinity norm, x = (0,-1), r = ln 2,
// a = (-1,-2), b = (1,-2), c = (0,-3).
struct CounterexampleResult {
    ReportDocument report{"counterexample"};
    Polyline unconstrained_path{{{-1.0, -2.0}, {1.0, -2.0}}};
    Polyline constrained_path{{{-1.0, -2.0}, {1.0, -2.0}}};
    BallTrace ball;
};

CounterexampleResult run_counterexample_full(const SolverParams& params = {});
ReportDocument run_counterexample(const SolverParams& params = {});

// x, a, b, c, the broken line a-c-b, the domain boundary and the traced ball.
SvgScene counterexample_scene(const CounterexampleResult& result);

// int_0^t F^p / int_0^t f^p for the step function taking f[i] on the i-th of
// f.size() equal cells of [0, 1], F the primitive of f; integrated piece by
// piece in closed form.
double holder_ratio(const std::vector<double>& f, double p, double t);

// Random step functions with values log-uniform in [0.1, 10], t = 0.1..1.0.
ReportDocument run_holder_check(double p, std::size_t trials, std::size_t steps, std::uint64_t seed);

// Both sides of the averaged-path inequality for two planar paths in the
// punctured Euclidean plane. Every segment of both paths must have the same
// Euclidean length h; gamma1 is held at its endpoint after its last vertex.
struct AvgPathTerms {
    double t1 = 0.0;
    double t2 = 0.0;
    double lk1 = 0.0;
    double lk2 = 0.0;
    double lk_avg = 0.0;
    double tail = 0.0;     // half the k-length of gamma2 on [t1, t2]
    double penalty = 0.0;  // integral of delta(|D(g1 - g2)|) / (|g1| + |g2|)
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // lhs - rhs
    // max over vertex parameters t <= t1 of (int 2 rho(|g1-g2|/8)) /
    // (int delta(f)/8) / t^2; NaN when f vanishes on [0, t1]
    double ratio2_max = 0.0;
};

AvgPathTerms avgpath_terms(const Polyline& gamma1, const Polyline& gamma2);

// `trials` admissible pairs per radius (k-lengths at most R, paths and their
// average inside the annulus 1 <= |x| < 2).
ReportDocument run_avgpath_check(std::size_t trials, std::uint64_t seed,
                                 const std::vector<double>& radii = {0.05, 0.1, 0.2});

// Punctured space with one puncture. For C in {1.1, 1.01} and both metrics,
// the largest sampled radius below which every pair satisfies
// C^-1 m(x,y) <= |x-y|/d(x) <= C m(x,y), using the bracket conservatively.
ReportDocument run_conformality_check(const Domain& domain, const NormSpec& spec, std::size_t trials,
                                      std::uint64_t seed);

ReportDocument run_jball_intersection_check(const std::vector<Point>& punctures, const NormSpec& spec,
                                            const Point& x, double r, std::size_t samples, std::uint64_t seed);

// delta on eps = 0.2, 0.6, 1.0, 1.4, 1.8 and rho on tau = 0.1, 0.5, 1.0, with
// closed-form comparisons for the Euclidean plane and delta(1) for l-infinity.
ReportDocument run_moduli_check(const NormSpec& spec, std::int64_t budget = 4096, std::uint64_t seed = 0);

enum class Suite { Thm31, Thm41, Thm44, Fig3 };

Suite parse_suite(std::string_view name);  // throws std::invalid_argument
const char* to_string(Suite suite) noexcept;

struct SuiteConfig {
    std::uint64_t seed = 0;
    std::size_t configurations = 0;  // 0: suite default (100, 25, 16, -)
    std::size_t n_rays = 0;          // 0: suite default
    std::size_t n_chord = 0;         // 0: suite default
    std::vector<double> radii{0.2, 0.1, 0.05};  // Fig3 only
};

ReportDocument run_theorem_suite(Suite which, const SuiteConfig& config = {});

}  // namespace qhgeo
