#include "qhgeo/experiments.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace qhgeo {

namespace {

const NormSpec kL2 = NormSpec::p_norm(2, 2.0);

std::string key(const std::string& base, double v) { return base + "_" + format_double(v); }

std::string describe(const Point& p) { return to_string(p); }

// Numerically stable forms of the Euclidean moduli for small arguments.
double delta2(double eps) {
    const double q = std::min(eps * eps / 4.0, 1.0);
    return q / (1.0 + std::sqrt(1.0 - q));
}

double rho2(double tau) {
    const double q = tau * tau;
    return q / (std::sqrt(1.0 + q) + 1.0);
}

using Gauss = boost::math::quadrature::gauss<double, 10>;

// Euclidean distance from the origin to the segment [p, q].
double segment_min_norm(const Point& p, const Point& q) {
    const Point u = q - p;
    const double uu = dot(u, u);
    const double t = uu > 0.0 ? std::clamp(-dot(p, u) / uu, 0.0, 1.0) : 0.0;
    const Point m = p + t * u;
    return std::sqrt(dot(m, m));
}

bool in_annulus(const Polyline& path) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (segment_min_norm(path[i], path[i + 1]) < 1.0) return false;
    }
    for (const Point& v : path.vertices()) {
        if (!(std::sqrt(dot(v, v)) < 2.0)) return false;
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------- counterexample

CounterexampleResult run_counterexample_full(const SolverParams& params) {
    const Domain dom = Domain::half_space({0.0, 1.0}, 0.0);
    const NormSpec linf = NormSpec::p_norm(2, kInf);
    const Point x{0.0, -1.0};
    const Point a{-1.0, -2.0};
    const Point b{1.0, -2.0};
    const Point c{0.0, -3.0};
    const double r = std::log(2.0);
    const double ln3 = std::log(3.0);
    const double ln94 = std::log(9.0 / 4.0);

    CounterexampleResult out;
    ReportDocument& rep = out.report;
    rep.input("domain", dom.describe());
    rep.input("norm", "linf");
    rep.input("x", describe(x));
    rep.input("radius", r);
    rep.input("a", describe(a));
    rep.input("b", describe(b));
    rep.input("c", describe(c));
    rep.input("grid_spacing", params.grid_spacing);

    // (i)
    const DistanceEstimate ab = qh_distance(dom, linf, a, b, params);
    out.unconstrained_path = ab.path;
    rep.set("unconstrained_lower", ab.lower);
    rep.set("unconstrained_upper", ab.upper);
    rep.check("unconstrained_upper_below_ln9_4", "unconstrained_upper", Relation::LessEq, ln94 + 1e-3);

    const Polyline broken({a, c, b});
    rep.set("broken_line_length", qh_polyline_length(dom, linf, broken, 1e-12));
    rep.set("broken_line_error", std::abs(rep.get("broken_line_length") - ln94));
    rep.check("broken_line_is_ln9_4", "broken_line_error", Relation::LessEq, 1e-6);

    // (ii) d is 1-Lipschitz and the k-ball lies in the norm ball of radius
    // (e^r - 1) d(x), so d <= e^r d(x) on it; any path inside has k-length at
    // least |a - b| / (e^r d(x))
    const double sup_d = std::exp(r) * boundary_distance(dom, linf, x);
    rep.set("ball_sup_d", sup_d);
    rep.set("constrained_lower", linf(b - a) / sup_d);
    rep.check("constrained_lower_at_least_0.99", "constrained_lower", Relation::GreaterEq, 0.99);
    SolverParams constrained = params;
    constrained.ball_constraint = BallConstraint{x, r, MetricKind::QuasiHyperbolic};
    const DistanceEstimate cab = qh_distance(dom, linf, a, b, constrained);
    out.constrained_path = cab.path;
    rep.set("constrained_upper", cab.upper);
    rep.check("constrained_search_at_least_0.99", "constrained_upper", Relation::GreaterEq, 0.99);

    // (iii)
    const DistanceEstimate xc = qh_distance(dom, linf, x, c, params);
    rep.set("k_xc_lower", xc.lower);
    rep.set("k_xc_upper", xc.upper);
    rep.check("k_xc_lower_le_ln3", "k_xc_lower", Relation::LessEq, ln3 + 1e-2);
    rep.check("k_xc_upper_ge_ln3", "k_xc_upper", Relation::GreaterEq, ln3 - 1e-2);
    rep.check("k_xc_upper_le_ln3", "k_xc_upper", Relation::LessEq, ln3 + 1e-2);
    rep.check("c_outside_ball", "k_xc_lower", Relation::Greater, r);

    // (iv)
    for (const auto& [name, p] : {std::pair<const char*, Point>{"a", a}, {"b", b}}) {
        const DistanceEstimate e = qh_distance(dom, linf, x, p, params);
        const std::string base = std::string("k_x") + name;
        rep.set(base + "_lower", e.lower);
        rep.set(base + "_upper", e.upper);
        rep.check(base + "_lower_le_ln2", base + "_lower", Relation::LessEq, r + 1e-2);
        rep.check(base + "_upper_ge_ln2", base + "_upper", Relation::GreaterEq, r - 1e-2);
        rep.check(base + "_upper_le_ln2", base + "_upper", Relation::LessEq, r + 1e-2);
    }

    // a and b sit on the sphere, yet every path between them inside the ball
    // is longer than k(a, b)
    rep.set("convexity_gap", rep.get("constrained_lower") - rep.get("unconstrained_upper"));
    const Verdict& v = rep.check("not_quasihyperbolically_convex", "convexity_gap", Relation::Greater, 0.0);
    rep.conclude("verdict", v.passed ? "not quasihyperbolically convex" : "undecided");

    out.ball = trace_ball(dom, linf, MetricKind::QuasiHyperbolic, x, r, 128, kKCrossingTol);
    return out;
}

ReportDocument run_counterexample(const SolverParams& params) { return run_counterexample_full(params).report; }

SvgScene counterexample_scene(const CounterexampleResult& result) {
    SvgScene scene(Viewport{-2.5, -3.5, 2.5, 0.5, 500.0});
    scene.add_domain(Domain::half_space({0.0, 1.0}, 0.0));
    scene.add_ball(result.ball);
    scene.add_path(Polyline({{-1.0, -2.0}, {0.0, -3.0}, {1.0, -2.0}}), "broken line a-c-b");
    scene.add_point({0.0, -1.0}, "x");
    scene.add_point({-1.0, -2.0}, "a");
    scene.add_point({1.0, -2.0}, "b");
    scene.add_point({0.0, -3.0}, "c");
    return scene;
}

// ---------------------------------------------------------------- Hoelder lemma

double holder_ratio(const std::vector<double>& f, double p, double t) {
    if (f.empty()) throw std::invalid_argument("holder_ratio: empty step function");
    if (!(p >= 1.0)) throw std::invalid_argument("holder_ratio: p must be at least 1");
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("holder_ratio: t must lie in (0, 1]");
    const double h = 1.0 / static_cast<double>(f.size());
    double num = 0.0, den = 0.0, F = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double a = static_cast<double>(i) * h;
        if (a >= t) break;
        const double len = std::min(h, t - a);
        const double v = f[i];
        if (!(v > 0.0)) throw std::invalid_argument("holder_ratio: f must be positive");
        // int_a^{a+len} (F + v s)^p ds = (B^{p+1} - F^{p+1}) / ((p+1) v)
        const double growth = F > 0.0 ? std::pow(F, p + 1.0) * std::expm1((p + 1.0) * std::log1p(v * len / F))
                                       : std::pow(v * len, p + 1.0);
        num += growth / ((p + 1.0) * v);
        den += std::pow(v, p) * len;
        F += v * len;
    }
    return num / den;
}

ReportDocument run_holder_check(double p, std::size_t trials, std::size_t steps, std::uint64_t seed) {
    if (!(p >= 1.0)) throw std::invalid_argument("p must be at least 1");
    if (steps == 0) throw std::invalid_argument("steps must be positive");
    ReportDocument rep("holder");
    rep.input("p", p);
    rep.input("trials", static_cast<double>(trials));
    rep.input("steps", static_cast<double>(steps));
    rep.input("seed", std::to_string(seed));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> logv(std::log(0.1), std::log(10.0));
    double max_ratio = 0.0;   // R(t) / t^p
    double max_excess = -kInf;  // R(t) - t^p
    std::vector<double> f(steps);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        for (double& v : f) v = std::exp(logv(rng));
        for (int k = 1; k <= 10; ++k) {
            const double t = k / 10.0;
            const double R = holder_ratio(f, p, t);
            const double tp = std::pow(t, p);
            if (R / tp > max_ratio) {
                max_ratio = R / tp;
                if (max_ratio > 1.0) {
                    std::ostringstream os;
                    os << "trial " << trial << " t=" << format_double(t) << " ratio=" << format_double(max_ratio);
                    rep.witness(os.str());
                }
            }
            max_excess = std::max(max_excess, R - tp);
        }
    }
    rep.set("max_ratio", max_ratio);
    rep.set("max_excess", max_excess);
    rep.check("ratio_within_t_pow_p", "max_ratio", Relation::LessEq, 1.0 + 1e-12);
    rep.check("excess_within_1e-12", "max_excess", Relation::LessEq, 1e-12);

    // constants: R(t) = t^p / (p + 1)
    double const_err = 0.0;
    for (double C : {0.1, 1.0, 10.0}) {
        const std::vector<double> flat(steps, C);
        for (int k = 1; k <= 10; ++k) {
            const double t = k / 10.0;
            const_err = std::max(const_err, std::abs(holder_ratio(flat, p, t) - std::pow(t, p) / (p + 1.0)));
        }
    }
    rep.set("constant_max_error", const_err);
    rep.check("constant_closed_form", "constant_max_error", Relation::LessEq, 1e-12);
    return rep;
}

// ---------------------------------------------------------------- averaged paths

AvgPathTerms avgpath_terms(const Polyline& gamma1, const Polyline& gamma2) {
    if (gamma1.dim() != 2 || gamma2.dim() != 2) throw std::invalid_argument("avgpath_terms: planar paths only");
    const std::size_t n1 = gamma1.segment_count();
    const std::size_t n2 = gamma2.segment_count();
    if (n1 > n2) throw std::invalid_argument("avgpath_terms: gamma1 must not be longer than gamma2");
    if (!(gamma1.front() == gamma2.front())) throw std::invalid_argument("avgpath_terms: paths must share a start");
    const double h = kL2(gamma2[1] - gamma2[0]);
    auto same_h = [&](const Polyline& g) {
        for (std::size_t i = 0; i + 1 < g.size(); ++i) {
            if (std::abs(kL2(g[i + 1] - g[i]) - h) > 1e-9 * h) return false;
        }
        return true;
    };
    if (!(h > 0.0) || !same_h(gamma1) || !same_h(gamma2))
        throw std::invalid_argument("avgpath_terms: segments must share one length");

    const Domain dom = Domain::punctured({{0.0, 0.0}});
    constexpr double tol = 1e-12;
    const Polyline g1 = pad_with_endpoint(gamma1, gamma2.size());

    AvgPathTerms out;
    out.t1 = h * static_cast<double>(n1);
    out.t2 = h * static_cast<double>(n2);
    out.lk1 = qh_polyline_length(dom, kL2, gamma1, tol);
    const std::vector<double> seg2 = qh_segment_lengths(dom, kL2, gamma2, tol);
    for (std::size_t i = 0; i < n2; ++i) {
        out.lk2 += seg2[i];
        if (i >= n1) out.tail += 0.5 * seg2[i];
    }
    out.lk_avg = qh_polyline_length(dom, kL2, average_path(g1, gamma2, 0.5), tol);

    double num = 0.0, den = 0.0;
    out.ratio2_max = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < n1; ++i) {
        const Point u1 = (1.0 / h) * (g1[i + 1] - g1[i]);
        const Point u2 = (1.0 / h) * (gamma2[i + 1] - gamma2[i]);
        const Point p1 = g1[i];
        const Point p2 = gamma2[i];
        const double f = kL2(u1 - u2);
        const double dlt = delta2(f);
        out.penalty += dlt * Gauss::integrate(
                                 [&](double s) { return 1.0 / (kL2(p1 + s * u1) + kL2(p2 + s * u2)); }, 0.0, h);
        num += Gauss::integrate([&](double s) { return 2.0 * rho2(kL2((p1 - p2) + s * (u1 - u2)) / 8.0); }, 0.0, h);
        den += h * dlt / 8.0;
        if (den > 0.0) {
            const double t = h * static_cast<double>(i + 1);
            const double q = num / den / (t * t);
            out.ratio2_max = std::isnan(out.ratio2_max) ? q : std::max(out.ratio2_max, q);
        }
    }
    out.lhs = 0.5 * (out.lk1 + out.lk2) + out.tail;
    out.rhs = out.lk_avg + out.penalty;
    out.slack = out.lhs - out.rhs;
    return out;
}

namespace {

// Constant-speed walk with steady turning: `n` segments of length h.
Polyline turning_walk(const Point& start, double heading, double turn, double h, std::size_t n) {
    std::vector<Point> v{start};
    for (std::size_t i = 0; i < n; ++i) {
        const double a = heading + turn * (static_cast<double>(i) + 0.5);
        v.push_back(v.back() + Point{h * std::cos(a), h * std::sin(a)});
    }
    return Polyline(std::move(v));
}

}  // namespace

ReportDocument run_avgpath_check(std::size_t trials, std::uint64_t seed, const std::vector<double>& radii) {
    ReportDocument rep("avgpath");
    rep.input("trials", static_cast<double>(trials));
    rep.input("seed", std::to_string(seed));
    std::string rs;
    for (double R : radii) rs += (rs.empty() ? "" : " ") + format_double(R);
    rep.input("radii", rs);
    rep.input("M", 0.125);
    rep.input("K", 0.5);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    constexpr std::size_t kSegments = 24;

    for (double R : radii) {
        if (!(R > 0.0)) throw std::invalid_argument("radii must be positive");
        std::size_t accepted = 0, resampled = 0, strict = 0;
        double min_slack = kInf, max_ratio2 = 0.0;
        while (accepted < trials) {
            if (resampled > 1000 * (trials + 1)) throw std::runtime_error("avgpath: pair generator starved");
            const double r0 = 1.15 + 0.7 * u(rng);
            const double phi = 2.0 * std::numbers::pi * u(rng);
            const Point start{r0 * std::cos(phi), r0 * std::sin(phi)};
            const double L2 = (0.25 + 0.75 * u(rng)) * R;
            const double h = L2 / kSegments;
            const std::size_t n1 = 1 + static_cast<std::size_t>(u(rng) * kSegments) % kSegments;
            const double head1 = 2.0 * std::numbers::pi * u(rng);
            const double head2 = head1 + std::numbers::pi / 3.0 * (2.0 * u(rng) - 1.0);
            const Polyline g1 = turning_walk(start, head1, (8.0 * u(rng) - 4.0) * h, h, n1);
            const Polyline g2 = turning_walk(start, head2, (8.0 * u(rng) - 4.0) * h, h, kSegments);
            const Polyline avg = average_path(pad_with_endpoint(g1, g2.size()), g2, 0.5);
            if (!in_annulus(g1) || !in_annulus(g2) || !in_annulus(avg)) {
                ++resampled;
                continue;
            }
            const AvgPathTerms t = avgpath_terms(g1, g2);
            if (std::max(t.lk1, t.lk2) > R) {
                ++resampled;
                continue;
            }
            ++accepted;
            if (t.slack > 0.0) ++strict;
            if (t.slack < min_slack) {
                min_slack = t.slack;
                if (t.slack < -1e-8) {
                    std::ostringstream os;
                    os << "R=" << format_double(R) << " start=" << describe(start) << " slack=" << format_double(t.slack);
                    rep.witness(os.str());
                }
            }
            if (!std::isnan(t.ratio2_max)) max_ratio2 = std::max(max_ratio2, t.ratio2_max);
        }
        rep.set(key("pairs", R), static_cast<double>(accepted));
        rep.set(key("resampled", R), static_cast<double>(resampled));
        rep.set(key("strict_slack_pairs", R), static_cast<double>(strict));
        rep.set(key("min_slack", R), min_slack);
        rep.set(key("max_ratio2_over_t2", R), max_ratio2);
        rep.check(key("inequality_holds", R), key("min_slack", R), Relation::GreaterEq, -1e-8);
        rep.check(key("ratio2_bound", R), key("max_ratio2_over_t2", R), Relation::LessEq, 1.0);
    }

    // identical paths: both penalty terms vanish
    const Polyline same = turning_walk({1.5, 0.0}, 0.3, 0.02, 0.01, 20);
    rep.set("example_identical_slack_abs", std::abs(avgpath_terms(same, same).slack));
    rep.check("example_identical", "example_identical_slack_abs", Relation::LessEq, 1e-12);
    // straight segments from (1,0), 30 degrees apart, length 0.2
    const double a30 = std::numbers::pi / 6.0;
    const AvgPathTerms radial = avgpath_terms(turning_walk({1.0, 0.0}, 0.0, 0.0, 0.01, 20),
                                              turning_walk({1.0, 0.0}, a30, 0.0, 0.01, 20));
    rep.set("example_radial30_slack", radial.slack);
    rep.set("example_radial30_ratio2_over_t2", radial.ratio2_max);
    rep.check("example_radial30", "example_radial30_slack", Relation::GreaterEq, -1e-8);
    rep.check("example_radial30_ratio2", "example_radial30_ratio2_over_t2", Relation::LessEq, 1.0);
    return rep;
}

// ---------------------------------------------------------------- conformality

ReportDocument run_conformality_check(const Domain& domain, const NormSpec& spec, std::size_t trials,
                                      std::uint64_t seed) {
    const auto* ps = domain.as<PuncturedSpace>();
    if (!ps || ps->punctures.size() != 1) throw std::invalid_argument("conformality: one puncture expected");
    if (domain.dim() != 2) throw std::invalid_argument("conformality: planar domains only");
    const Point z = ps->punctures.front();
    ReportDocument rep("conformality");
    rep.input("domain", domain.describe());
    rep.input("trials", static_cast<double>(trials));
    rep.input("seed", std::to_string(seed));

    struct Pair {
        double q;  // |x - y| / d(x)
        double lower;
        double upper;
    };
    std::vector<Pair> pairs(trials);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (Pair& pr : pairs) {
        const double a = 2.0 * std::numbers::pi * u(rng);
        Point x = z + Point{std::cos(a), std::sin(a)};
        x = z + (0.5 + 1.5 * u(rng)) / spec(x - z) * (x - z);
        const double dx = boundary_distance(domain, spec, x);
        const double b = 2.0 * std::numbers::pi * u(rng);
        Point v{std::cos(b), std::sin(b)};
        v = (1.0 / spec(v)) * v;
        const double s = std::exp(std::log(1e-5) + (std::log(0.5) - std::log(1e-5)) * u(rng));
        const Point y = x + s * dx * v;
        pr = {spec(x - y) / dx, j_distance(domain, spec, x, y), qh_segment_length(domain, spec, x, y, 1e-12)};
    }

    for (const char* metric : {"k", "j"}) {
        const bool is_k = metric[0] == 'k';
        for (double C : {1.1, 1.01}) {
            // smallest upper bound among failing pairs; all pairs below it pass
            double r = kInf;
            double sampled = 0.0;
            for (const Pair& pr : pairs) {
                const double lo = pr.lower;
                const double hi = is_k ? pr.upper : pr.lower;
                sampled = std::max(sampled, hi);
                const bool ok = pr.q >= hi / C && pr.q <= C * lo;
                if (!ok) r = std::min(r, hi);
            }
            const std::string name = std::string("r_") + metric + "_C" + format_double(C);
            rep.set(name, std::min(r, sampled));
            rep.check(name + "_positive", name, Relation::Greater, 0.0);
        }
    }

    // radial pair with h = 1e-4: k = log(1 + h) = j
    const double hh = 1e-4;
    const Point e0{1.0, 0.0};
    const Point x = z + (1.0 / spec(e0)) * e0;
    const Point y = z + ((1.0 + hh) / spec(e0)) * e0;
    const double q = spec(x - y) / boundary_distance(domain, spec, x);
    rep.set("radial_ratio_k", q / qh_segment_length(domain, spec, x, y, 1e-14));
    rep.set("radial_ratio_j", q / j_distance(domain, spec, x, y));
    for (const char* m : {"radial_ratio_k", "radial_ratio_j"}) {
        rep.check(std::string(m) + "_low", m, Relation::GreaterEq, 1.0 - 1e-3);
        rep.check(std::string(m) + "_high", m, Relation::LessEq, 1.0 + 1e-3);
    }
    return rep;
}

// ---------------------------------------------------------------- j-ball intersection

ReportDocument run_jball_intersection_check(const std::vector<Point>& punctures, const NormSpec& spec,
                                            const Point& x, double r, std::size_t samples, std::uint64_t seed) {
    if (punctures.empty()) throw std::invalid_argument("jball-intersection: no punctures");
    if (!(r > 0.0)) throw std::invalid_argument("jball-intersection: radius must be positive");
    const Domain dom = Domain::punctured(punctures);
    if (!contains(dom, x)) throw std::invalid_argument("jball-intersection: x is a puncture");
    std::vector<Domain> singles;
    for (const Point& z : punctures) singles.push_back(Domain::punctured({z}));

    ReportDocument rep("jball_intersection");
    std::string cs;
    for (const Point& z : punctures) cs += (cs.empty() ? "" : " ") + describe(z);
    rep.input("punctures", cs);
    rep.input("x", describe(x));
    rep.input("radius", r);
    rep.input("samples", static_cast<double>(samples));
    rep.input("seed", std::to_string(seed));

    // the ball lies in the norm ball of radius (e^r - 1) d(x); sample a box
    // half again as wide
    double inv = 1.0;
    if (spec.kind() == NormKind::WeightedPNorm)
        for (double w : spec.weights()) inv = std::max(inv, 1.0 / w);
    const double half = 1.5 * std::expm1(r) * boundary_distance(dom, spec, x) * inv;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::size_t inside = 0, discrepancies = 0, certified = 0, skipped = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        Point y = x;
        for (std::size_t k = 0; k < y.dim(); ++k) y[k] += half * u(rng);
        if (!contains(dom, y)) {
            ++skipped;
            continue;
        }
        const bool in_omega = j_distance(dom, spec, x, y) <= r;
        bool in_all = true;
        for (const Domain& s : singles) in_all = in_all && j_distance(s, spec, x, y) <= r;
        if (in_omega) ++inside;
        if (!in_omega && !in_all) ++certified;
        if (in_omega != in_all) {
            ++discrepancies;
            if (discrepancies <= 8) rep.witness("y=" + describe(y));
        }
    }
    rep.set("inside", static_cast<double>(inside));
    rep.set("outside", static_cast<double>(samples - skipped - inside));
    rep.set("skipped", static_cast<double>(skipped));
    rep.set("certified_exclusions", static_cast<double>(certified));
    rep.set("discrepancies", static_cast<double>(discrepancies));
    rep.check("membership_equivalence", "discrepancies", Relation::LessEq, 0.0);
    return rep;
}

// ---------------------------------------------------------------- moduli

ReportDocument run_moduli_check(const NormSpec& spec, std::int64_t budget, std::uint64_t seed) {
    ReportDocument rep("moduli");
    rep.input("p", spec.p());
    rep.input("dim", static_cast<double>(spec.dim()));
    rep.input("budget", static_cast<double>(budget));
    rep.input("seed", std::to_string(seed));
    const bool euclid = spec.kind() == NormKind::PNorm && spec.p() == 2.0;
    const bool linf2 = spec.kind() == NormKind::PNorm && std::isinf(spec.p()) && spec.dim() == 2;

    double prev = -kInf, mono = 0.0, err_d = 0.0, err_r = 0.0, pt_d = kInf, pt_r = kInf;
    for (double eps : {0.2, 0.6, 1.0, 1.4, 1.8}) {
        const double d = modulus_of_convexity_estimate(spec, eps, budget, seed).value;
        rep.set(key("delta", eps), d);
        mono = std::max(mono, prev - d);
        prev = d;
        if (euclid) {
            err_d = std::max(err_d, std::abs(d - euclidean_convexity_modulus(eps)));
            pt_d = std::min(pt_d, d - eps * eps / 8.0);
        }
    }
    for (double tau : {0.1, 0.5, 1.0}) {
        const double r = modulus_of_smoothness_estimate(spec, tau, budget, seed).value;
        rep.set(key("rho", tau), r);
        if (euclid) {
            err_r = std::max(err_r, std::abs(r - euclidean_smoothness_modulus(tau)));
            pt_r = std::min(pt_r, tau * tau / 2.0 - r);
        }
    }
    rep.set("delta_monotonicity_drop", mono);
    rep.check("delta_nondecreasing", "delta_monotonicity_drop", Relation::LessEq, 1e-6);
    if (euclid) {
        rep.set("delta_max_error", err_d);
        rep.set("rho_max_error", err_r);
        rep.set("delta_power_type_margin", pt_d);
        rep.set("rho_power_type_margin", pt_r);
        rep.check("delta_closed_form", "delta_max_error", Relation::LessEq, 1e-3);
        rep.check("rho_closed_form", "rho_max_error", Relation::LessEq, 1e-3);
        rep.check("delta_power_type_2", "delta_power_type_margin", Relation::GreaterEq, -1e-12);
        rep.check("rho_power_type_2", "rho_power_type_margin", Relation::GreaterEq, -1e-12);
    }
    if (linf2) {
        rep.check("linf_delta_1_is_zero", key("delta", 1.0), Relation::LessEq, 1e-6);
    }
    return rep;
}

}  // namespace qhgeo
