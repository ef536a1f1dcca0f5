#include "qhgeo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace qhgeo {

namespace {

struct SuiteCase {
    Domain domain;
    NormSpec spec;
    Point center;
};

NormSpec cycled_norm(std::size_t i) {
    static const double ps[] = {1.0, 2.0, 3.0, kInf};
    return NormSpec::p_norm(2, ps[i % 4]);
}

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

Point sample_center(Rng& rng, const Domain& dom, const NormSpec& spec, double lo, double hi) {
    for (int it = 0; it < 10000; ++it) {
        const Point c{uniform(rng, lo, hi), uniform(rng, lo, hi)};
        if (contains(dom, c) && boundary_distance(dom, spec, c) >= 0.05) return c;
    }
    throw std::runtime_error("could not place a center");
}

Domain random_punctured(Rng& rng) {
    const int m = 1 + static_cast<int>(rng() % 3);
    std::vector<Point> zs;
    for (int i = 0; i < m; ++i) zs.push_back({uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)});
    return Domain::punctured(std::move(zs));
}

Domain random_half_plane(Rng& rng) {
    const double a = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    return Domain::half_space({std::cos(a), std::sin(a)}, uniform(rng, -1.0, 1.0));
}

// Faces tangent-ish to a circle at jittered, roughly equally spaced angles;
// consecutive normals stay less than pi apart, so the polygon is bounded.
Domain random_polygon(Rng& rng) {
    const int m = 3 + static_cast<int>(rng() % 5);
    const double step = 2.0 * std::numbers::pi / m;
    const double phase = uniform(rng, 0.0, step);
    std::vector<HalfSpace> faces;
    for (int k = 0; k < m; ++k) {
        const double a = phase + step * (k + uniform(rng, -0.15, 0.15));
        faces.push_back({{std::cos(a), std::sin(a)}, -uniform(rng, 0.6, 1.6)});
    }
    return Domain::polytope(std::move(faces));
}

Domain l_shape() { return Domain::notched_box({0.0, 0.0}, {2.0, 2.0}, {1.0, 1.0}, {2.0, 2.0}); }

std::size_t pick(std::size_t configured, std::size_t fallback) { return configured ? configured : fallback; }

void note_violation(ReportDocument& rep, const std::string& tag, const CheckReport& cr, const SuiteCase& c,
                    double r) {
    if (cr.violations.empty() || rep.witnesses().size() >= 32) return;
    const Violation& v = cr.violations.front();
    std::ostringstream os;
    os << tag << " domain=" << c.domain.describe() << " p=" << format_double(c.spec.p())
       << " center=" << to_string(c.center) << " r=" << format_double(r) << " point=" << to_string(v.point)
       << " excess=" << format_double(v.excess);
    rep.witness(os.str());
}

// ---------------------------------------------------------------- Thm31

ReportDocument suite_thm31(const SuiteConfig& cfg) {
    ReportDocument rep("suite_thm31");
    const std::size_t n = pick(cfg.configurations, 100);
    const std::size_t rays = pick(cfg.n_rays, 90);
    const std::size_t chords = pick(cfg.n_chord, 16);
    const double r = std::log(2.0);
    rep.input("configurations", static_cast<double>(n));
    rep.input("radius", r);
    rep.input("n_rays", static_cast<double>(rays));
    rep.input("n_chord", static_cast<double>(chords));
    rep.input("seed", std::to_string(cfg.seed));

    Rng rng(cfg.seed);
    CheckReport total;
    double min_clean = kInf;
    std::size_t beyond = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const NormSpec spec = cycled_norm(i);
        Domain dom = Domain::punctured({{0.0, 0.0}});
        double lo = -1.5, hi = 1.5;
        switch ((i / 4) % 3) {
            case 0: dom = random_punctured(rng); break;
            case 1: dom = random_half_plane(rng); lo = -2.0; hi = 2.0; break;
            default: dom = random_polygon(rng); lo = -0.6; hi = 0.6; break;
        }
        const SuiteCase c{dom, spec, sample_center(rng, dom, spec, lo, hi)};
        const CheckReport cr = starlike_check(c.domain, c.spec, MetricKind::DistanceRatio, c.center, r, rays,
                                              chords, 1e-9);
        note_violation(rep, "starlike", cr, c, r);
        total.merge(cr);
        // largest radius of a fixed sweep with no violation; not asserted
        double clean = cr.passed ? r : 0.0;
        if (cr.passed) {
            for (double big : {0.8, 1.0, 1.5, 2.0, 3.0}) {
                if (!starlike_check(c.domain, c.spec, MetricKind::DistanceRatio, c.center, big, rays, chords, 1e-9)
                         .passed) {
                    ++beyond;
                    break;
                }
                clean = big;
            }
        }
        min_clean = std::min(min_clean, clean);
    }
    rep.set("configurations", static_cast<double>(total.configurations));
    rep.set("points_checked", static_cast<double>(total.points_checked));
    rep.set("violations", static_cast<double>(total.violation_count));
    rep.set("max_excess", total.max_excess);
    rep.set("min_largest_clean_radius", min_clean);
    rep.set("configs_failing_above_log2", static_cast<double>(beyond));
    rep.check("enough_configurations", "configurations", Relation::GreaterEq, 100.0);
    rep.check("no_violations", "violations", Relation::LessEq, 0.0);
    return rep;
}

// ---------------------------------------------------------------- Thm41

ReportDocument suite_thm41(const SuiteConfig& cfg) {
    ReportDocument rep("suite_thm41");
    const std::size_t n = pick(cfg.configurations, 25);
    const std::size_t j_rays = pick(cfg.n_rays, 64);
    const std::size_t k_rays = pick(cfg.n_rays, 32);
    const std::size_t j_chords = pick(cfg.n_chord, 8);
    const std::size_t k_chords = pick(cfg.n_chord, 6);
    rep.input("configurations", static_cast<double>(n));
    rep.input("j_tol", 1e-9);
    rep.input("k_tol", 1e-2);
    rep.input("seed", std::to_string(cfg.seed));

    Rng rng(cfg.seed + 41);
    CheckReport jt, kt;
    for (std::size_t i = 0; i < n; ++i) {
        const NormSpec spec = cycled_norm(i);
        const bool half = (i / 4) % 2 == 0;
        const Domain dom = half ? random_half_plane(rng) : random_polygon(rng);
        const SuiteCase c{dom, spec, sample_center(rng, dom, spec, half ? -2.0 : -0.6, half ? 2.0 : 0.6)};
        const double rj = uniform(rng, 0.3, 2.0);
        const double rk = uniform(rng, 0.2, 0.8);
        const CheckReport a =
            convexity_check(c.domain, c.spec, MetricKind::DistanceRatio, c.center, rj, j_rays, j_chords, 1e-9);
        note_violation(rep, "j-convexity", a, c, rj);
        jt.merge(a);
        const CheckReport b =
            convexity_check(c.domain, c.spec, MetricKind::QuasiHyperbolic, c.center, rk, k_rays, k_chords, 1e-2);
        note_violation(rep, "k-convexity", b, c, rk);
        kt.merge(b);
    }
    rep.set("configurations", static_cast<double>(n));
    rep.set("j_points_checked", static_cast<double>(jt.points_checked));
    rep.set("j_violations", static_cast<double>(jt.violation_count));
    rep.set("j_max_excess", jt.max_excess);
    rep.set("j_min_midpoint_margin", jt.min_midpoint_margin);
    rep.set("k_points_checked", static_cast<double>(kt.points_checked));
    rep.set("k_violations", static_cast<double>(kt.violation_count));
    rep.set("k_max_excess", kt.max_excess);
    rep.set("k_max_upper_excess", kt.max_upper_excess);
    rep.set("k_min_midpoint_margin", kt.min_midpoint_margin);
    rep.check("enough_configurations", "configurations", Relation::GreaterEq, 25.0);
    rep.check("j_no_violations", "j_violations", Relation::LessEq, 0.0);
    rep.check("k_no_violations", "k_violations", Relation::LessEq, 0.0);
    if (jt.min_midpoint_margin <= 0.0) rep.witness("j midpoint margin not positive (strict convexity probe)");
    return rep;
}

// ---------------------------------------------------------------- Thm44

// Random polyline from `start` whose segments stay inside the domain.
Polyline random_inner_path(Rng& rng, const Domain& dom, const NormSpec& spec, const Point& start, double lo,
                           double hi, std::size_t vertices) {
    std::vector<Point> v{start};
    while (v.size() < vertices) {
        const Point q{uniform(rng, lo, hi), uniform(rng, lo, hi)};
        if (q == v.back() || !contains(dom, q)) continue;
        if (std::isfinite(qh_segment_length(dom, spec, v.back(), q))) v.push_back(q);
    }
    return Polyline(std::move(v));
}

ReportDocument suite_thm44(const SuiteConfig& cfg) {
    ReportDocument rep("suite_thm44");
    const std::size_t n = pick(cfg.configurations, 16);
    const std::size_t j_rays = pick(cfg.n_rays, 64);
    const std::size_t k_rays = pick(cfg.n_rays, 32);
    const std::size_t j_chords = pick(cfg.n_chord, 16);
    const std::size_t k_chords = pick(cfg.n_chord, 8);
    rep.input("configurations", static_cast<double>(n));
    rep.input("seed", std::to_string(cfg.seed));

    Rng rng(cfg.seed + 44);
    CheckReport jt, kt;
    std::size_t path_checks = 0, path_violations = 0;
    double path_worst = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
        const NormSpec spec = cycled_norm(i);
        const bool lshape = i % 2 == 1;
        const Domain dom = lshape ? l_shape() : random_polygon(rng);
        // any point of the square [0,1]^2 sees the whole L
        const Point center = lshape ? Point{uniform(rng, 0.05, 0.95), uniform(rng, 0.05, 0.95)}
                                    : sample_center(rng, dom, spec, -0.6, 0.6);
        const SuiteCase c{dom, spec, center};
        const double rj = uniform(rng, 0.3, 3.0);
        const double rk = uniform(rng, 0.2, 1.0);
        const CheckReport a =
            starlike_check(dom, spec, MetricKind::DistanceRatio, center, rj, j_rays, j_chords, 1e-9);
        note_violation(rep, "j-starlike", a, c, rj);
        jt.merge(a);
        const CheckReport b =
            starlike_check(dom, spec, MetricKind::QuasiHyperbolic, center, rk, k_rays, k_chords, 1e-2);
        note_violation(rep, "k-starlike", b, c, rk);
        kt.merge(b);

        // shrinking a path towards the star center never lengthens it
        const double lo = lshape ? 0.0 : -1.6, hi = lshape ? 2.0 : 1.6;
        for (int trial = 0; trial < 4; ++trial) {
            const Polyline g = random_inner_path(rng, dom, spec, center, lo, hi, 6);
            const double base = qh_polyline_length(dom, spec, g, 1e-10);
            for (double s : {0.25, 0.5, 0.75}) {
                std::vector<Point> vs;
                for (const Point& p : g.vertices()) vs.push_back(lerp(center, p, s));
                const double e = qh_polyline_length(dom, spec, Polyline(std::move(vs)), 1e-10) - base;
                ++path_checks;
                path_worst = std::max(path_worst, e);
                if (e > 1e-8) ++path_violations;
            }
        }
    }
    rep.set("configurations", static_cast<double>(n));
    rep.set("j_violations", static_cast<double>(jt.violation_count));
    rep.set("j_max_excess", jt.max_excess);
    rep.set("k_violations", static_cast<double>(kt.violation_count));
    rep.set("k_max_excess", kt.max_excess);
    rep.set("k_max_upper_excess", kt.max_upper_excess);
    rep.set("scaled_path_checks", static_cast<double>(path_checks));
    rep.set("scaled_path_violations", static_cast<double>(path_violations));
    rep.set("scaled_path_max_growth", path_worst);
    rep.check("j_no_violations", "j_violations", Relation::LessEq, 0.0);
    rep.check("k_no_violations", "k_violations", Relation::LessEq, 0.0);
    rep.check("scaled_paths_not_longer", "scaled_path_violations", Relation::LessEq, 0.0);
    return rep;
}

// ---------------------------------------------------------------- Fig3

ReportDocument suite_fig3(const SuiteConfig& cfg) {
    ReportDocument rep("suite_fig3");
    WitnessSearch search;
    search.seed = cfg.seed;
    if (cfg.n_rays) search.n_rays = cfg.n_rays;
    if (cfg.n_chord) search.n_chord = cfg.n_chord;
    std::string rs;
    for (double r : cfg.radii) rs += (rs.empty() ? "" : " ") + format_double(r);
    rep.input("radii", rs);
    rep.input("n_rays", static_cast<double>(search.n_rays));
    rep.input("n_chord", static_cast<double>(search.n_chord));
    rep.input("seed", std::to_string(cfg.seed));

    const NormSpec linf = NormSpec::p_norm(2, kInf);
    const Domain dom = Domain::punctured({{0.0, 0.0}});
    std::size_t found = 0;
    for (const NonconvexWitness& w : find_nonconvex_witness(linf, cfg.radii, search)) {
        const std::string name = "witness_excess_r" + format_double(w.radius);
        if (w.found) {
            ++found;
            // independent re-evaluation of the chord point
            const double excess = j_distance(dom, linf, w.center, lerp(w.z, w.y, w.s)) - w.radius;
            rep.set(name, excess);
            std::ostringstream os;
            os << "r=" << format_double(w.radius) << " center=" << to_string(w.center) << " y=" << to_string(w.y)
               << " z=" << to_string(w.z) << " s=" << format_double(w.s) << " excess=" << format_double(excess);
            rep.witness(os.str());
        } else {
            rep.set(name, -kInf);
        }
        rep.set("centers_tried_r" + format_double(w.radius), static_cast<double>(w.centers_tried));
        rep.check("nonconvex_at_r" + format_double(w.radius), name, Relation::Greater, 1e-9);
    }
    rep.set("radii_with_witness", static_cast<double>(found));
    return rep;
}

}  // namespace

Suite parse_suite(std::string_view name) {
    if (name == "Thm31" || name == "thm31") return Suite::Thm31;
    if (name == "Thm41" || name == "thm41") return Suite::Thm41;
    if (name == "Thm44" || name == "thm44") return Suite::Thm44;
    if (name == "Fig3" || name == "fig3") return Suite::Fig3;
    throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

const char* to_string(Suite suite) noexcept {
    switch (suite) {
        case Suite::Thm31: return "Thm31";
        case Suite::Thm41: return "Thm41";
        case Suite::Thm44: return "Thm44";
        case Suite::Fig3: return "Fig3";
    }
    return "?";
}

ReportDocument run_theorem_suite(Suite which, const SuiteConfig& config) {
    switch (which) {
        case Suite::Thm31: return suite_thm31(config);
        case Suite::Thm41: return suite_thm41(config);
        case Suite::Thm44: return suite_thm44(config);
        case Suite::Fig3: return suite_fig3(config);
    }
    throw std::invalid_argument("unknown suite");
}

}  // namespace qhgeo
