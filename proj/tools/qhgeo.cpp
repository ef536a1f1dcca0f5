// qhgeo: command-line front end for the qhgeo library.
//
//   qhgeo <subcommand> [--config FILE] [--out-dir DIR] [--seed N]
//
// Every subcommand prints its report as `key: value` lines, writes
// report.txt and report.csv (plus traces, paths and SVG scenes where
// relevant) into the output directory, and exits 0 when all verdicts pass,
// 1 when one fails or the computation errors, 2 on bad input.

#include "qhgeo/ball.hpp"
#include "qhgeo/config.hpp"
#include "qhgeo/emit.hpp"
#include "qhgeo/experiments.hpp"
#include "qhgeo/geodesic.hpp"
#include "qhgeo/parallel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

namespace fs = std::filesystem;
using namespace qhgeo;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

MetricKind metric_from(const Config& cfg) {
    const std::string m = cfg.get_string("metric", "j");
    if (m == "j") return MetricKind::DistanceRatio;
    if (m == "k") return MetricKind::QuasiHyperbolic;
    throw ConfigError("metric must be 'j' or 'k'");
}

std::size_t count_from(const Config& cfg, const std::string& key, std::int64_t fallback) {
    const std::int64_t v = cfg.get_int(key, fallback);
    if (v <= 0) throw ConfigError(key + " must be positive");
    return static_cast<std::size_t>(v);
}

double positive(const Config& cfg, const std::string& key, double fallback) {
    const double v = cfg.get_double(key, fallback);
    if (!(v > 0.0)) throw ConfigError(key + " must be positive");
    return v;
}

SolverParams solver_from(const Config& cfg) {
    SolverParams p;
    p.grid_spacing = cfg.get_double("grid_spacing", p.grid_spacing);
    p.grid_margin = cfg.get_double("grid_margin", p.grid_margin);
    p.neighbor_stencil = static_cast<int>(cfg.get_int("neighbor_stencil", p.neighbor_stencil));
    p.refine_rounds = static_cast<int>(cfg.get_int("refine_rounds", p.refine_rounds));
    p.refine_step = cfg.get_double("refine_step", p.refine_step);
    p.quad_tol = cfg.get_double("quad_tol", p.quad_tol);
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return p;
}

// Viewport from `viewport = xmin ymin xmax ymax`, else the bounding box of
// `pts` with a 15% margin.
Viewport viewport_from(const Config& cfg, const std::vector<Point>& pts) {
    Viewport vp;
    vp.width_px = cfg.get_double("width_px", 600.0);
    if (cfg.has("viewport")) {
        const std::vector<double> v = cfg.get_doubles("viewport");
        if (v.size() != 4 || !(v[2] > v[0]) || !(v[3] > v[1]))
            throw ConfigError("viewport needs xmin ymin xmax ymax");
        vp.xmin = v[0], vp.ymin = v[1], vp.xmax = v[2], vp.ymax = v[3];
        return vp;
    }
    if (pts.empty()) return vp;
    double x0 = kInf, y0 = kInf, x1 = -kInf, y1 = -kInf;
    for (const Point& p : pts) {
        x0 = std::min(x0, p[0]), x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]), y1 = std::max(y1, p[1]);
    }
    const double pad = 0.15 * std::max({x1 - x0, y1 - y0, 1e-3});
    vp.xmin = x0 - pad, vp.xmax = x1 + pad, vp.ymin = y0 - pad, vp.ymax = y1 + pad;
    return vp;
}

std::vector<Point> trace_points(const BallTrace& t) {
    std::vector<Point> pts{t.center};
    for (const TracedRay& r : t.rays) pts.push_back(r.boundary);
    return pts;
}

void require_planar(const Domain& dom) {
    if (dom.dim() != 2) throw InputError("this subcommand is planar");
}

void add_check_quantities(ReportDocument& rep, const CheckReport& cr) {
    rep.set("configurations", static_cast<double>(cr.configurations));
    rep.set("points_checked", static_cast<double>(cr.points_checked));
    rep.set("violations", static_cast<double>(cr.violation_count));
    rep.set("max_excess", cr.max_excess);
    if (!std::isnan(cr.max_upper_excess)) rep.set("max_upper_excess", cr.max_upper_excess);
    if (!std::isnan(cr.min_midpoint_margin)) rep.set("min_midpoint_margin", cr.min_midpoint_margin);
    rep.check("no_violations", "violations", Relation::LessEq, 0.0);
}

// ---------------------------------------------------------------- subcommands

ReportDocument cmd_distance(const Config& cfg, const fs::path& out) {
    const Domain dom = domain_from_config(cfg);
    const NormSpec spec = norm_from_config(cfg);
    const Point x = cfg.get_point("x");
    const Point y = cfg.get_point("y");
    const SolverParams params = solver_from(cfg);
    ReportDocument rep("distance");
    rep.input("domain", dom.describe());
    rep.input("norm", format_double(spec.p()));
    rep.input("x", to_string(x));
    rep.input("y", to_string(y));
    const DistanceEstimate e = qh_distance(dom, spec, x, y, params);
    rep.set("k_lower", e.lower);
    rep.set("k_upper", e.upper);
    rep.set("j", j_distance(dom, spec, x, y));
    rep.set("path_vertices", static_cast<double>(e.path.size()));
    rep.set("bracket_width", e.upper - e.lower);
    rep.check("bracket_ordered", "bracket_width", Relation::GreaterEq, -params.quad_tol);
    emit_csv(e.path, out / "path.csv");
    if (dom.dim() == 2) {
        SvgScene scene(viewport_from(cfg, e.path.vertices()));
        scene.add_domain(dom);
        scene.add_path(e.path, "path");
        scene.add_point(x, "x");
        scene.add_point(y, "y");
        emit_svg(scene, out / "distance.svg");
    }
    return rep;
}

struct BallSetup {
    Domain domain;
    NormSpec spec;
    MetricKind metric;
    Point center;
    double radius;
    std::size_t n_rays;
    double tol;
};

BallSetup ball_setup(const Config& cfg) {
    BallSetup b{domain_from_config(cfg), norm_from_config(cfg), metric_from(cfg), cfg.get_point("center"),
                positive(cfg, "radius", std::log(2.0)), count_from(cfg, "n_rays", 64), 0.0};
    b.tol = positive(cfg, "crossing_tol", b.metric == MetricKind::DistanceRatio ? kJCrossingTol : kKCrossingTol);
    require_planar(b.domain);
    if (!contains(b.domain, b.center)) throw InputError("center lies outside the domain");
    return b;
}

void echo_ball(ReportDocument& rep, const BallSetup& b) {
    rep.input("domain", b.domain.describe());
    rep.input("norm", format_double(b.spec.p()));
    rep.input("metric", to_string(b.metric));
    rep.input("center", to_string(b.center));
    rep.input("radius", b.radius);
    rep.input("n_rays", static_cast<double>(b.n_rays));
}

void emit_ball(const Config& cfg, const BallSetup& b, const BallTrace& t, const fs::path& out) {
    emit_csv(t, out / "trace.csv");
    SvgScene scene(viewport_from(cfg, trace_points(t)));
    scene.add_domain(b.domain);
    scene.add_ball(t, "ball");
    scene.add_point(b.center, "center");
    emit_svg(scene, out / "ball.svg");
}

ReportDocument cmd_ball(const Config& cfg, const fs::path& out) {
    const BallSetup b = ball_setup(cfg);
    ReportDocument rep("ball");
    echo_ball(rep, b);
    const CenterDistance dist(b.domain, b.spec, b.metric, b.center, b.radius);
    const BallTrace t = trace_ball(dist, b.domain, b.radius, b.n_rays, b.tol);
    double tmin = kInf, tmax = 0.0, off = 0.0;
    std::size_t clipped = 0;
    for (const TracedRay& r : t.rays) {
        tmin = std::min(tmin, r.t_star), tmax = std::max(tmax, r.t_star);
        if (r.clipped) ++clipped;
        else off = std::max(off, b.radius - dist.upper(r.boundary));
    }
    rep.set("min_t_star", tmin);
    rep.set("max_t_star", tmax);
    rep.set("clipped_rays", static_cast<double>(clipped));
    rep.set("max_sphere_gap", off);
    rep.check("t_star_positive", "min_t_star", Relation::Greater, 0.0);
    rep.check("on_sphere", "max_sphere_gap", Relation::LessEq, b.tol);
    emit_ball(cfg, b, t, out);
    return rep;
}

ReportDocument cmd_shape_check(const Config& cfg, const fs::path& out, bool convex) {
    const BallSetup b = ball_setup(cfg);
    const std::size_t n_chord = count_from(cfg, "n_chord", convex ? 8 : 16);
    const double tol = positive(cfg, "tol", b.metric == MetricKind::DistanceRatio ? 1e-9 : 1e-2);
    ReportDocument rep(convex ? "convex" : "starlike");
    echo_ball(rep, b);
    rep.input("n_chord", static_cast<double>(n_chord));
    rep.input("tol", tol);
    const CenterDistance dist(b.domain, b.spec, b.metric, b.center, b.radius);
    const BallTrace t = trace_ball(dist, b.domain, b.radius, b.n_rays, b.tol);
    const CheckReport cr =
        convex ? convexity_check(dist, b.domain, t, n_chord, tol) : starlike_check(dist, b.domain, t, n_chord, tol);
    add_check_quantities(rep, cr);
    for (std::size_t i = 0; i < std::min<std::size_t>(cr.violations.size(), 8); ++i) {
        const Violation& v = cr.violations[i];
        rep.witness("point=" + to_string(v.point) + " distance=" + format_double(v.distance) +
                    " excess=" + format_double(v.excess));
    }
    emit_csv(cr, out / "violations.csv");
    emit_ball(cfg, b, t, out);
    return rep;
}

ReportDocument cmd_witness(const Config& cfg, const fs::path& out) {
    Config c = cfg;
    if (!c.has("norm")) c.set("norm", "inf");
    const NormSpec spec = norm_from_config(c);
    WitnessSearch search;
    search.max_centers = count_from(cfg, "max_centers", static_cast<std::int64_t>(search.max_centers));
    search.n_rays = count_from(cfg, "n_rays", static_cast<std::int64_t>(search.n_rays));
    search.n_chord = count_from(cfg, "n_chord", static_cast<std::int64_t>(search.n_chord));
    search.seed = cfg.get_u64("seed", 0);
    const std::vector<double> radii = cfg.get_doubles("radii", {0.2, 0.1, 0.05});
    ReportDocument rep("witness");
    rep.input("norm", format_double(spec.p()));
    std::string rs;
    for (double r : radii) rs += (rs.empty() ? "" : " ") + format_double(r);
    rep.input("radii", rs);
    rep.input("seed", std::to_string(search.seed));
    const Domain dom = Domain::punctured({Point(spec.dim())});
    std::vector<Point> pts;
    std::optional<SvgScene> scene;
    for (const NonconvexWitness& w : find_nonconvex_witness(spec, radii, search)) {
        const std::string name = "excess_r" + format_double(w.radius);
        rep.set(name, w.found ? j_distance(dom, spec, w.center, w.point) - w.radius : -kInf);
        rep.set("centers_tried_r" + format_double(w.radius), static_cast<double>(w.centers_tried));
        if (w.found) {
            rep.witness("r=" + format_double(w.radius) + " center=" + to_string(w.center) + " y=" + to_string(w.y) +
                        " z=" + to_string(w.z) + " s=" + format_double(w.s));
            if (!scene) {
                const BallTrace t = trace_ball(dom, spec, MetricKind::DistanceRatio, w.center, w.radius,
                                               search.n_rays, kJCrossingTol);
                emit_csv(t, out / "witness_trace.csv");
                scene.emplace(viewport_from(cfg, trace_points(t)));
                scene->add_ball(t, "ball r=" + format_double(w.radius));
                scene->add_path(Polyline({w.y, w.z}), "chord");
                scene->add_point(w.point, "witness");
            }
        }
        rep.check("nonconvex_r" + format_double(w.radius), name, Relation::Greater, 1e-9);
    }
    if (scene) emit_svg(*scene, out / "witness.svg");
    return rep;
}

ReportDocument cmd_counterexample(const Config& cfg, const fs::path& out) {
    const CounterexampleResult res = run_counterexample_full(solver_from(cfg));
    emit_csv(res.unconstrained_path, out / "unconstrained_path.csv");
    emit_csv(res.constrained_path, out / "constrained_path.csv");
    emit_csv(res.ball, out / "ball_trace.csv");
    emit_svg(counterexample_scene(res), out / "counterexample.svg");
    return res.report;
}

ReportDocument cmd_holder(const Config& cfg, const fs::path&) {
    ReportDocument rep("holder");
    const std::size_t trials = count_from(cfg, "trials", 1000);
    const std::size_t steps = count_from(cfg, "steps", 64);
    const std::uint64_t seed = cfg.get_u64("seed", 0);
    for (double p : cfg.get_doubles("p", {1.0, 2.0, 3.0})) {
        if (!(p >= 1.0)) throw ConfigError("p must be at least 1");
        rep.absorb(run_holder_check(p, trials, steps, seed), "p" + format_double(p) + ".");
    }
    return rep;
}

ReportDocument cmd_avgpath(const Config& cfg, const fs::path&) {
    return run_avgpath_check(count_from(cfg, "trials", 100), cfg.get_u64("seed", 0),
                             cfg.get_doubles("radii", {0.05, 0.1, 0.2}));
}

ReportDocument cmd_conformality(const Config& cfg, const fs::path&) {
    Config c = cfg;
    if (!c.has("domain")) {
        c.set("domain", "punctured");
        c.set("punctures", "0 0");
    }
    const Domain dom = domain_from_config(c);
    try {
        return run_conformality_check(dom, norm_from_config(c), count_from(cfg, "trials", 2000),
                                      cfg.get_u64("seed", 0));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

ReportDocument cmd_jball(const Config& cfg, const fs::path&) {
    const std::vector<Point> punctures =
        cfg.has("punctures") ? cfg.get_points("punctures") : std::vector<Point>{{0.0, 0.0}, {3.0, 0.0}};
    const Point x = cfg.has("x") ? cfg.get_point("x") : Point{1.0, 0.0};
    try {
        return run_jball_intersection_check(punctures, norm_from_config(cfg), x,
                                            positive(cfg, "radius", std::log(2.0)), count_from(cfg, "samples", 10000),
                                            cfg.get_u64("seed", 0));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

ReportDocument cmd_moduli(const Config& cfg, const fs::path&) {
    return run_moduli_check(norm_from_config(cfg), static_cast<std::int64_t>(count_from(cfg, "budget", 4096)),
                            cfg.get_u64("seed", 0));
}

ReportDocument cmd_suite(const Config& cfg, const fs::path&) {
    SuiteConfig sc;
    sc.seed = cfg.get_u64("seed", 0);
    sc.configurations = static_cast<std::size_t>(cfg.get_int("configurations", 0));
    sc.n_rays = static_cast<std::size_t>(cfg.get_int("n_rays", 0));
    sc.n_chord = static_cast<std::size_t>(cfg.get_int("n_chord", 0));
    sc.radii = cfg.get_doubles("radii", sc.radii);
    const std::string which = cfg.get_string("suite", "all");
    if (which != "all") {
        try {
            return run_theorem_suite(parse_suite(which), sc);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    ReportDocument rep("suite");
    for (Suite s : {Suite::Thm31, Suite::Thm41, Suite::Thm44, Suite::Fig3})
        rep.absorb(run_theorem_suite(s, sc), std::string(to_string(s)) + ".");
    return rep;
}

using Command = std::function<ReportDocument(const Config&, const fs::path&)>;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasihyperbolic and distance-ratio geometry of planar domains"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;

    const std::map<std::string, std::pair<std::string, Command>> commands{
        {"distance", {"bracket k(x, y) with the lattice solver", cmd_distance}},
        {"ball", {"trace a j- or k-ball boundary", cmd_ball}},
        {"starlike", {"sample starlikeness of a ball", [](auto& c, auto& o) { return cmd_shape_check(c, o, false); }}},
        {"convex", {"sample convexity of a ball", [](auto& c, auto& o) { return cmd_shape_check(c, o, true); }}},
        {"witness", {"search non-convex j-balls in a punctured plane", cmd_witness}},
        {"counterexample", {"half-plane l-infinity example with a non-convex k-ball", cmd_counterexample}},
        {"holder", {"Hoelder-type ratio bound for step functions", cmd_holder}},
        {"avgpath", {"averaged-path inequality in the punctured plane", cmd_avgpath}},
        {"conformality", {"small-scale comparison of k and j with |x-y|/d(x)", cmd_conformality}},
        {"jball-intersection", {"j-balls of multiply punctured spaces as intersections", cmd_jball}},
        {"moduli", {"moduli of convexity and smoothness", cmd_moduli}},
        {"suite", {"theorem suites: Thm31, Thm41, Thm44, Fig3 or all", cmd_suite}},
    };
    for (const auto& [name, entry] : commands) {
        CLI::App* sub = app.add_subcommand(name, entry.first);
        sub->add_option("--config", config_path, "flat key = value file");
        sub->add_option("--out-dir", out_dir, "directory for reports and artifacts");
        sub->add_option("--seed", seed, "overrides the config seed");
        sub->add_option("--threads", threads, "cap on parallel fan-out (default QHGEO_THREADS)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (threads) set_thread_cap(*threads);

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
        if (seed) cfg.set("seed", std::to_string(*seed));
        const fs::path out(out_dir);
        std::error_code ec;
        fs::create_directories(out, ec);
        if (ec) throw IoError("cannot create " + out.string() + ": " + ec.message());
        const ReportDocument rep = commands.at(name).second(cfg, out);
        std::ofstream txt(out / "report.txt", std::ios::binary);
        txt << rep.text();
        if (!txt) throw IoError("cannot write " + (out / "report.txt").string());
        emit_csv(rep, out / "report.csv");
        std::cout << rep.text();
        return rep.passed() ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "qhgeo " << name << ": configuration error: " << e.what() << '\n';
        return 2;
    } catch (const InputError& e) {
        std::cerr << "qhgeo " << name << ": input error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "qhgeo " << name << ": " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qhgeo " << name << ": invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qhgeo " << name << ": experiment error: " << e.what() << '\n';
        return 1;
    }
}
