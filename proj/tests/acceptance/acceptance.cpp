// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes. Tolerances and runtime limits are fixed here.

#include "qhgeo/emit.hpp"
#include "qhgeo/experiments.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qhgeo;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds; 0 for none
    std::function<Outcome()> run;
};

const NormSpec kL1 = NormSpec::p_norm(2, 1.0);
const NormSpec kL2 = NormSpec::p_norm(2, 2.0);
const NormSpec kL3 = NormSpec::p_norm(2, 3.0);
const NormSpec kLinf = NormSpec::p_norm(2, kInf);

Domain lower_half_plane() { return Domain::half_space({0.0, 1.0}, 0.0); }

Domain pentagon() {
    return Domain::polytope({{{1.0, 0.0}, -2.0},
                             {{-1.0, 0.0}, -2.0},
                             {{0.0, 1.0}, -1.5},
                             {{0.0, -1.0}, -1.5},
                             {{1.0, 1.0}, -2.5}});
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string csv_of(const ReportDocument& doc) {
    std::ostringstream os;
    write_csv(os, doc);
    return os.str();
}

Point polar(double r, double a) { return {r * std::cos(a), r * std::sin(a)}; }

std::pair<Point, Point> random_punctured_pair(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double ratio = std::exp(std::log(3.0) * (2.0 * u(rng) - 1.0));
    const double base = 2.0 * std::numbers::pi * u(rng);
    const double angle = std::numbers::pi * u(rng);
    const double r = 0.5 + u(rng);
    return {polar(r, base), polar(r * ratio, base + angle)};
}

Point random_inside(const Domain& dom, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (;;) {
        const Point p{u(rng), u(rng)};
        if (contains(dom, p)) return p;
    }
}

Outcome vertical_geodesic() {
    const double ln2 = std::log(2.0);
    const auto e = qh_distance(lower_half_plane(), kL2, {0.0, -1.0}, {0.0, -2.0});
    return {e.upper >= ln2 - 1e-4 && e.upper <= ln2 + 1e-2 && e.lower <= e.upper,
            "upper=" + format_double(e.upper) + " in [ln2-1e-4, ln2+1e-2]"};
}

Outcome counterexample() {
    const ReportDocument r = run_counterexample();
    const double ln3 = std::log(3.0);
    const bool upper = r.get("unconstrained_upper") <= std::log(9.0 / 4.0) + 1e-3;
    const bool constrained = r.get("constrained_lower") >= 0.99;
    const bool bracket = r.get("k_xc_lower") <= ln3 + 1e-2 && r.get("k_xc_upper") >= ln3 - 1e-2;
    bool verdict = false;
    for (const auto& [k, v] : r.conclusions()) verdict = verdict || v == "not quasihyperbolically convex";
    return {upper && constrained && bracket && verdict && r.passed(),
            "k(a,b)<=" + format_double(r.get("unconstrained_upper")) + ", constrained>=" +
                format_double(r.get("constrained_lower")) + ", k(x,c) in [" + format_double(r.get("k_xc_lower")) +
                ", " + format_double(r.get("k_xc_upper")) + "]"};
}

Outcome punctured_oracle() {
    std::mt19937_64 rng(2024);
    const Domain dom = Domain::punctured({{0.0, 0.0}});
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < 20; ++i) {
        const auto [x, y] = random_punctured_pair(rng);
        const auto e = qh_distance(dom, kL2, x, y);
        const double err = std::abs(e.upper - oracle::punctured_plane_k(x[0], x[1], y[0], y[1]));
        worst = std::max(worst, err);
        ok = ok && err <= 1e-2 && e.lower <= e.upper;
    }
    return {ok, "20 pairs, max |upper - oracle| = " + format_double(worst) + " <= 1e-2"};
}

Outcome suite_result(Suite s, std::initializer_list<const char*> zero_counts, double min_configs) {
    const ReportDocument r = run_theorem_suite(s);
    bool ok = r.passed() && r.get("configurations") >= min_configs;
    std::string detail = "configurations=" + format_double(r.get("configurations"));
    for (const char* q : zero_counts) {
        ok = ok && r.get(q) == 0.0;
        detail += std::string(", ") + q + "=" + format_double(r.get(q));
    }
    return {ok, detail};
}

Outcome fig3() {
    const std::vector<double> radii{0.2, 0.1, 0.05};
    const Domain dom = Domain::punctured({{0.0, 0.0}});
    WitnessSearch search;
    const auto ws = find_nonconvex_witness(kLinf, radii, search);
    bool ok = ws.size() == radii.size();
    std::string detail;
    for (const NonconvexWitness& w : ws) {
        // independent re-evaluation of j at the chord point
        const Point p = w.s * w.y + (1.0 - w.s) * w.z;
        const double excess = j_distance(dom, kLinf, w.center, p) - w.radius;
        const bool ends_inside = j_distance(dom, kLinf, w.center, w.y) <= w.radius + 1e-12 &&
                                 j_distance(dom, kLinf, w.center, w.z) <= w.radius + 1e-12;
        ok = ok && w.found && excess > 1e-9 && ends_inside;
        detail += "r=" + format_double(w.radius) + " excess=" + fmt("%.3g", w.found ? excess : 0.0) + "; ";
    }
    return {ok, detail};
}

Outcome holder() {
    bool ok = true;
    std::string detail;
    for (double p : {1.0, 2.0, 3.0}) {
        const ReportDocument r = run_holder_check(p, 1000, 64, 0);
        ok = ok && r.get("max_ratio") <= 1.0 + 1e-12 && r.get("constant_max_error") <= 1e-12;
        detail += "p=" + format_double(p) + " max=" + fmt("%.4f", r.get("max_ratio")) + "; ";
    }
    // constant f, checked here against the closed form directly
    double err = 0.0;
    for (double p : {1.0, 2.0, 3.0})
        for (double t : {0.1, 0.3, 0.7, 1.0})
            err = std::max(err, std::abs(holder_ratio({1.7}, p, t) - std::pow(t, p) / (p + 1.0)));
    ok = ok && err <= 1e-12;
    return {ok, detail + "constant error=" + fmt("%.2g", err)};
}

Outcome moduli() {
    const ReportDocument e = run_moduli_check(kL2);
    const ReportDocument i = run_moduli_check(kLinf);
    const bool ok = e.get("delta_max_error") <= 1e-3 && e.get("rho_max_error") <= 1e-3 &&
                    std::abs(i.get("delta_1")) <= 1e-6;
    return {ok, "delta err=" + fmt("%.2g", e.get("delta_max_error")) + ", rho err=" +
                    fmt("%.2g", e.get("rho_max_error")) + ", linf delta(1)=" + format_double(i.get("delta_1"))};
}

Outcome avgpath() {
    const ReportDocument r = run_avgpath_check(100, 0, {0.05, 0.1, 0.2});
    bool ok = r.passed();
    std::string detail;
    for (const char* R : {"0.05", "0.1", "0.2"}) {
        const std::string s(R);
        ok = ok && r.get("pairs_" + s) == 100.0 && r.get("min_slack_" + s) >= -1e-8 &&
             r.get("max_ratio2_over_t2_" + s) <= 1.0;
        detail += "R=" + s + " slack>=" + fmt("%.2g", r.get("min_slack_" + s)) + " ratio2/t2<=" +
                  fmt("%.3f", r.get("max_ratio2_over_t2_" + s)) + "; ";
    }
    return {ok, detail};
}

Outcome properties() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::string> failed;

    // 1-Lipschitz boundary distance
    const std::vector<Domain> domains{Domain::punctured({{0.0, 0.0}, {1.0, 0.5}}), lower_half_plane(), pentagon(),
                                      Domain::notched_box({0.0, 0.0}, {2.0, 2.0}, {1.0, 1.0}, {2.0, 2.0})};
    for (const Domain& dom : domains) {
        for (const NormSpec& spec : {kL1, kL2, kL3, kLinf}) {
            for (int i = 0; i < 10000; ++i) {
                const Point x = random_inside(dom, rng), y = random_inside(dom, rng);
                if (std::abs(boundary_distance(dom, spec, x) - boundary_distance(dom, spec, y)) >
                    norm(spec, x - y) + 1e-12) {
                    failed.push_back("lipschitz");
                    break;
                }
            }
        }
    }

    // concavity of d on convex domains
    for (const Domain& dom : {lower_half_plane(), pentagon()}) {
        for (const NormSpec& spec : {kL1, kL2, kLinf}) {
            for (int i = 0; i < 10000; ++i) {
                const Point u = random_inside(dom, rng), v = random_inside(dom, rng);
                const double s = unit(rng);
                if (boundary_distance(dom, spec, s * u + (1.0 - s) * v) <
                    s * boundary_distance(dom, spec, u) + (1.0 - s) * boundary_distance(dom, spec, v) - 1e-12) {
                    failed.push_back("concavity");
                    break;
                }
            }
        }
    }

    // scaling isometry and the j <= k bracket on the punctured plane
    const Domain punct = Domain::punctured({{0.0, 0.0}});
    for (int i = 0; i < 50; ++i) {
        const auto [x, y] = random_punctured_pair(rng);
        const auto base = qh_distance(punct, kL2, x, y);
        if (!(base.lower <= base.upper) || base.lower != j_distance(punct, kL2, x, y)) failed.push_back("bracket");
        for (double lambda : {0.5, 2.0, 10.0}) {
            SolverParams p;
            p.grid_spacing *= lambda;
            p.refine_step *= lambda;
            const auto e = qh_distance(punct, kL2, lambda * x, lambda * y, p);
            if (std::abs(e.upper - base.upper) > 2e-2 || !(e.lower <= e.upper)) {
                failed.push_back("scaling");
                break;
            }
        }
    }
    for (const NormSpec& spec : {kL1, kLinf}) {
        for (int i = 0; i < 5; ++i) {
            const Domain dom = pentagon();
            const Point x = random_inside(dom, rng), y = random_inside(dom, rng);
            if (boundary_distance(dom, spec, x) < 0.2 || boundary_distance(dom, spec, y) < 0.2) continue;
            const auto e = qh_distance(dom, spec, x, y);
            if (!(e.lower <= e.upper)) failed.push_back("bracket");
        }
    }

    // quadrature convergence on the three reference paths
    struct Ref {
        Domain dom;
        NormSpec spec;
        Polyline path;
        double exact;
    };
    const std::vector<Ref> refs{
        {lower_half_plane(), kL2, Polyline({{0.0, -1.0}, {0.0, -2.0}}), std::log(2.0)},
        {lower_half_plane(), kLinf, Polyline({{-1.0, -2.0}, {0.0, -3.0}, {1.0, -2.0}}), std::log(9.0 / 4.0)},
        {punct, kL2, Polyline({{1.0, 0.0}, {std::numbers::e, 0.0}}), 1.0}};
    for (const Ref& ref : refs) {
        for (double tol : {1e-4, 1e-6, 1e-8, 1e-10}) {
            const double a = qh_polyline_length(ref.dom, ref.spec, ref.path, tol);
            const double b = qh_polyline_length(ref.dom, ref.spec, ref.path, tol / 2.0);
            if (std::abs(a - b) > tol || std::abs(a - ref.exact) > tol) failed.push_back("quadrature");
        }
    }

    // byte-identical reports
    if (csv_of(run_counterexample()) != csv_of(run_counterexample())) failed.push_back("determinism");
    if (csv_of(run_avgpath_check(20, 3)) != csv_of(run_avgpath_check(20, 3))) failed.push_back("determinism");
    if (csv_of(run_holder_check(2.0, 100, 32, 3)) != csv_of(run_holder_check(2.0, 100, 32, 3)))
        failed.push_back("determinism");
    if (csv_of(run_conformality_check(punct, kL2, 300, 3)) != csv_of(run_conformality_check(punct, kL2, 300, 3)))
        failed.push_back("determinism");

    std::string detail = failed.empty() ? "lipschitz, concavity, scaling, bracket, quadrature, determinism" : "failed:";
    for (const std::string& f : failed) detail += " " + f;
    return {failed.empty(), detail};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "half-plane vertical geodesic", 5.0, vertical_geodesic},
        {2, "half-plane counterexample", 60.0, counterexample},
        {3, "punctured plane log-polar oracle", 60.0, punctured_oracle},
        {4, "starlike j-balls at log 2", 10.0, [] { return suite_result(Suite::Thm31, {"violations"}, 100); }},
        {5, "convex balls in convex domains", 120.0,
         [] { return suite_result(Suite::Thm41, {"j_violations", "k_violations"}, 25); }},
        {6, "non-convex j-balls in punctured l-infinity", 0.0, fig3},
        {7, "primitive power ratio", 0.0, holder},
        {8, "moduli of convexity and smoothness", 0.0, moduli},
        {9, "averaged path inequality", 0.0, avgpath},
        {10, "property suites", 0.0, properties},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit > 0.0 && secs > c.time_limit) {
            out.passed = false;
            out.detail += fmt(" [over time limit %.0f s]", c.time_limit);
        }
        if (!out.passed) ++failures;
        std::printf("criterion %2d %s  %s: %s (%.2f s)\n", c.id, out.passed ? "PASS" : "FAIL", c.name,
                    out.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
