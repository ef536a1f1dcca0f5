#include "doctest.h"

#include "qhgeo/emit.hpp"
#include "qhgeo/experiments.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace qhgeo;

namespace {

Polyline walk(const Point& start, double heading, double h, std::size_t n) {
    std::vector<Point> v{start};
    for (std::size_t i = 0; i < n; ++i) v.push_back(v.back() + Point{h * std::cos(heading), h * std::sin(heading)});
    return Polyline(std::move(v));
}

std::string csv_of(const ReportDocument& doc) {
    std::ostringstream os;
    write_csv(os, doc);
    return os.str();
}

}  // namespace

TEST_CASE("holder ratio closed forms") {
    // constant f: F = c x, ratio t^p / (p + 1)
    for (double p : {1.0, 2.0, 3.0}) {
        for (double t : {0.1, 0.5, 1.0}) {
            CHECK(holder_ratio({2.5}, p, t) == doctest::Approx(std::pow(t, p) / (p + 1.0)).epsilon(1e-13));
            CHECK(holder_ratio({1.0, 1.0, 1.0, 1.0}, p, t) ==
                  doctest::Approx(std::pow(t, p) / (p + 1.0)).epsilon(1e-13));
        }
    }
    // f = 2 then 1 on halves, p = 1: int_0^1 F = 1/4 + 5/8, int f = 3/2
    CHECK(holder_ratio({2.0, 1.0}, 1.0, 1.0) == doctest::Approx(7.0 / 12.0).epsilon(1e-13));
    CHECK_THROWS_AS(holder_ratio({1.0, 0.0}, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(holder_ratio({}, 2.0, 0.5), std::invalid_argument);
}

TEST_CASE("holder check report") {
    const ReportDocument r = run_holder_check(2.0, 200, 32, 5);
    CHECK(r.passed());
    CHECK(r.get("max_ratio") <= 1.0);
    CHECK(r.get("constant_max_error") <= 1e-12);
}

TEST_CASE("averaged path examples") {
    const Polyline same = walk({1.5, 0.0}, 0.3, 0.01, 20);
    const AvgPathTerms s = avgpath_terms(same, same);
    CHECK(s.penalty == 0.0);
    CHECK(std::abs(s.slack) <= 1e-12);
    CHECK(s.lk_avg == doctest::Approx(s.lk1).epsilon(1e-12));

    const double a30 = std::numbers::pi / 6.0;
    const AvgPathTerms r = avgpath_terms(walk({1.0, 0.0}, 0.0, 0.01, 20), walk({1.0, 0.0}, a30, 0.01, 20));
    CHECK(r.slack >= 0.0);
    CHECK(r.penalty > 0.0);
    CHECK(r.ratio2_max <= 1.0);
    CHECK(r.t1 == doctest::Approx(0.2));

    const AvgPathTerms shorter = avgpath_terms(walk({1.0, 0.0}, 0.0, 0.01, 10), walk({1.0, 0.0}, a30, 0.01, 20));
    CHECK(shorter.tail > 0.0);
    CHECK(shorter.slack >= 0.0);

    CHECK_THROWS_AS(avgpath_terms(walk({1.0, 0.0}, 0.0, 0.01, 20), walk({1.0, 0.0}, 0.0, 0.02, 20)),
                    std::invalid_argument);
    CHECK_THROWS_AS(avgpath_terms(walk({1.0, 0.0}, 0.0, 0.01, 30), walk({1.0, 0.0}, 0.0, 0.01, 20)),
                    std::invalid_argument);
}

TEST_CASE("averaged path check") {
    const ReportDocument r = run_avgpath_check(20, 1);
    CHECK(r.passed());
    CHECK(r.get("pairs_0.1") == 20.0);
    CHECK(r.get("min_slack_0.2") >= -1e-8);
}

TEST_CASE("conformality radii") {
    const ReportDocument r =
        run_conformality_check(Domain::punctured({{0.0, 0.0}}), NormSpec::p_norm(2, 2.0), 400, 2);
    CHECK(r.passed());
    CHECK(r.get("r_k_C1.1") > 0.0);
    CHECK(r.get("r_k_C1.01") > 0.0);
    CHECK(r.get("r_k_C1.01") <= r.get("r_k_C1.1"));
    CHECK(r.get("radial_ratio_k") == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("j ball intersection") {
    const NormSpec l2 = NormSpec::p_norm(2, 2.0);
    const ReportDocument r =
        run_jball_intersection_check({{0.0, 0.0}, {3.0, 0.0}}, l2, {1.0, 0.0}, std::log(2.0), 2000, 4);
    CHECK(r.passed());
    CHECK(r.get("discrepancies") == 0.0);
    CHECK(r.get("inside") > 0.0);
    CHECK(r.get("outside") > 0.0);
    // one puncture: nothing to intersect
    const ReportDocument one = run_jball_intersection_check({{0.0, 0.0}}, l2, {1.0, 0.0}, 0.5, 500, 4);
    CHECK(one.passed());
    CHECK(one.get("discrepancies") == 0.0);
}

TEST_CASE("moduli of the euclidean and l-infinity planes") {
    const ReportDocument e = run_moduli_check(NormSpec::p_norm(2, 2.0), 1024, 0);
    CHECK(e.passed());
    CHECK(e.get("delta_1") == doctest::Approx(1.0 - std::sqrt(3.0) / 2.0).epsilon(1e-9));
    CHECK(e.get("rho_1") == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-9));
    const ReportDocument i = run_moduli_check(NormSpec::p_norm(2, kInf), 1024, 0);
    CHECK(i.passed());
    CHECK(i.get("delta_1") == 0.0);
}

TEST_CASE("counterexample verdicts") {
    const ReportDocument r = run_counterexample();
    CHECK(r.passed());
    CHECK(r.get("unconstrained_upper") == doctest::Approx(std::log(9.0 / 4.0)).epsilon(1e-6));
    CHECK(r.get("constrained_lower") >= 0.99);
    CHECK(r.get("k_xc_upper") == doctest::Approx(std::log(3.0)).epsilon(1e-6));
    CHECK(r.get("convexity_gap") > 0.0);
    REQUIRE_FALSE(r.conclusions().empty());
    CHECK(r.conclusions().back().second == "not quasihyperbolically convex");
}

TEST_CASE("reports are deterministic for a fixed seed") {
    CHECK(csv_of(run_holder_check(3.0, 50, 16, 9)) == csv_of(run_holder_check(3.0, 50, 16, 9)));
    CHECK(csv_of(run_avgpath_check(10, 9)) == csv_of(run_avgpath_check(10, 9)));
    CHECK(csv_of(run_counterexample()) == csv_of(run_counterexample()));
}

TEST_CASE("suite names") {
    CHECK(parse_suite("Thm31") == Suite::Thm31);
    CHECK(std::string(to_string(Suite::Fig3)) == "Fig3");
    CHECK_THROWS_AS(parse_suite("Thm99"), std::invalid_argument);
}

TEST_CASE("small theorem suites pass") {
    SuiteConfig c;
    c.configurations = 6;
    c.n_rays = 24;
    c.n_chord = 4;
    // fewer configurations than a full run, so only the violation count is checked
    CHECK(run_theorem_suite(Suite::Thm31, c).get("violations") == 0.0);
    const ReportDocument t44 = run_theorem_suite(Suite::Thm44, c);
    CHECK(t44.get("j_violations") == 0.0);
    CHECK(t44.get("k_violations") == 0.0);
    CHECK(t44.get("scaled_path_violations") == 0.0);
    SuiteConfig f;
    f.radii = {0.2};
    const ReportDocument fig = run_theorem_suite(Suite::Fig3, f);
    CHECK(fig.passed());
}
