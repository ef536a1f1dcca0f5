#include "doctest.h"

#include "qhgeo/paths.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace qhgeo;

namespace {

const NormSpec kL2 = NormSpec::p_norm(2, 2.0);
const NormSpec kLinf = NormSpec::p_norm(2, kInf);

Domain lower_half_plane() { return Domain::half_space({0.0, 1.0}, 0.0); }
Domain origin_punctured() { return Domain::punctured({{0.0, 0.0}}); }
Domain box_polytope() {
    return Domain::polytope({{{1.0, 0.0}, -2.0}, {{-1.0, 0.0}, -2.0}, {{0.0, 1.0}, -2.0}, {{0.0, -1.0}, -2.0}});
}

Polyline random_path(std::mt19937_64& rng, const Domain& dom, const Point& start, int segments, double step) {
    std::uniform_real_distribution<double> u(-step, step);
    std::vector<Point> v{start};
    while (static_cast<int>(v.size()) <= segments) {
        Point next = v.back() + Point{u(rng), u(rng)};
        if (contains(dom, next) && !(next == v.back())) v.push_back(next);
    }
    return Polyline(std::move(v));
}

}  // namespace

TEST_CASE("polyline construction") {
    CHECK_THROWS_AS(Polyline({Point{0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Polyline({Point{0.0, 0.0}, Point{0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Polyline({Point{0.0, 0.0}, Point{0.0, 0.0, 1.0}}), std::invalid_argument);
    CHECK_NOTHROW(Polyline::with_stationary({Point{0.0, 0.0}, Point{0.0, 0.0}}));
}

TEST_CASE("norm length examples") {
    CHECK(norm_length(kL2, Polyline({{0.0, 0.0}, {1.0, 0.0}})) == 1.0);
    CHECK(norm_length(kLinf, Polyline({{-1.0, -2.0}, {0.0, -3.0}, {1.0, -2.0}})) == 2.0);
    CHECK(norm_length(kL2, Polyline({{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}})) == 2.0);
}

TEST_CASE("arclength reparameterization examples") {
    const Polyline a = arclength_reparameterize(kL2, Polyline({{0.0, 0.0}, {2.0, 0.0}}), 2);
    REQUIRE(a.size() == 3);
    CHECK(a[1] == Point{1.0, 0.0});
    CHECK(a[2] == Point{2.0, 0.0});

    const Polyline vee({{-1.0, -2.0}, {0.0, -3.0}, {1.0, -2.0}});
    const Polyline b = arclength_reparameterize(kLinf, vee, 4);
    REQUIRE(b.size() == 5);
    const Point expected[] = {{-1.0, -2.0}, {-0.5, -2.5}, {0.0, -3.0}, {0.5, -2.5}, {1.0, -2.0}};
    double arclength = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(b[i][0] == doctest::Approx(expected[i][0]).epsilon(1e-15));
        CHECK(b[i][1] == doctest::Approx(expected[i][1]).epsilon(1e-15));
        if (i > 0) arclength += kLinf(b[i] - b[i - 1]);
        CHECK(arclength == doctest::Approx(0.5 * static_cast<double>(i)).epsilon(1e-14));
    }

    const Polyline c = arclength_reparameterize(kL2, vee, 1);
    REQUIRE(c.size() == 2);
    CHECK(c.front() == vee.front());
    CHECK(c.back() == vee.back());
    CHECK_THROWS_AS(arclength_reparameterize(kL2, Polyline::constant({1.0, 1.0}, 3), 4), std::invalid_argument);
}

TEST_CASE("qh segment length examples") {
    CHECK(qh_segment_length(lower_half_plane(), kL2, {0.0, -1.0}, {0.0, -2.0}) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(qh_segment_length(lower_half_plane(), kLinf, {-1.0, -2.0}, {0.0, -3.0}) ==
          doctest::Approx(std::log(1.5)).epsilon(1e-9));
    CHECK(qh_segment_length(origin_punctured(), kL2, {1.0, 0.0}, {2.0, 0.0}) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(std::isinf(qh_segment_length(origin_punctured(), kL2, {-1.0, 0.0}, {1.0, 0.0})));
    CHECK(qh_segment_length(origin_punctured(), kL2, {1.0, 0.0}, {1.0, 0.0}) == 0.0);
}

TEST_CASE("qh polyline length examples") {
    const Polyline vee({{-1.0, -2.0}, {0.0, -3.0}, {1.0, -2.0}});
    CHECK(std::abs(qh_polyline_length(lower_half_plane(), kLinf, vee) - std::log(9.0 / 4.0)) <= 1e-8);
    const Polyline radial({{1.0, 0.0}, {std::numbers::e, 0.0}});
    CHECK(std::abs(qh_polyline_length(origin_punctured(), kL2, radial) - 1.0) <= 1e-8);
    std::mt19937_64 rng(8);
    const Polyline p = random_path(rng, origin_punctured(), {1.0, 1.0}, 6, 0.5);
    CHECK(qh_polyline_length(origin_punctured(), kL2, p) ==
          doctest::Approx(qh_polyline_length(origin_punctured(), kL2, p.reversed())).epsilon(1e-9));
}

TEST_CASE("parallel and serial polyline lengths agree exactly") {
    std::mt19937_64 rng(9);
    const Polyline p = random_path(rng, origin_punctured(), {1.0, 1.0}, 40, 0.3);
    CHECK(qh_polyline_length(origin_punctured(), kL2, p) == qh_polyline_length_serial(origin_punctured(), kL2, p));
    CHECK(qh_segment_lengths(origin_punctured(), kL2, p) == qh_segment_lengths_serial(origin_punctured(), kL2, p));
}

TEST_CASE("quadrature converges when the tolerance is halved") {
    struct Case {
        Domain dom;
        NormSpec spec;
        Polyline path;
    };
    const Case cases[] = {
        {lower_half_plane(), kL2, Polyline({{0.0, -1.0}, {0.0, -2.0}})},
        {lower_half_plane(), kLinf, Polyline({{-1.0, -2.0}, {0.0, -3.0}})},
        {lower_half_plane(), kLinf, Polyline({{-1.0, -2.0}, {0.0, -3.0}, {1.0, -2.0}})},
    };
    for (const Case& c : cases) {
        for (double tol : {1e-4, 1e-6, 1e-8}) {
            const double a = qh_polyline_length(c.dom, c.spec, c.path, tol);
            const double b = qh_polyline_length(c.dom, c.spec, c.path, tol / 2.0);
            CHECK(std::abs(a - b) <= tol);
        }
    }
}

TEST_CASE("j distance examples") {
    CHECK(j_distance(origin_punctured(), kL2, {1.0, 2.0}, {1.0, 2.0}) == 0.0);
    CHECK(j_distance(origin_punctured(), kL2, {1.0, 0.0}, {2.0, 0.0}) == doctest::Approx(std::log(2.0)));
    CHECK(j_distance(lower_half_plane(), kLinf, {0.0, -1.0}, {2.0, -1.0}) == doctest::Approx(std::log(3.0)));
    CHECK_THROWS_AS(j_distance(lower_half_plane(), kLinf, {0.0, 1.0}, {2.0, -1.0}), std::domain_error);
}

TEST_CASE("j distance is symmetric and separates points") {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const Domain dom = Domain::punctured({{0.0, 0.0}, {1.0, 0.0}});
    for (int k = 0; k < 10000; ++k) {
        const Point x{u(rng), u(rng)};
        const Point y{u(rng), u(rng)};
        if (!contains(dom, x) || !contains(dom, y)) continue;
        REQUIRE(j_distance(dom, kL2, x, y) == j_distance(dom, kL2, y, x));
        REQUIRE((j_distance(dom, kL2, x, y) > 0.0) == !(x == y));
    }
}

TEST_CASE("average path examples") {
    const Polyline p0({{0.0, -1.0}, {0.0, -2.0}});
    const Polyline p1({{0.0, -1.0}, {2.0, -2.0}});
    CHECK(average_path(p0, p1, 0.0).vertices() == p0.vertices());
    CHECK(average_path(p0, p1, 1.0).vertices() == p1.vertices());
    CHECK(average_path(p0, p0, 0.37).vertices() == p0.vertices());
    const Polyline mid = average_path(p0, p1, 0.5);
    CHECK(mid[0] == Point{0.0, -1.0});
    CHECK(mid[1] == Point{1.0, -2.0});
    CHECK_THROWS_AS(average_path(p0, Polyline({{0.0, -1.0}, {1.0, -1.0}, {1.0, -2.0}}), 0.5), std::invalid_argument);
}

TEST_CASE("padding and concatenation") {
    const Polyline p({{0.0, -1.0}, {0.0, -2.0}});
    const Polyline padded = pad_with_endpoint(p, 4);
    REQUIRE(padded.size() == 4);
    CHECK(padded[3] == p.back());
    CHECK(qh_polyline_length(lower_half_plane(), kL2, padded) ==
          doctest::Approx(qh_polyline_length(lower_half_plane(), kL2, p)).epsilon(1e-9));

    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const Polyline a = random_path(rng, origin_punctured(), {1.0, 1.0}, 5, 0.4);
        const Polyline b = random_path(rng, origin_punctured(), a.back(), 5, 0.4);
        const double la = qh_polyline_length(origin_punctured(), kL2, a, 1e-10);
        const double lb = qh_polyline_length(origin_punctured(), kL2, b, 1e-10);
        const double lab = qh_polyline_length(origin_punctured(), kL2, concat(a, b), 1e-10);
        CHECK(std::abs(lab - (la + lb)) <= 2e-10);
    }
}

TEST_CASE("mediant identity") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int k = 0; k < 1000; ++k) {
        const double a = u(rng), c = u(rng), d = u(rng);
        const double b = a / c * d;
        for (double t : {0.0, 0.25, 0.5, 1.0}) {
            const double m = (t * a + (1.0 - t) * b) / (t * c + (1.0 - t) * d);
            REQUIRE(m == doctest::Approx(a / c).epsilon(1e-14));
        }
    }
}

TEST_CASE("derivative of the average path") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double p : {1.0, 2.0, 3.0, kInf}) {
        const NormSpec spec = NormSpec::p_norm(2, p);
        for (int trial = 0; trial < 50; ++trial) {
            const Polyline g0 = arclength_reparameterize(spec, random_path(rng, box_polytope(), {0.0, 0.0}, 4, 0.5), 16);
            const Polyline g1 = arclength_reparameterize(spec, random_path(rng, box_polytope(), {0.0, 0.0}, 6, 0.5), 16);
            const double s = unit(rng);
            const Polyline gs = average_path(g0, g1, s);
            for (std::size_t i = 0; i + 1 < gs.size(); ++i) {
                const double lhs = spec(gs[i + 1] - gs[i]);
                REQUIRE(lhs <= s * spec(g1[i + 1] - g1[i]) + (1.0 - s) * spec(g0[i + 1] - g0[i]) + 1e-12);
            }
            // against the constant path the derivative scales exactly
            const Polyline x0 = Polyline::constant(g1.front(), g1.size());
            const Polyline star = average_path(x0, g1, s);
            for (std::size_t i = 0; i + 1 < star.size(); ++i) {
                REQUIRE(spec(star[i + 1] - star[i]) == doctest::Approx(s * spec(g1[i + 1] - g1[i])).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("averaged quasihyperbolic length bound on convex domains") {
    // Both paths are sampled at equal quasihyperbolic arclength so that their
    // speeds match, the setting in which the convex-combination bound holds.
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double tol = 1e-8;
    const Domain doms[] = {lower_half_plane(), box_polytope()};
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Domain& dom = doms[trial % 2];
        const NormSpec spec = NormSpec::p_norm(2, trial % 3 == 0 ? kInf : (trial % 3 == 1 ? 2.0 : 3.0));
        const Point start = trial % 2 == 0 ? Point{0.0, -1.0} : Point{0.3, -0.2};
        const Polyline a = random_path(rng, dom, start, 3, 0.6);
        const Polyline b = random_path(rng, dom, start, 3, 0.6);
        const Polyline g0 = qh_arclength_reparameterize(dom, spec, a, 256, 1e-11);
        const Polyline g1 = qh_arclength_reparameterize(dom, spec, b, 256, 1e-11);
        const double s = unit(rng);
        const Polyline gs = average_path(g0, g1, s);
        const double l0 = qh_polyline_length(dom, spec, g0, tol);
        const double l1 = qh_polyline_length(dom, spec, g1, tol);
        const double ls = qh_polyline_length(dom, spec, gs, tol);
        CHECK(ls <= s * l1 + (1.0 - s) * l0 + 2.0 * tol);
        ++checked;
    }
    CHECK(checked == 200);
}
