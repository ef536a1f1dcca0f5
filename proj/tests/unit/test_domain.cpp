#include "doctest.h"

#include "qhgeo/domain.hpp"

#include <cmath>
#include <random>

using namespace qhgeo;

namespace {

Domain lower_half_plane() { return Domain::half_space({0.0, 1.0}, 0.0); }

Domain unit_square_polytope() {
    return Domain::polytope({{{1.0, 0.0}, -1.0}, {{-1.0, 0.0}, -1.0}, {{0.0, 1.0}, -1.0}, {{0.0, -1.0}, -1.0}});
}

Domain triangle() { return Domain::polytope({{{0.0, -1.0}, 0.0}, {{-1.0, 0.0}, 0.0}, {{1.0, 1.0}, -3.0}}); }

Domain l_shape() { return Domain::notched_box({0.0, 0.0}, {2.0, 2.0}, {1.0, 1.0}, {2.0, 2.0}); }

Point random_in(const Domain& dom, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    while (true) {
        Point x{u(rng), u(rng)};
        if (contains(dom, x)) return x;
    }
}

}  // namespace

TEST_CASE("contains examples") {
    const Domain punct = Domain::punctured({{0.0, 0.0}});
    CHECK(contains(punct, {1.0, 0.0}));
    CHECK_FALSE(contains(punct, {0.0, 0.0}));
    CHECK_FALSE(contains(lower_half_plane(), {0.0, 0.0}));
    CHECK(contains(lower_half_plane(), {0.0, -1e-300}));
    CHECK_THROWS_AS(contains(punct, {1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK(contains(l_shape(), {0.5, 1.5}));
    CHECK_FALSE(contains(l_shape(), {1.5, 1.5}));
    CHECK_FALSE(contains(l_shape(), {1.0, 1.5}));
}

TEST_CASE("domain construction validates invariants") {
    CHECK_THROWS_AS(Domain::punctured({}), std::invalid_argument);
    CHECK_THROWS_AS(Domain::punctured({{0.0, 0.0}, {0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Domain::half_space({0.0, 0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Domain::polytope({}), std::invalid_argument);
    // x < 0 and x > 1 cannot hold together
    CHECK_THROWS_AS(Domain::polytope({{{1.0, 0.0}, 0.0}, {{-1.0, 0.0}, 1.0}}), std::invalid_argument);
    // degenerate slab 0 < x < 0
    CHECK_THROWS_AS(Domain::polytope({{{1.0, 0.0}, 0.0}, {{-1.0, 0.0}, 0.0}}), std::invalid_argument);
    const Domain slab = Domain::polytope({{{1.0, 0.0}, -1.0}, {{-1.0, 0.0}, -1.0}});
    CHECK(contains(slab, slab.as<ConvexPolytope>()->interior_point));
    CHECK(contains(triangle(), triangle().as<ConvexPolytope>()->interior_point));
}

TEST_CASE("boundary distance examples") {
    const NormSpec l2 = NormSpec::p_norm(2, 2.0);
    const NormSpec linf = NormSpec::p_norm(2, kInf);
    CHECK(boundary_distance(Domain::punctured({{0.0, 0.0}}), l2, {3.0, 4.0}) == 5.0);
    CHECK(boundary_distance(lower_half_plane(), linf, {0.0, -1.0}) == 1.0);
    CHECK(boundary_distance(lower_half_plane(), l2, {0.0, -2.0}) == 2.0);
    CHECK_THROWS_AS(boundary_distance(lower_half_plane(), l2, {0.0, 1.0}), std::domain_error);
    // nearest complement point of the L-shape is the notch corner (1,1)
    CHECK(boundary_distance(l_shape(), l2, {0.7, 0.6}) == doctest::Approx(0.5));
    CHECK(boundary_distance(l_shape(), l2, {0.9, 0.9}) == doctest::Approx(std::sqrt(0.02)));
    CHECK(boundary_distance(l_shape(), linf, {0.9, 0.9}) == doctest::Approx(0.1));
}

TEST_CASE("half-space distance matches brute-force boundary sampling") {
    // minimize ||x - y|| over a dense grid of the boundary line a.y + b = 0
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double p : {1.0, 2.0, 3.0, kInf}) {
        const NormSpec spec = NormSpec::weighted({1.0, 1.7}, p);
        for (int trial = 0; trial < 5; ++trial) {
            const Point a{u(rng), u(rng)};
            const double b = u(rng);
            const Domain dom = Domain::half_space(a, b);
            Point x{3.0 * u(rng), 3.0 * u(rng)};
            if (!contains(dom, x)) x = x - 2.0 * ((dot(a, x) + b) / dot(a, a)) * a;
            if (!contains(dom, x)) continue;
            // parameterize the line by y = y0 + s * tangent
            const Point tangent{-a[1], a[0]};
            const Point y0 = (-b / dot(a, a)) * a;
            const double s0 = dot(x - y0, tangent) / dot(tangent, tangent);
            // coarse sweep, then a fine sweep around the coarse winner
            double best = kInf;
            double best_s = s0;
            const int n = 100000;
            for (int i = 0; i <= n; ++i) {
                const double s = s0 + 40.0 * (static_cast<double>(i) / n - 0.5);
                const double v = spec(x - (y0 + s * tangent));
                if (v < best) {
                    best = v;
                    best_s = s;
                }
            }
            const double width = 2.0 * 40.0 / n;
            for (int i = 0; i <= n; ++i) {
                const double s = best_s + width * (static_cast<double>(i) / n - 0.5);
                best = std::min(best, spec(x - (y0 + s * tangent)));
            }
            CHECK(boundary_distance(dom, spec, x) == doctest::Approx(best).epsilon(1e-6));
            CHECK(boundary_distance(dom, spec, x) <= best + 1e-12);
        }
    }
}

TEST_CASE("segment clearance examples") {
    const NormSpec l2 = NormSpec::p_norm(2, 2.0);
    const NormSpec linf = NormSpec::p_norm(2, kInf);
    auto c1 = min_boundary_distance_on_segment(lower_half_plane(), linf, {-1.0, -2.0}, {0.0, -3.0});
    CHECK(c1.min_distance == 2.0);
    CHECK(c1.argmin_parameter == 0.0);
    const Domain punct = Domain::punctured({{0.0, 0.0}});
    auto c2 = min_boundary_distance_on_segment(punct, l2, {1.0, -1.0}, {1.0, 1.0});
    CHECK(c2.min_distance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c2.argmin_parameter == doctest::Approx(0.5).epsilon(1e-6));
    auto c3 = min_boundary_distance_on_segment(punct, l2, {1.0, 0.0}, {2.0, 0.0});
    CHECK(c3.min_distance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c3.argmin_parameter <= 1e-6);
    // through the puncture
    auto c4 = min_boundary_distance_on_segment(punct, l2, {-1.0, 0.0}, {1.0, 0.0});
    CHECK(c4.min_distance == 0.0);
    CHECK(c4.argmin_parameter == doctest::Approx(0.5).epsilon(1e-6));
    // across the notch of the L-shape
    auto c5 = min_boundary_distance_on_segment(l_shape(), l2, {1.5, 0.5}, {0.5, 1.5});
    CHECK(c5.min_distance == doctest::Approx(0.0));
    auto c6 = min_boundary_distance_on_segment(l_shape(), l2, {1.5, 0.5}, {0.5, 0.5});
    CHECK(c6.min_distance == doctest::Approx(0.5));
}

TEST_CASE("segment clearance agrees with dense sampling") {
    std::mt19937_64 rng(5);
    const NormSpec spec = NormSpec::p_norm(2, 3.0);
    const Domain doms[] = {Domain::punctured({{0.0, 0.0}, {1.0, 1.0}}), unit_square_polytope(), l_shape()};
    for (const Domain& dom : doms) {
        for (int trial = 0; trial < 50; ++trial) {
            const Point p = random_in(dom, rng, -1.0, 2.0);
            const Point q = random_in(dom, rng, -1.0, 2.0);
            const auto c = min_boundary_distance_on_segment(dom, spec, p, q);
            double best = kInf;
            for (int i = 0; i <= 20000; ++i) {
                best = std::min(best, boundary_distance_unchecked(dom, spec, lerp(p, q, i / 20000.0)));
            }
            CHECK(c.min_distance <= best + 1e-12);
            CHECK(c.min_distance >= best - 1e-6);
        }
    }
}

TEST_CASE("boundary distance is 1-Lipschitz") {
    std::mt19937_64 rng(1);
    const Domain doms[] = {Domain::punctured({{0.0, 0.0}, {2.0, 1.0}}), lower_half_plane(), unit_square_polytope(),
                           triangle(), l_shape()};
    for (double p : {1.0, 2.0, 3.0, kInf}) {
        const NormSpec spec = NormSpec::p_norm(2, p);
        for (const Domain& dom : doms) {
            for (int k = 0; k < 10000; ++k) {
                const Point x = random_in(dom, rng, -2.0, 3.0);
                const Point y = random_in(dom, rng, -2.0, 3.0);
                REQUIRE(std::abs(boundary_distance(dom, spec, x) - boundary_distance(dom, spec, y)) <=
                        spec(x - y) + 1e-12);
            }
        }
    }
}

TEST_CASE("boundary distance is concave on convex domains") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Domain doms[] = {lower_half_plane(), unit_square_polytope(), triangle()};
    for (double p : {1.0, 2.0, kInf}) {
        const NormSpec spec = NormSpec::p_norm(2, p);
        for (const Domain& dom : doms) {
            for (int k = 0; k < 10000; ++k) {
                const Point u = random_in(dom, rng, -2.0, 3.0);
                const Point v = random_in(dom, rng, -2.0, 3.0);
                const double s = unit(rng);
                const double lhs = boundary_distance(dom, spec, s * u + (1.0 - s) * v);
                REQUIRE(lhs >= s * boundary_distance(dom, spec, u) + (1.0 - s) * boundary_distance(dom, spec, v) - 1e-12);
            }
        }
    }
}

TEST_CASE("starlike scaling bound d(s x + (1-s) x0) >= s d(x)") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const NormSpec spec = NormSpec::p_norm(2, 2.0);
    struct Case {
        Domain dom;
        Point center;
    };
    const Case cases[] = {{unit_square_polytope(), {0.2, -0.3}}, {triangle(), {0.5, 0.5}}, {l_shape(), {0.6, 0.7}}};
    for (const Case& c : cases) {
        for (int k = 0; k < 10000; ++k) {
            const Point x = random_in(c.dom, rng, -1.0, 3.0);
            const double s = unit(rng);
            REQUIRE(boundary_distance(c.dom, spec, s * x + (1.0 - s) * c.center) >=
                    s * boundary_distance(c.dom, spec, x) - 1e-12);
        }
    }
    // punctured plane guarded by segment clearance: only segments that keep
    // away from the punctures are tested
    const Domain punct = Domain::punctured({{0.0, 0.0}});
    const Point x0{1.0, 0.5};
    for (int k = 0; k < 10000; ++k) {
        const Point x = random_in(punct, rng, -3.0, 3.0);
        if (min_boundary_distance_on_segment(punct, spec, x0, x).min_distance <= 0.0) continue;
        const double s = unit(rng);
        const double lhs = boundary_distance(punct, spec, s * x + (1.0 - s) * x0);
        const Point ray_dir = x - x0;
        // the bound holds whenever the puncture lies behind x0 along the ray
        if (dot(ray_dir, Point{0.0, 0.0} - x0) <= 0.0) REQUIRE(lhs >= s * boundary_distance(punct, spec, x) - 1e-12);
    }
}
