#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

#include "support.hpp"

using namespace ballcollar;
using support::sample_ball;
using support::unit_uniform;

TEST_CASE("vector and matrix primitives", "[vec]") {
    Vec a{3.0, 4.0};
    REQUIRE(norm(a) == 5.0);
    REQUIRE(dot(a, Vec{1.0, 2.0}) == 11.0);
    REQUIRE(norm_sq(sub(a, a)) == 0.0);
    REQUIRE(add(scaled(a, 0.5), scaled(a, 0.5)) == a);
    REQUIRE(basis_vec(3, 1) == Vec{0.0, 1.0, 0.0});

    Mat id = Mat::identity(3);
    REQUIRE(id.apply(Vec{1.0, 2.0, 3.0}) == Vec{1.0, 2.0, 3.0});
    REQUIRE(id.orthogonality_residual() == 0.0);

    Mat refl = reflection_matrix(Vec{1.0, 1.0});
    REQUIRE(refl.orthogonality_residual() <= 1e-15);
    Vec image = refl.apply(Vec{1.0, 0.0});
    REQUIRE(std::abs(image[0]) <= 1e-15);
    REQUIRE(std::abs(image[1] + 1.0) <= 1e-15);
    // Transpose of an orthogonal matrix inverts it.
    Vec back = refl.apply_transpose(image);
    REQUIRE(std::abs(back[0] - 1.0) <= 1e-15);
    REQUIRE(std::abs(back[1]) <= 1e-15);
}

TEST_CASE("point classification", "[geometry]") {
    REQUIRE(Point::origin(2).is_interior());
    REQUIRE(Point(Vec{1.0, 0.0}).is_boundary());
    REQUIRE(Point(Vec{0.0, 1.0 + 5e-10}).is_boundary());
    REQUIRE(Point(Vec{0.0, 1.0 - 5e-10}).is_boundary());
    REQUIRE_THROWS_AS(Point(Vec{1.1, 0.0}), std::domain_error);
    REQUIRE_THROWS_AS(Point(Vec{0.5}), std::invalid_argument);

    Point b = Point::boundary(Vec{3.0, 4.0});
    REQUIRE(std::abs(b.norm() - 1.0) <= 1e-15);
    REQUIRE(std::abs(b.coords()[0] - 0.6) <= 1e-15);
    REQUIRE_THROWS_AS(Point::boundary(Vec{0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("hyperbolic distance", "[geometry]") {
    Point x(Vec{0.1, 0.0});
    Point y(Vec{0.2, 0.0});
    REQUIRE(std::abs(hyperbolic_distance(x, y) - 0.20479441264601325) <= 1e-16);

    SECTION("radial closed form") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 200; ++i) {
            double t = 0.999 * unit_uniform(rng);
            Point p(Vec{t, 0.0});
            double d = hyperbolic_distance(Point::origin(2), p);
            double closed = std::log1p(t) - std::log1p(-t);
            REQUIRE(std::abs(d - closed) <= 1e-12 * (1.0 + closed));
            REQUIRE(std::abs(radial_hyperbolic_distance(t) - closed) <= 1e-15 * (1.0 + closed));
        }
    }

    SECTION("metric axioms on random triples") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 500; ++i) {
            Point a(sample_ball(rng, 2, 0.95));
            Point b(sample_ball(rng, 2, 0.95));
            Point c(sample_ball(rng, 2, 0.95));
            double ab = hyperbolic_distance(a, b);
            double ba = hyperbolic_distance(b, a);
            REQUIRE(ab == ba);
            REQUIRE(ab >= 0.0);
            REQUIRE(hyperbolic_distance(a, c) <= ab + hyperbolic_distance(b, c) + 1e-12);
        }
    }

    SECTION("boundary points are rejected") {
        REQUIRE_THROWS_AS(hyperbolic_distance(Point(Vec{1.0, 0.0}), Point::origin(2)),
                          std::domain_error);
    }

    SECTION("dimension mismatch") {
        REQUIRE_THROWS_AS(hyperbolic_distance(Point::origin(2), Point::origin(3)),
                          std::invalid_argument);
    }
}

TEST_CASE("arcosh1p", "[geometry]") {
    REQUIRE(arcosh1p(0.0) == 0.0);
    for (double s : {0.5, 1.0, 4.0, 100.0})
        REQUIRE(std::abs(arcosh1p(s) - std::acosh(1.0 + s)) <= 1e-13 * std::acosh(1.0 + s));
    // Small arguments keep full precision where acosh(1 + s) has none.
    double tiny = 1e-18;
    REQUIRE(std::abs(arcosh1p(tiny) - std::sqrt(2.0 * tiny)) <= 1e-12 * std::sqrt(2.0 * tiny));
    REQUIRE_THROWS_AS(arcosh1p(-1e-9), std::domain_error);
}

TEST_CASE("radial distance domain", "[geometry]") {
    REQUIRE(radial_hyperbolic_distance(0.0) == 0.0);
    REQUIRE(radial_hyperbolic_distance(0.5) < radial_hyperbolic_distance(0.6));
    REQUIRE_THROWS_AS(radial_hyperbolic_distance(-0.1), std::domain_error);
    REQUIRE_THROWS_AS(radial_hyperbolic_distance(1.0), std::domain_error);
}

TEST_CASE("inversion sphere construction", "[geometry]") {
    InversionSphere s = make_boundary_orthogonal_sphere({1.2, 0.0});
    REQUIRE(s.boundary_orthogonal);
    REQUIRE(std::abs(s.radius - std::sqrt(0.44)) <= 1e-15);
    REQUIRE(std::abs(norm_sq(s.center) - 1.0 - s.radius * s.radius) <= 1e-15);

    REQUIRE_THROWS_AS(make_boundary_orthogonal_sphere({0.9, 0.0}), std::domain_error);
    REQUIRE_THROWS_AS(InversionSphere({1.2, 0.0}, -0.5, false), std::domain_error);
    // Claimed orthogonality is checked against the center norm.
    REQUIRE_THROWS_AS(InversionSphere({1.2, 0.0}, 0.5, true), std::domain_error);
    REQUIRE_NOTHROW(InversionSphere({1.2, 0.0}, 0.5, false));
}

TEST_CASE("reflection identities", "[geometry]") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 2000; ++i) {
        double angle = 6.283185307179586 * unit_uniform(rng);
        double cn = 1.05 + 2.0 * unit_uniform(rng);
        InversionSphere s =
            make_boundary_orthogonal_sphere({cn * std::cos(angle), cn * std::sin(angle)});
        Vec x = sample_ball(rng, 2, 1.8);
        Vec y = sample_ball(rng, 2, 1.8);
        if (norm(sub(x, s.center)) < 0.05 || norm(sub(y, s.center)) < 0.05) continue;

        Vec xx = reflect_in_sphere(s, reflect_in_sphere(s, x));
        REQUIRE(norm(sub(xx, x)) <= 1e-9 * (1.0 + norm(x)));

        double ratio = reflection_distance_ratio(s, x, y);
        double lhs = euclidean_distance(reflect_in_sphere(s, x), reflect_in_sphere(s, y));
        double rhs = ratio * euclidean_distance(x, y);
        REQUIRE(std::abs(lhs - rhs) <= 1e-9 * (1.0 + rhs));
    }

    InversionSphere s = make_boundary_orthogonal_sphere({1.2, 0.0});
    SECTION("sphere points are fixed") {
        Vec on{1.2 - s.radius, 0.0};
        REQUIRE(norm(sub(reflect_in_sphere(s, on), on)) <= 1e-15);
    }
    SECTION("center is excluded") {
        REQUIRE_THROWS_AS(reflect_in_sphere(s, s.center), std::domain_error);
    }
    SECTION("unit sphere is preserved") {
        std::mt19937_64 rng2(5);
        for (int i = 0; i < 200; ++i) {
            double a = 6.283185307179586 * unit_uniform(rng2);
            Vec u{std::cos(a), std::sin(a)};
            REQUIRE(std::abs(norm(reflect_in_sphere(s, u)) - 1.0) <= 1e-12);
        }
    }
    SECTION("hyperbolic distance is invariant") {
        std::mt19937_64 rng2(9);
        for (int i = 0; i < 200; ++i) {
            Point x(sample_ball(rng2, 2, 0.9));
            Point y(sample_ball(rng2, 2, 0.9));
            Point ix(reflect_in_sphere(s, x.coords()));
            Point iy(reflect_in_sphere(s, y.coords()));
            double d = hyperbolic_distance(x, y);
            REQUIRE(std::abs(hyperbolic_distance(ix, iy) - d) <= 1e-11 * (1.0 + d));
        }
    }
}

TEST_CASE("halfspace distance", "[geometry]") {
    InversionSphere s = make_boundary_orthogonal_sphere({61.0 / 60.0, 0.0});
    double edge = 61.0 / 60.0 - s.radius;  // axis crossing of the disk

    SECTION("axis points match the geodesic to the crossing") {
        for (double t : {0.0, 0.3, 0.6, 0.8}) {
            double d = hyperbolic_distance_to_halfspace(s, Point(Vec{t, 0.0}));
            double expect = radial_hyperbolic_distance(edge) - radial_hyperbolic_distance(t);
            REQUIRE(std::abs(d - expect) <= 1e-12 * (1.0 + expect));
        }
    }
    SECTION("interior of the disk gives zero") {
        REQUIRE(hyperbolic_distance_to_halfspace(s, Point(Vec{edge + 0.01, 0.0})) == 0.0);
        REQUIRE(hyperbolic_distance_to_halfspace(s, Point(Vec{0.99, 0.0})) == 0.0);
    }
    SECTION("requires an orthogonal disk and an interior point") {
        InversionSphere plain({1.2, 0.0}, 0.5, false);
        REQUIRE_THROWS_AS(hyperbolic_distance_to_halfspace(plain, Point::origin(2)),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(hyperbolic_distance_to_halfspace(s, Point(Vec{1.0, 0.0})),
                          std::domain_error);
    }
}
