#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

#include "support.hpp"

using namespace ballcollar;
using support::apply_word_raw;
using support::make_gstar;
using support::sample_ball;

TEST_CASE("word bookkeeping", "[isometry]") {
    REQUIRE(Word().str() == "e");
    REQUIRE(Word().is_reduced());
    REQUIRE_THROWS_AS(Word({1, 0, 2}), std::invalid_argument);

    Word w({1, 2, -1});
    REQUIRE(w.str() == "abA");
    REQUIRE(w.is_reduced());
    REQUIRE(w.size() == 3);
    REQUIRE(w.leading_letter() == 1);
    REQUIRE(w.inverse().str() == "aBA");
    REQUIRE(w.inverse().inverse() == w);
    REQUIRE(w.appended(2).str() == "abAb");
    REQUIRE(w.concat(w.inverse()).freely_reduced() == Word());
    REQUIRE_FALSE(Word({1, -1}).is_reduced());
    REQUIRE(Word({1, -1}).freely_reduced().empty());
    REQUIRE(Word({2, 2, 1}).str() == "bba");

    // Beyond one alphabet the rendering falls back to dotted numeric tokens.
    REQUIRE(Word({27}).str() == "g27");
    REQUIRE(Word({1, -27}).str() == "g1.g-27");
}

TEST_CASE("factor list validation", "[isometry]") {
    REQUIRE_THROWS_AS(FactorList(1), std::invalid_argument);

    FactorList fs(2);
    REQUIRE_NOTHROW(fs.push_back(make_boundary_orthogonal_sphere({1.2, 0.0})));
    REQUIRE_NOTHROW(fs.push_back(reflection_matrix(Vec{0.0, 1.0})));
    REQUIRE(fs.factors().size() == 2);

    REQUIRE_THROWS_AS(fs.push_back(make_boundary_orthogonal_sphere({1.2, 0.0, 0.0})),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(fs.push_back(InversionSphere({1.5, 0.0}, 0.4, false)),
                      std::domain_error);
    Mat skew = Mat::identity(2);
    skew.scale(2.0);
    REQUIRE_THROWS_AS(fs.push_back(skew), std::domain_error);
}

TEST_CASE("identity isometry", "[isometry]") {
    Isometry id = Isometry::identity(2);
    REQUIRE(id.is_rotation_only());
    REQUIRE(id.word().empty());
    REQUIRE(id.apply(Vec{0.3, -0.2}) == Vec{0.3, -0.2});
    REQUIRE_THROWS_AS(id.isometric_sphere(), std::domain_error);

    // An empty factor list canonicalizes to the identity.
    Isometry empty = Isometry::from_factors(FactorList(2));
    REQUIRE(empty.is_rotation_only());
    REQUIRE(norm(sub(empty.apply(Vec{0.5, 0.1}), Vec{0.5, 0.1})) <= 1e-15);
}

TEST_CASE("generator canonical form", "[isometry]") {
    SchottkyGroup g = make_gstar();
    Isometry a = g.generator(1);

    // gamma = A . i_S with the sphere strictly inside the source disk:
    // center (61/60, 0), radius 11/60, and A the reflection across the y-axis.
    REQUIRE(a.word().str() == "a");
    REQUIRE_FALSE(a.is_rotation_only());
    const InversionSphere& s = a.isometric_sphere();
    REQUIRE(std::abs(s.center[0] - 61.0 / 60.0) <= 1e-14);
    REQUIRE(std::abs(s.center[1]) <= 1e-14);
    REQUIRE(std::abs(s.radius - 11.0 / 60.0) <= 1e-14);
    REQUIRE(s.boundary_orthogonal);
    REQUIRE(std::abs(a.rotation()(0, 0) + 1.0) <= 1e-14);
    REQUIRE(std::abs(a.rotation()(1, 1) - 1.0) <= 1e-14);
    REQUIRE(std::abs(a.rotation()(0, 1)) <= 1e-14);

    Vec o0 = a.apply(zero_vec(2));
    REQUIRE(std::abs(o0[0] + 60.0 / 61.0) <= 1e-14);
    REQUIRE(std::abs(o0[1]) <= 1e-14);
    REQUIRE(std::abs(norm(o0) - orbit_norm_from_radius(s.radius)) <= 1e-13);

    auto [rot, inv] = a.canonical_parts();
    REQUIRE(rot == &a.rotation());
    REQUIRE(inv == &s);
}

TEST_CASE("single inversion canonicalizes to itself", "[isometry]") {
    InversionSphere s = make_boundary_orthogonal_sphere({0.3, 1.4});
    FactorList fs(2);
    fs.push_back(s);
    Isometry el = Isometry::from_factors(fs);
    REQUIRE_FALSE(el.is_rotation_only());
    REQUIRE(norm(sub(el.isometric_sphere().center, s.center)) <= 1e-13);
    REQUIRE(std::abs(el.isometric_sphere().radius - s.radius) <= 1e-13);
    REQUIRE(el.rotation().orthogonality_residual() <= 1e-13);
    REQUIRE(std::abs(el.rotation()(0, 0) - 1.0) <= 1e-12);
    REQUIRE(std::abs(el.rotation()(0, 1)) <= 1e-12);
}

TEST_CASE("rotation-only factors", "[isometry]") {
    FactorList fs(2);
    fs.push_back(reflection_matrix(Vec{1.0, 1.0}));
    Isometry el = Isometry::from_factors(fs);
    REQUIRE(el.is_rotation_only());
    Vec im = el.apply(Vec{0.4, 0.0});
    REQUIRE(std::abs(im[0]) <= 1e-15);
    REQUIRE(std::abs(im[1] + 0.4) <= 1e-15);
    REQUIRE_THROWS_AS(el.isometric_sphere(), std::domain_error);
}

TEST_CASE("composition and inverses", "[isometry]") {
    SchottkyGroup g = make_gstar();
    Isometry a = g.generator(1);
    Isometry b = g.generator(2);

    SECTION("word concatenation") {
        REQUIRE(compose(a, b).word().str() == "ab");
        REQUIRE(compose(a, a.inverse()).word().empty());
        REQUIRE(a.inverse().word().str() == "A");
    }

    SECTION("inverse cancels pointwise") {
        Isometry ab = compose(a, b);
        Isometry back = compose(ab.inverse(), ab);
        REQUIRE(back.is_rotation_only());
        std::mt19937_64 rng(3);
        for (int i = 0; i < 50; ++i) {
            Vec x = sample_ball(rng, 2, 0.9);
            REQUIRE(norm(sub(back.apply(x), x)) <= 1e-12);
            // The forward image lands deep in a pairing disk, so undoing it
            // amplifies stored rounding by the inverse derivative.
            REQUIRE(norm(sub(ab.apply_inverse(ab.apply(x)), x)) <= 1e-10);
        }
    }

    SECTION("associativity") {
        Isometry left = compose(compose(a, b), a.inverse());
        Isometry right = compose(a, compose(b, a.inverse()));
        REQUIRE(left.word() == right.word());
        std::mt19937_64 rng(17);
        for (int i = 0; i < 50; ++i) {
            Vec x = sample_ball(rng, 2, 0.9);
            REQUIRE(norm(sub(left.apply(x), right.apply(x))) <= 1e-12);
        }
    }

    SECTION("composition applies the inner factor first") {
        Vec x{0.25, -0.1};
        REQUIRE(norm(sub(compose(a, b).apply(x), a.apply(b.apply(x)))) <= 1e-13);
    }

    REQUIRE_THROWS_AS(compose(a, Isometry::identity(3)), std::invalid_argument);
}

TEST_CASE("canonical invariants on short words", "[isometry]") {
    SchottkyGroup g = make_gstar();
    std::mt19937_64 rng(31);
    std::vector<Vec> probes;
    for (int i = 0; i < 10; ++i) probes.push_back(sample_ball(rng, 2, 0.6));

    for (const auto& el : enumerate_elements(g, 3)) {
        if (el.word().empty()) continue;
        const InversionSphere& s = el.isometric_sphere();
        REQUIRE(std::abs(norm_sq(s.center) - 1.0 - s.radius * s.radius) <= 1e-9);
        REQUIRE(el.rotation().orthogonality_residual() <= 1e-9);
        for (const Vec& x : probes) {
            Vec via_canonical = el.apply(x);
            Vec via_factors = apply_word_raw(g, el.word(), x);
            REQUIRE(norm(sub(via_canonical, via_factors)) <= 1e-9);
        }
    }
}

TEST_CASE("ball action on points", "[isometry]") {
    SchottkyGroup g = make_gstar();
    Isometry a = g.generator(1);

    Point boundary = a.apply(Point(Vec{0.0, 1.0}));
    REQUIRE(boundary.is_boundary());
    REQUIRE(std::abs(boundary.norm() - 1.0) <= 1e-15);

    Point interior = a.apply(Point(Vec{0.2, 0.1}));
    REQUIRE(interior.is_interior());
}

TEST_CASE("orbit norm from radius", "[isometry]") {
    REQUIRE(std::abs(orbit_norm_from_radius(0.5) - 2.0 / std::sqrt(5.0)) <= 1e-16);
    // 1/sqrt(1 + r^2) stays representably below 1 down to r ~ 1e-7.
    REQUIRE(orbit_norm_from_radius(1e-7) < 1.0);
    REQUIRE(orbit_norm_from_radius(0.2) > orbit_norm_from_radius(0.3));
    REQUIRE_THROWS_AS(orbit_norm_from_radius(0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(orbit_norm_from_radius(-1.0), std::invalid_argument);
}
