#include <catch2/catch_amalgamated.hpp>

#include <hn2/halfplane.hpp>

#include <cmath>
#include <random>

using namespace hn2;
using Catch::Matchers::WithinAbs;

TEST_CASE("cayley maps the upper half-plane into the unit disk") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(-50.0, 50.0);
    std::uniform_real_distribution<double> im(1e-6, 50.0);
    for (int i = 0; i < 2000; ++i) {
        const complex z(re(rng), im(rng));
        const complex w = cayley(z);
        REQUIRE(std::abs(w) < 1.0);
        const complex back = inverse_cayley(w);
        REQUIRE_THAT(back.real(), WithinAbs(z.real(), 1e-9 * (1.0 + std::abs(z))));
        REQUIRE_THAT(back.imag(), WithinAbs(z.imag(), 1e-9 * (1.0 + std::abs(z))));
    }
}

TEST_CASE("cayley fixed points and special values") {
    REQUIRE_THAT(std::abs(cayley(complex(0, 1))), WithinAbs(0.0, 1e-15));
    // Real axis lands on the circle when boundary points are allowed.
    const complex w0 = cayley(complex(0, 0), Boundary::allow);
    REQUIRE_THAT(std::abs(w0 + complex(1, 0)), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(std::abs(cayley(complex(3, 0), Boundary::allow)), WithinAbs(1.0, 1e-12));
}

TEST_CASE("cayley rejects points outside its domain") {
    REQUIRE_THROWS_AS(cayley(complex(0, -1)), std::domain_error);
    REQUIRE_THROWS_AS(cayley(complex(2, 0)), std::domain_error);
    REQUIRE_THROWS_AS(inverse_cayley(complex(1, 0), Boundary::allow), std::domain_error);
    REQUIRE_THROWS_AS(inverse_cayley(complex(0.5, 0.9)), std::domain_error);
}

TEST_CASE("torus_angle matches the boundary Cayley image") {
    // e^{i s(t)} = cayley(t) for real t; s is the inverse chart used by the
    // torus transport.
    for (double t : {-100.0, -3.0, -1.0, 0.0, 0.5, 2.0, 77.0}) {
        const double s = torus_angle(t);
        REQUIRE(s > 0.0);
        REQUIRE(s < 2.0 * pi);
        const complex w = cayley(complex(t, 0), Boundary::allow);
        REQUIRE_THAT(std::abs(w - std::polar(1.0, s)), WithinAbs(0.0, 1e-12));
        REQUIRE_THAT(torus_angle_inverse(s), WithinAbs(t, 1e-9 * (1.0 + std::abs(t))));
    }
    REQUIRE_THAT(torus_angle(0.0), WithinAbs(pi, 1e-15));
    REQUIRE_THROWS_AS(torus_angle_inverse(0.0), std::domain_error);
    REQUIRE_THROWS_AS(torus_angle_inverse(2.0 * pi), std::domain_error);
}

TEST_CASE("plane_weight") {
    REQUIRE_THAT(plane_weight(0, 0), WithinAbs(1.0, 0.0));
    REQUIRE_THAT(plane_weight(1, 2), WithinAbs(10.0, 1e-14));
    REQUIRE_THAT(plane_weight(-3, 3), WithinAbs(100.0, 1e-12));
}

TEST_CASE("StolzSchedule validation") {
    StolzSchedule s = StolzSchedule::standard();
    REQUIRE_NOTHROW(s.validate());
    REQUIRE(s.radii.size() == 41);
    REQUIRE_THAT(s.radii.back(), WithinAbs(std::pow(2.0, 40), 1.0));

    StolzSchedule bad = s;
    bad.theta = 0.0;
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.direction = 0.1;  // outside [theta, pi - theta] for theta = pi/4
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.radii = {1.0, 1.0};
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.radii.clear();
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("nontangential_limit recovers linear coefficients at infinity") {
    // f(z) = 3z + 2 + 5/z has ratio limit exactly 3.
    auto f = [](complex z) { return 3.0 * z + 2.0 + 5.0 / z; };
    const auto est = nontangential_limit(f, LimitMode::ratio_at_infinity,
                                         StolzSchedule::standard(), 1e-8);
    REQUIRE(est.converged);
    REQUIRE_FALSE(est.diverged);
    REQUIRE_THAT(std::abs(est.value - complex(3, 0)), WithinAbs(0.0, 1e-7));
}

TEST_CASE("nontangential_limit recovers residues at zero") {
    // z * (-c/z + bounded) -> -c as z -> 0.
    auto f = [](complex z) { return complex(0, 2) / z + std::cos(z); };
    const auto est = nontangential_limit(f, LimitMode::product_at_zero,
                                         StolzSchedule::standard(), 1e-8);
    REQUIRE(est.converged);
    REQUIRE_THAT(std::abs(est.value - complex(0, 2)), WithinAbs(0.0, 1e-7));
}

TEST_CASE("nontangential_limit flags divergence") {
    // f(z)/z = z grows without bound along the ray.
    auto f = [](complex z) { return z * z; };
    const auto est = nontangential_limit(f, LimitMode::ratio_at_infinity,
                                         StolzSchedule::standard(), 1e-8);
    REQUIRE(est.diverged);
    REQUIRE_FALSE(est.converged);
}

TEST_CASE("nontangential_limit respects the ray direction") {
    StolzSchedule tilted = StolzSchedule::standard();
    tilted.direction = pi / 3.0;
    // The constant term becomes a direction-dependent slope in the 1/r fit.
    auto f = [](complex z) { return complex(0, 1) * z + 5.0 + 1.0 / z; };
    const auto est = nontangential_limit(f, LimitMode::ratio_at_infinity, tilted, 1e-8);
    REQUIRE(est.converged);
    REQUIRE_THAT(std::abs(est.value - complex(0, 1)), WithinAbs(0.0, 1e-7));
}

TEST_CASE("fit_limit is exact on affine data") {
    std::vector<double> x{0.1, 0.2, 0.3, 0.4};
    std::vector<complex> g;
    for (double xi : x) g.push_back(complex(2.0, -1.0) + complex(0.5, 0.25) * xi);
    const complex L = detail::fit_limit(x, g, 0, x.size());
    REQUIRE_THAT(std::abs(L - complex(2.0, -1.0)), WithinAbs(0.0, 1e-13));
}
