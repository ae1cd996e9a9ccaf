#include <catch2/catch_amalgamated.hpp>

#include <hn2/halfplane.hpp>
#include <hn2/quadrature.hpp>

#include <cmath>

using namespace hn2;
using Catch::Matchers::WithinAbs;

namespace {
const QuadratureConfig tight{};
const Interval whole_line{};
}  // namespace

TEST_CASE("integrate_finite on polynomials is near machine precision") {
    auto out = integrate_finite([](double s) { return complex(s * s * s - 2.0 * s, 0); },
                                -1.0, 3.0, {}, tight);
    REQUIRE(out.converged);
    REQUIRE_THAT(out.value.real(), WithinAbs(12.0, 1e-12));
    REQUIRE_THAT(out.value.imag(), WithinAbs(0.0, 1e-14));
}

TEST_CASE("integrate_real_line handles the whole line") {
    // Integral of 1/(1+t^2) over the line is pi.
    auto out = integrate_real_line([](double t) { return complex(1.0 / (1.0 + t * t), 0); },
                                   whole_line, {}, tight);
    REQUIRE(out.converged);
    REQUIRE_THAT(out.value.real(), WithinAbs(pi, 1e-10));

    // Gaussian: integral of exp(-t^2) is sqrt(pi).
    out = integrate_real_line([](double t) { return complex(std::exp(-t * t), 0); },
                              whole_line, {}, tight);
    REQUIRE(out.converged);
    REQUIRE_THAT(out.value.real(), WithinAbs(std::sqrt(pi), 1e-10));
}

TEST_CASE("integrate_real_line handles half-infinite supports with endpoint singularities") {
    // Integral over (-inf, 0] of sqrt(-t)/(1+t^2)^2 dt equals
    // integral over [0, inf) of sqrt(u)/(1+u^2)^2 du = pi/(4*sqrt(2))
    // (beta function with s = 3/2).
    const Interval neg{-std::numeric_limits<double>::infinity(), 0.0};
    auto out = integrate_real_line(
        [](double t) {
            const double w = 1.0 + t * t;
            return complex(std::sqrt(-t) / (w * w), 0);
        },
        neg, {}, tight);
    REQUIRE(out.converged);
    REQUIRE_THAT(out.value.real(), WithinAbs(pi / (4.0 * std::sqrt(2.0)), 1e-8));
}

TEST_CASE("hints accelerate sharply peaked integrands") {
    // Lorentzian of width 1e-3 at t = 17; total mass is pi regardless of width.
    const double c = 17.0, w = 1e-3;
    auto f = [c, w](double t) {
        const double d = t - c;
        return complex(w / (d * d + w * w), 0);
    };
    auto hinted = integrate_real_line(f, whole_line, {{c, w}}, tight);
    REQUIRE(hinted.converged);
    REQUIRE_THAT(hinted.value.real(), WithinAbs(pi, 1e-8));
}

TEST_CASE("complex integrands integrate componentwise") {
    auto out = integrate_finite(
        [](double s) { return std::polar(1.0, s); }, 0.0, pi / 2.0, {}, tight);
    REQUIRE(out.converged);
    REQUIRE_THAT(out.value.real(), WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(out.value.imag(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("integrate_plane_rect separable sanity") {
    // Product Gaussian over the plane: pi.
    auto out = integrate_plane_rect(
        [](double t1, double t2) { return complex(std::exp(-t1 * t1 - t2 * t2), 0); },
        whole_line, whole_line, {}, {}, QuadratureConfig{1e-8, 1e-6, 24, 72, 60000});
    REQUIRE(out.converged);
    REQUIRE_THAT(out.value.real(), WithinAbs(pi, 1e-6));
}

TEST_CASE("integrate_plane_rect respects rectangular supports") {
    const Interval a{0.0, 1.0}, b{0.0, 2.0};
    auto out = integrate_plane_rect(
        [](double t1, double t2) { return complex(t1 * t2, 0); }, a, b, {}, {}, tight);
    REQUIRE(out.converged);
    REQUIRE_THAT(out.value.real(), WithinAbs(1.0, 1e-10));
}

TEST_CASE("reported error bounds the true error on a smooth case") {
    auto out = integrate_real_line(
        [](double t) { return complex(1.0 / ((1.0 + t * t) * (1.0 + t * t)), 0); },
        whole_line, {}, tight);
    REQUIRE(out.converged);
    const double truth = pi / 2.0;
    REQUIRE(std::abs(out.value.real() - truth) <= std::max(out.error, 1e-12) * 10.0);
}

TEST_CASE("empty supports integrate to zero") {
    const Interval empty{2.0, 1.0};
    auto out = integrate_real_line([](double) { return complex(1, 0); }, empty, {}, tight);
    REQUIRE(out.value == complex(0, 0));
    REQUIRE(out.evals == 0);
}

TEST_CASE("QuadOutcome accumulation") {
    QuadOutcome a{complex(1, 2), 0.5, true, 10};
    QuadOutcome b{complex(3, -1), 0.25, false, 7};
    a += b;
    REQUIRE(a.value == complex(4, 1));
    REQUIRE_THAT(a.error, WithinAbs(0.75, 1e-15));
    REQUIRE_FALSE(a.converged);
    REQUIRE(a.evals == 17);
}
