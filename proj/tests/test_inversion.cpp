#include <catch2/catch_amalgamated.hpp>

#include <hn2/inversion.hpp>
#include <hn2/representation.hpp>

#include <cmath>
#include <random>

using namespace hn2;
using Catch::Matchers::WithinAbs;

namespace {

// q(z) = -1/z2, whose measure pairs the canonical weight to exactly
// F(y) = pi^2 / (1 + y), hence pi^2 in the limit.
complex q_reciprocal(complex, complex z2) { return -1.0 / z2; }

InversionOptions fast_options() {
    InversionOptions opt;
    opt.quad.abs_tol = 1e-8;
    opt.quad.rel_tol = 1e-7;
    return opt;
}

}  // namespace

TEST_CASE("test function registry") {
    REQUIRE_NOTHROW(make_test_function("canonical"));
    REQUIRE_NOTHROW(make_test_function("gaussian", {0.0, 0.0, 2.0}));
    REQUIRE_NOTHROW(make_test_function("rational_bump", {1.0, -1.0, 0.5, 0.5}));
    REQUIRE_THROWS_AS(make_test_function("nope"), std::invalid_argument);
    REQUIRE_THROWS_AS(make_test_function("gaussian", {0.0, 0.0, -1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(make_test_function("canonical", {1.0}), std::invalid_argument);

    // Support windows gate the evaluation.
    TestFunction psi = make_test_function("canonical");
    psi.support1 = Interval{0.0, 1.0};
    REQUIRE(psi(2.0, 0.0) == 0.0);
    REQUIRE(psi(0.5, 0.0) > 0.0);
}

TEST_CASE("verify_test_function rejects functions without decay") {
    TestFunction bad;
    bad.name = "flat";
    bad.f = [](double, double) { return 1.0; };
    REQUIRE_THROWS_AS(verify_test_function(bad), std::invalid_argument);

    const double bound = verify_test_function(make_test_function("canonical"));
    REQUIRE(bound <= 1.0 + 1e-12);
}

TEST_CASE("neville extrapolation is exact on polynomials") {
    std::vector<double> ys{0.5, 0.25, 0.125, 0.0625};
    std::vector<double> fs;
    for (double y : ys) fs.push_back(7.0 - 3.0 * y + 2.0 * y * y);
    REQUIRE_THAT(detail::neville_at_zero(ys, fs, 0, ys.size()), WithinAbs(7.0, 1e-12));
}

TEST_CASE("canonical pairing of the reciprocal function") {
    // Frozen: F(y) = pi^2/(1+y) -> pi^2.
    const auto res = stieltjes_functional(q_reciprocal, make_test_function("canonical"),
                                          PlaneHints{}, fast_options());
    REQUIRE(res.converged);
    REQUIRE_THAT(res.value, WithinAbs(pi * pi, 0.01 * pi * pi));
    REQUIRE(res.instability < 1e-3);

    // The ladder itself matches the closed form at positive heights.
    for (const auto& s : res.trace)
        REQUIRE_THAT(s.value, WithinAbs(pi * pi / (1.0 + s.y), 1e-4));
}

TEST_CASE("inversion is linear in the function argument") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coef(0.2, 2.0);
    const TestFunction psi = make_test_function("rational_bump", {0.0, 0.0, 1.0, 1.0});
    const InversionOptions opt = fast_options();

    auto qa = [](complex z1, complex z2) { return -1.0 / z2 - 0.5 / z1; };
    auto qb = [](complex z1, complex z2) { return -1.0 / (z1 + z2); };

    for (int trial = 0; trial < 2; ++trial) {
        const double alpha = coef(rng), beta = coef(rng);
        auto combo = [&](complex z1, complex z2) {
            return alpha * qa(z1, z2) + beta * qb(z1, z2);
        };
        const auto ra = stieltjes_functional(qa, psi, PlaneHints{}, opt);
        const auto rb = stieltjes_functional(qb, psi, PlaneHints{}, opt);
        const auto rc = stieltjes_functional(combo, psi, PlaneHints{}, opt);
        REQUIRE_THAT(rc.value, WithinAbs(alpha * ra.value + beta * rb.value, 1e-6 * (1.0 + std::abs(rc.value))));
    }
}

TEST_CASE("pairings of nonnegative test functions are nonnegative") {
    const InversionOptions opt = fast_options();
    for (const char* name : {"canonical", "gaussian", "rational_bump"}) {
        const auto res = stieltjes_functional(q_reciprocal, make_test_function(name),
                                              PlaneHints{}, opt);
        REQUIRE(res.value >= -1e-8);
    }
}

TEST_CASE("option validation") {
    const TestFunction psi = make_test_function("canonical");
    InversionOptions opt;
    opt.k_max = 0;
    REQUIRE_THROWS_AS(stieltjes_functional(q_reciprocal, psi, PlaneHints{}, opt),
                      std::invalid_argument);
    opt = InversionOptions{};
    opt.extrap_points = 1;
    REQUIRE_THROWS_AS(stieltjes_functional(q_reciprocal, psi, PlaneHints{}, opt),
                      std::invalid_argument);
}

TEST_CASE("instability reports the extrapolation uncertainty") {
    // With early_stop off the result keeps refining; the trace covers the
    // full ladder and the final instability is small.
    InversionOptions opt = fast_options();
    opt.early_stop = false;
    opt.k_max = 8;
    const auto res = stieltjes_functional(q_reciprocal, make_test_function("canonical"),
                                          PlaneHints{}, opt);
    REQUIRE(res.trace.size() == 8);
    REQUIRE(res.instability < 1e-4);
    REQUIRE_THAT(res.value, WithinAbs(pi * pi, 0.01 * pi * pi));
}
