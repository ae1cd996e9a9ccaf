#include <catch2/catch_amalgamated.hpp>

#include <hn2/certification.hpp>

#include <cmath>

using namespace hn2;
using Catch::Matchers::WithinAbs;

namespace {
const complex I(0, 1);

Representation rep_reciprocal() {
    Representation rep;
    rep.mu.components.push_back(Product2D{Measure1D::lebesgue(pi), Measure1D::atom(0.0, 1.0)});
    return rep;
}

Representation rep_delta() {
    Representation rep;
    rep.mu.components.push_back(Atom2D{0.0, 0.0, pi * pi});
    return rep;
}
}  // namespace

TEST_CASE("residual vanishes identically when z1 sits at the Cayley center") {
    // The integrand is exactly zero there, so this doubles as a quadrature
    // self-test: any nonzero answer is pure numerical noise.
    const Measure2D mu = rep_reciprocal().mu;
    for (const complex z2 : {complex(0, 0.5), complex(-2, 3)}) {
        const auto res = nevanlinna_residual(mu, I, z2);
        REQUIRE_THAT(std::abs(res.value), WithinAbs(0.0, 1e-12));
    }
    for (const complex z1 : {complex(1, 1), complex(0, 2)}) {
        const auto res = nevanlinna_residual(mu, z1, I);
        REQUIRE_THAT(std::abs(res.value), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("residual of the delta measure at (2i, 2i)") {
    // Frozen closed form: pi^2 * N((2i,2i),(0,0)) = pi^2 / 4.
    const auto res = nevanlinna_residual(rep_delta().mu, 2.0 * I, 2.0 * I);
    REQUIRE_THAT(res.value.real(), WithinAbs(pi * pi / 4.0, 1e-8));
    REQUIRE_THAT(res.value.imag(), WithinAbs(0.0, 1e-12));
}

TEST_CASE("representing measures certify") {
    const auto report = certify(rep_reciprocal());
    REQUIRE(report.certified);
    REQUIRE_FALSE(report.finite_mass_contradiction);
    REQUIRE_THAT(report.growth, WithinAbs(pi * pi, 1e-7));
    REQUIRE(std::isinf(report.mass));
    for (const auto& c : report.checks) REQUIRE(c.passed);

    const CheckResult* res = report.find("orthogonality_residual");
    REQUIRE(res != nullptr);
    // Grid checks are labeled as sampled, not exhaustive.
    REQUIRE(res->detail.find("sampled") != std::string::npos);
    REQUIRE(res->value <= res->threshold);
}

TEST_CASE("the delta measure fails certification with the contradiction flag") {
    const auto report = certify(rep_delta());
    REQUIRE_FALSE(report.certified);
    REQUIRE(report.finite_mass_contradiction);
    REQUIRE_THAT(report.mass, WithinAbs(pi * pi, 1e-9));
    REQUIRE_THAT(report.growth, WithinAbs(pi * pi, 1e-9));

    const CheckResult* res = report.find("orthogonality_residual");
    REQUIRE(res != nullptr);
    REQUIRE_FALSE(res->passed);
    // Worst grid residual: pi^2 * N at the worst point stays order one.
    REQUIRE(res->value > 0.1);

    const CheckResult* mom = report.find("mixed_moments_vanish");
    REQUIRE(mom != nullptr);
    REQUIRE_FALSE(mom->passed);

    // Structure is fine; only the analytic conditions fail.
    const CheckResult* structure = report.find("boundary_structure");
    REQUIRE(structure != nullptr);
    REQUIRE(structure->passed);
}

TEST_CASE("infinite growth short-circuits the expensive checks") {
    Representation rep;
    rep.mu.components.push_back(Product2D{
        Measure1D::density(make_density_1d("polynomial", {1.0, 0.0, 1.0})),
        Measure1D::atom(0.0, 1.0)});
    const auto report = certify(rep);
    REQUIRE_FALSE(report.certified);
    REQUIRE(std::isinf(report.growth));
    REQUIRE_FALSE(report.finite_mass_contradiction);

    const CheckResult* res = report.find("orthogonality_residual");
    REQUIRE(res != nullptr);
    REQUIRE_FALSE(res->passed);
    REQUIRE(res->detail.find("skipped") != std::string::npos);
}

TEST_CASE("negative data fails the positivity check") {
    Representation rep;
    rep.mu.components.push_back(Atom2D{0.0, 0.0, -2.0});
    const auto report = certify(rep);
    REQUIRE_FALSE(report.certified);
    const CheckResult* pos = report.find("measure_positive");
    REQUIRE(pos != nullptr);
    REQUIRE_FALSE(pos->passed);

    // Negative linear coefficients are rejected before any check runs.
    Representation bad = rep_reciprocal();
    bad.b2 = -0.5;
    REQUIRE_THROWS_AS(certify(bad), std::domain_error);
}

TEST_CASE("boundary structure rejects doctored torus measures") {
    TorusMeasure nu;
    nu.corner_weight = 1.0;
    REQUIRE_FALSE(check_boundary_structure(nu).passed);

    nu.corner_weight = 0.0;
    nu.edge1 = Measure1D::atom(pi, 1.0);
    REQUIRE_FALSE(check_boundary_structure(nu).passed);

    nu.edge1 = Measure1D::lebesgue(2.0 * pi);
    REQUIRE(check_boundary_structure(nu).passed);
}

TEST_CASE("torus moments respect conjugate symmetry") {
    // The measure is real, so moment(m1, m2) = conj(moment(-m1, -m2)).
    const TorusMeasure nu = plane_to_torus(rep_reciprocal().mu, 0.0, 0.0);
    for (const auto [m1, m2] : {std::pair{1, -1}, {2, -3}, {1, 2}}) {
        auto fwd = integrate_torus(
            nu, [m1 = m1, m2 = m2](double s1, double s2) { return std::polar(1.0, m1 * s1 + m2 * s2); },
            torus_moment_terms(m1, m2), TorusHints{}, QuadratureConfig{});
        auto rev = integrate_torus(
            nu, [m1 = m1, m2 = m2](double s1, double s2) { return std::polar(1.0, -m1 * s1 - m2 * s2); },
            torus_moment_terms(-m1, -m2), TorusHints{}, QuadratureConfig{});
        REQUIRE_THAT(std::abs(fwd.value - std::conj(rev.value)), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("certified functions have nonnegative imaginary part on a sample grid") {
    const Representation rep = rep_reciprocal();
    for (double re1 : {-1.5, 0.3})
        for (double im1 : {0.4, 2.2})
            for (double re2 : {-0.7, 1.9})
                for (double im2 : {0.6, 3.1}) {
                    const auto q = evaluate(rep, complex(re1, im1), complex(re2, im2));
                    REQUIRE(q.value.imag() >= -1e-8);
                }
}

TEST_CASE("the delta kernel has negative imaginary part somewhere") {
    const Representation rep = rep_delta();
    bool found_negative = false;
    for (double re1 : {-2.0, -1.0, 0.0, 1.0, 2.0})
        for (double im1 : {0.5, 1.0, 2.0, 4.0})
            for (double re2 : {-2.0, -1.0, 0.0, 1.0, 2.0})
                for (double im2 : {0.5, 1.0, 2.0, 4.0}) {
                    const auto q = evaluate(rep, complex(re1, im1), complex(re2, im2));
                    if (q.value.imag() < -1e-6) found_negative = true;
                }
    REQUIRE(found_negative);
}
