#include <catch2/catch_amalgamated.hpp>

#include <hn2/kernels.hpp>

#include <random>

using namespace hn2;
using Catch::Matchers::WithinAbs;

namespace {

struct SamplePool {
    std::mt19937_64 rng{12345};
    std::uniform_real_distribution<double> zre{-3.0, 3.0};
    std::uniform_real_distribution<double> zim{0.1, 5.0};
    std::uniform_real_distribution<double> tline{-50.0, 50.0};

    complex z() { return {zre(rng), zim(rng)}; }
    double t() { return tline(rng); }
};

complex sum_terms(const std::vector<SeparableTerm>& terms, double t1, double t2) {
    complex acc(0, 0);
    for (const auto& term : terms) acc += term.f1(t1) * term.f2(t2);
    return acc;
}

}  // namespace

TEST_CASE("kernel decomposition identity Im K = P - N/2") {
    SamplePool p;
    double worst = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const complex z1 = p.z(), z2 = p.z();
        const double t1 = p.t(), t2 = p.t();
        const complex K = kernel_K(z1, z2, t1, t2);
        const double rhs = poisson_P(z1, z2, t1, t2) -
                           0.5 * nevanlinna_integrand(z1, z2, t1, t2);
        worst = std::max(worst, std::abs(K.imag() - rhs));
    }
    REQUIRE(worst <= 1e-12);
}

TEST_CASE("kernel frozen point values") {
    // K((i,i),(0,0)) = i: both pole factors equal 2i, the correction is -i.
    const complex K = kernel_K(complex(0, 1), complex(0, 1), 0.0, 0.0);
    REQUIRE_THAT(std::abs(K - complex(0, 1)), WithinAbs(0.0, 1e-15));

    REQUIRE_THAT(poisson_P(complex(0, 1), complex(0, 1), 0.0, 0.0), WithinAbs(1.0, 1e-15));

    // Nevanlinna integrand vanishes identically when z1 = i.
    SamplePool p;
    for (int i = 0; i < 200; ++i)
        REQUIRE_THAT(nevanlinna_integrand(complex(0, 1), p.z(), p.t(), p.t()),
                     WithinAbs(0.0, 1e-15));
}

TEST_CASE("one-variable kernel") {
    REQUIRE_THAT(std::abs(kernel_1d(complex(0, 1), 0.0) - complex(0, 1)), WithinAbs(0.0, 1e-15));
    // Vanishes at t = -1/z's pole structure: numerator zero at t = -1/z.
    const complex z(2, 1);
    const double t0 = -1.0 / 2.5;  // arbitrary real; just check finiteness
    REQUIRE(std::isfinite(kernel_1d(z, t0).real()));
}

TEST_CASE("disk kernel on the torus matches the plane kernel") {
    // i * D(cayley z, torus_angle t) / W(t) = K(z, t).
    SamplePool p;
    for (int i = 0; i < 2000; ++i) {
        const complex z1 = p.z(), z2 = p.z();
        const double t1 = p.t(), t2 = p.t();
        const complex lhs = complex(0, 1) *
                            disk_kernel(cayley(z1), cayley(z2), torus_angle(t1), torus_angle(t2)) /
                            plane_weight(t1, t2);
        const complex rhs = kernel_K(z1, z2, t1, t2);
        REQUIRE_THAT(std::abs(lhs - rhs), WithinAbs(0.0, 1e-12 * (1.0 + std::abs(rhs))));
    }
}

TEST_CASE("disk kernel at the disk center") {
    // D(0, s) = 2 - 1 = 1 for every angle.
    for (double s : {0.1, 1.0, 3.0, 6.0})
        REQUIRE_THAT(std::abs(disk_kernel(complex(0, 0), complex(0, 0), s, s) - complex(1, 0)),
                     WithinAbs(0.0, 1e-15));
}

TEST_CASE("separable decompositions reproduce the pointwise kernels") {
    SamplePool p;
    for (int i = 0; i < 500; ++i) {
        const complex z1 = p.z(), z2 = p.z();
        const double t1 = p.t(), t2 = p.t();

        REQUIRE_THAT(std::abs(sum_terms(kernel_terms(z1, z2), t1, t2) - kernel_K(z1, z2, t1, t2)),
                     WithinAbs(0.0, 1e-13));
        REQUIRE_THAT(std::abs(sum_terms(poisson_terms(z1, z2), t1, t2) -
                              complex(poisson_P(z1, z2, t1, t2), 0)),
                     WithinAbs(0.0, 1e-13));
        REQUIRE_THAT(std::abs(sum_terms(nevanlinna_terms(z1, z2), t1, t2) -
                              complex(nevanlinna_integrand(z1, z2, t1, t2), 0)),
                     WithinAbs(0.0, 1e-13));

        const complex w1 = cayley(z1), w2 = cayley(z2);
        const double s1 = torus_angle(t1), s2 = torus_angle(t2);
        REQUIRE_THAT(std::abs(sum_terms(disk_kernel_terms(w1, w2), s1, s2) -
                              disk_kernel(w1, w2, s1, s2)),
                     WithinAbs(0.0, 1e-13));
        REQUIRE_THAT(std::abs(sum_terms(torus_moment_terms(2, -3), s1, s2) -
                              std::polar(1.0, 2.0 * s1 - 3.0 * s2)),
                     WithinAbs(0.0, 1e-13));
    }
}

TEST_CASE("one-variable kernel has nonnegative imaginary part") {
    // Im kernel_1d(z, t) = Im z / |t - z|^2, the Poisson kernel.
    SamplePool p;
    for (int i = 0; i < 2000; ++i) {
        const complex z = p.z();
        const double t = p.t();
        const complex k = kernel_1d(z, t);
        const double poisson = z.imag() / std::norm(t - z);
        REQUIRE_THAT(k.imag(), WithinAbs(poisson, 1e-12 * (1.0 + poisson)));
        REQUIRE(k.imag() >= 0.0);
        // Reflection of z conjugates the kernel.
        REQUIRE_THAT(std::abs(kernel_1d(std::conj(z), t) - std::conj(k)),
                     WithinAbs(0.0, 1e-12 * (1.0 + std::abs(k))));
    }
}
