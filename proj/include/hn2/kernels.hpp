#pragma once

// Integral kernels for the two-variable half-plane representation and its
// disk counterpart. All forms are written as products of simple fractions,
// never as differences of nearly equal terms, so they stay accurate for
// large |t| and large |z|.

#include <cmath>
#include <complex>
#include <vector>

#include "halfplane.hpp"
#include "quadrature.hpp"

namespace hn2 {

namespace detail {

// 1/(t - z) - 1/(t + i) combined over a common denominator.
inline complex pole_factor(double t, complex z) {
    return (z + complex(0, 1)) / ((t - z) * (t + complex(0, 1)));
}

} // namespace detail

// Two-variable representation kernel
//   K(z, t) = -(i/2) * (1/(t1-z1) - 1/(t1+i)) * (1/(t2-z2) - 1/(t2+i))
//             - i / ((1+t1^2)(1+t2^2)).
// The additive term carries a minus sign; it is what makes
// Im K = poisson_P - nevanlinna_integrand/2 an identity.
inline complex kernel_K(complex z1, complex z2, double t1, double t2) {
    const complex prod = detail::pole_factor(t1, z1) * detail::pole_factor(t2, z2);
    return complex(0, -0.5) * prod - complex(0, 1) / plane_weight(t1, t2);
}

// Product Poisson kernel of the poly-half-plane, strictly positive for z in
// the open upper half-planes.
inline double poisson_P(complex z1, complex z2, double t1, double t2) {
    const double d1 = std::norm(t1 - z1);
    const double d2 = std::norm(t2 - z2);
    return z1.imag() * z2.imag() / (d1 * d2);
}

// Integrand of the cross-moment condition: a representing measure must
// integrate this to zero for every (z1, z2) in the product half-plane.
inline double nevanlinna_integrand(complex z1, complex z2, double t1, double t2) {
    const complex f1 = (std::conj(z1) + complex(0, 1)) /
                       ((t1 - std::conj(z1)) * (t1 + complex(0, 1)));
    const complex f2 = (z2 - complex(0, 1)) / ((t2 - z2) * (t2 - complex(0, 1)));
    return (f1 * f2).real();
}

// Kernel of the bi-disk representation against torus angles.
inline complex disk_kernel(complex w1, complex w2, double s1, double s2) {
    const complex e1 = std::polar(1.0, -s1);
    const complex e2 = std::polar(1.0, -s2);
    return 2.0 / ((1.0 - w1 * e1) * (1.0 - w2 * e2)) - 1.0;
}

// Symmetrized Cauchy kernel of the one-variable representation,
// (1 + t z) / ((t - z)(1 + t^2)). Integrating it against the flat measure
// gives i * pi, which pins the normalization used throughout.
inline complex kernel_1d(complex z, double t) {
    return (1.0 + t * z) / ((t - z) * (1.0 + t * t));
}

// ---------------------------------------------------------------------------
// Separable views of the kernels, for integration against product measures.
// Each list of terms sums to the pointwise kernel above it.

inline std::vector<SeparableTerm> kernel_terms(complex z1, complex z2) {
    return {
        SeparableTerm{[z1](double t1) { return complex(0, -0.5) * detail::pole_factor(t1, z1); },
                      [z2](double t2) { return detail::pole_factor(t2, z2); }},
        SeparableTerm{[](double t1) { return complex(0, -1.0) / (1.0 + t1 * t1); },
                      [](double t2) { return complex(1.0 / (1.0 + t2 * t2), 0.0); }},
    };
}

inline std::vector<SeparableTerm> poisson_terms(complex z1, complex z2) {
    return {
        SeparableTerm{[z1](double t1) { return complex(z1.imag() / std::norm(t1 - z1), 0.0); },
                      [z2](double t2) { return complex(z2.imag() / std::norm(t2 - z2), 0.0); }},
    };
}

// Re(f1 f2) splits as Re f1 Re f2 - Im f1 Im f2.
inline std::vector<SeparableTerm> nevanlinna_terms(complex z1, complex z2) {
    auto f1 = [z1](double t1) {
        return (std::conj(z1) + complex(0, 1)) / ((t1 - std::conj(z1)) * (t1 + complex(0, 1)));
    };
    auto f2 = [z2](double t2) {
        return (z2 - complex(0, 1)) / ((t2 - z2) * (t2 - complex(0, 1)));
    };
    return {
        SeparableTerm{[f1](double t1) { return complex(f1(t1).real(), 0.0); },
                      [f2](double t2) { return complex(f2(t2).real(), 0.0); }},
        SeparableTerm{[f1](double t1) { return complex(-f1(t1).imag(), 0.0); },
                      [f2](double t2) { return complex(f2(t2).imag(), 0.0); }},
    };
}

inline std::vector<SeparableTerm> disk_kernel_terms(complex w1, complex w2) {
    return {
        SeparableTerm{[w1](double s1) { return 2.0 / (1.0 - w1 * std::polar(1.0, -s1)); },
                      [w2](double s2) { return 1.0 / (1.0 - w2 * std::polar(1.0, -s2)); }},
        SeparableTerm{[](double) { return complex(-1.0, 0.0); },
                      [](double) { return complex(1.0, 0.0); }},
    };
}

inline std::vector<SeparableTerm> torus_moment_terms(int m1, int m2) {
    return {
        SeparableTerm{[m1](double s1) { return std::polar(1.0, m1 * s1); },
                      [m2](double s2) { return std::polar(1.0, m2 * s2); }},
    };
}

} // namespace hn2
