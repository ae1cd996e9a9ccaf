#pragma once

// Representation data and evaluation. A function on the product of two
// upper half-planes is stored as (a, b1, b2, mu) and evaluated as
//
//     q(z) = a + b1 z1 + b2 z2 + (1/pi^2) * integral of K(z, .) d mu,
//
// with the companion one-variable and bidisk forms used by the embedding
// and transport paths.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "halfplane.hpp"
#include "kernels.hpp"
#include "measure.hpp"
#include "torus.hpp"

namespace hn2 {

struct Representation {
    double a = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    Measure2D mu;
};

struct Representation1D {
    double a = 0.0;
    double b = 0.0;
    Measure1D mu;
};

// Bidisk-side data: f(w) = i * im_f00 + (1/(4 pi^2)) * integral of D(w, .) d nu.
struct DiskRepresentation {
    double im_f00 = 0.0;
    TorusMeasure nu;
};

inline void require_upper(complex z, const char* who) {
    if (!(z.imag() > 0.0))
        throw std::domain_error(std::string(who) + ": point must have positive imaginary part");
}

inline void require_coefficients(const Representation& rep) {
    if (!(rep.b1 >= 0.0) || !(rep.b2 >= 0.0))
        throw std::domain_error("representation: linear coefficients must be nonnegative");
    if (!std::isfinite(rep.a))
        throw std::domain_error("representation: constant term must be finite");
}

namespace detail {

// The kernel varies fastest where t_j passes Re z_j at scale Im z_j; seed
// the subdivision there so shallow refinement already sees the peak.
inline PlaneHints pole_hints(complex z1, complex z2) {
    PlaneHints h;
    h.axis1.push_back(QuadHint{z1.real(), std::max(z1.imag(), 1e-3)});
    h.axis2.push_back(QuadHint{z2.real(), std::max(z2.imag(), 1e-3)});
    return h;
}

}   // namespace detail

// Full evaluation of q at (z1, z2). The returned outcome carries the
// quadrature error of the integral term; the polynomial part is exact.
template <class = void>
QuadOutcome evaluate(const Representation& rep, complex z1, complex z2,
                     const QuadratureConfig& cfg = {}) {
    require_upper(z1, "evaluate");
    require_upper(z2, "evaluate");
    require_coefficients(rep);
    QuadOutcome out = integrate(
        rep.mu, [z1, z2](double t1, double t2) { return kernel_K(z1, z2, t1, t2); },
        kernel_terms(z1, z2), detail::pole_hints(z1, z2), cfg);
    out.value /= pi * pi;
    out.error /= pi * pi;
    out.value += rep.a + rep.b1 * z1 + rep.b2 * z2;
    return out;
}

// Imaginary part computed through the positive kernel alone. Agrees with
// Im evaluate(...) exactly when the measure satisfies the orthogonality
// condition; the certification checks quantify the gap otherwise.
template <class = void>
QuadOutcome evaluate_im_poisson(const Representation& rep, complex z1, complex z2,
                                const QuadratureConfig& cfg = {}) {
    require_upper(z1, "evaluate_im_poisson");
    require_upper(z2, "evaluate_im_poisson");
    require_coefficients(rep);
    QuadOutcome out = integrate(
        rep.mu, [z1, z2](double t1, double t2) { return poisson_P(z1, z2, t1, t2); },
        poisson_terms(z1, z2), detail::pole_hints(z1, z2), cfg);
    out.value /= pi * pi;
    out.error /= pi * pi;
    out.value += rep.b1 * z1.imag() + rep.b2 * z2.imag();
    return out;
}

// One-variable evaluation q(z) = a + b z + (1/pi) * integral of the
// symmetrized Cauchy kernel.
template <class = void>
QuadOutcome oned_evaluate(const Representation1D& rep, complex z,
                          const QuadratureConfig& cfg = {}) {
    require_upper(z, "oned_evaluate");
    std::vector<QuadHint> hints{QuadHint{z.real(), std::max(z.imag(), 1e-3)}};
    QuadOutcome out = integrate_1d(
        rep.mu, [z](double t) { return kernel_1d(z, t); }, Interval{}, hints, cfg);
    out.value /= pi;
    out.error /= pi;
    out.value += rep.a + rep.b * z;
    return out;
}

// Angle of w as a point of (0, 2*pi], used to seed torus quadrature near
// the kernel peak of D(w, .).
inline double disk_peak_angle(complex w) {
    double s = std::arg(w);
    if (s <= 0.0) s += 2.0 * pi;
    return s;
}

template <class = void>
QuadOutcome disk_evaluate(const DiskRepresentation& rep, complex w1, complex w2,
                          const QuadratureConfig& cfg = {}) {
    if (!(std::abs(w1) < 1.0) || !(std::abs(w2) < 1.0))
        throw std::domain_error("disk_evaluate: point must lie in the open bidisk");
    TorusHints hints;
    if (w1 != complex(0, 0))
        hints.axis1.push_back(QuadHint{disk_peak_angle(w1), std::max(1.0 - std::abs(w1), 1e-3)});
    if (w2 != complex(0, 0))
        hints.axis2.push_back(QuadHint{disk_peak_angle(w2), std::max(1.0 - std::abs(w2), 1e-3)});
    QuadOutcome out = integrate_torus(
        rep.nu, [w1, w2](double s1, double s2) { return disk_kernel(w1, w2, s1, s2); },
        disk_kernel_terms(w1, w2), hints, cfg);
    out.value /= 4.0 * pi * pi;
    out.error /= 4.0 * pi * pi;
    out.value += complex(0.0, rep.im_f00);
    return out;
}

// Transport of half-plane data to the bidisk: the measure moves by
// plane_to_torus and the normalization flips sign, since
// q(z) = i f(cayley(z1), cayley(z2)) forces Im f(0, 0) = -Re q(i, i) = -a.
inline DiskRepresentation rep_to_disk(const Representation& rep) {
    require_coefficients(rep);
    DiskRepresentation d;
    d.im_f00 = -rep.a;
    d.nu = plane_to_torus(rep.mu, rep.b1, rep.b2);
    return d;
}

// ---------------------------------------------------------------------------
// Parameter recovery from a black-box function q on the product of two
// upper half-planes. Callables take (complex, complex) and return complex.

// The normalization pins the constant term at the Cayley center.
template <class Q>
double extract_a(Q&& q) {
    return std::real(q(complex(0, 1), complex(0, 1)));
}

// Linear coefficient along one axis: the non-tangential limit of
// q(z) / z_j with the other variable held at the Cayley center. The limit
// exists and equals b_j for every anchor in the upper half-plane.
template <class Q>
LimitEstimate extract_b(Q&& q, int axis, const StolzSchedule& schedule = StolzSchedule::standard(),
                        double tol = 1e-6, complex anchor = complex(0, 1)) {
    if (axis != 1 && axis != 2) throw std::domain_error("extract_b: axis must be 1 or 2");
    auto slice = [&q, axis, anchor](complex z) {
        return axis == 1 ? complex(q(z, anchor)) : complex(q(anchor, z));
    };
    return nontangential_limit(slice, LimitMode::ratio_at_infinity, schedule, tol);
}

// Boundary coefficient at a real point x0 of one axis: the limit of
// (z - x0) * q(z) as z tends to x0 non-tangentially. Nonpositive real for
// genuine functions of the class; a nonzero value flags a point mass on
// the line t_j = x0.
template <class Q>
LimitEstimate extract_c(Q&& q, int axis, double x0 = 0.0,
                        const StolzSchedule& schedule = StolzSchedule::standard(),
                        double tol = 1e-6, complex anchor = complex(0, 1)) {
    if (axis != 1 && axis != 2) throw std::domain_error("extract_c: axis must be 1 or 2");
    auto slice = [&q, axis, anchor, x0](complex z) {
        const complex shifted = z + x0;
        return axis == 1 ? complex(q(shifted, anchor)) : complex(q(anchor, shifted));
    };
    return nontangential_limit(slice, LimitMode::product_at_zero, schedule, tol);
}

// Mass of a joint atom at (p1, p2): 2 pi^2 i times the limit of
// (z1 - p1)(z2 - p2) q(z) with both variables approaching vertically at
// the same rate.
template <class Q>
LimitEstimate atom_via_limit(Q&& q, double p1, double p2,
                             const StolzSchedule& schedule = StolzSchedule::standard(),
                             double tol = 1e-6) {
    auto paired = [&q, p1, p2](complex zeta) {
        // One factor of zeta comes from the product_at_zero mode, the other
        // lives here, so the sampled quantity is zeta^2 q(p + zeta).
        return zeta * complex(q(p1 + zeta, p2 + zeta));
    };
    LimitEstimate est = nontangential_limit(paired, LimitMode::product_at_zero, schedule, tol);
    est.value *= complex(0.0, 2.0 * pi * pi);
    est.error_estimate *= 2.0 * pi * pi;
    return est;
}

// Total measure mass over pi^2, as the limit of y^2 Im q(iy, iy). Diverges
// whenever the representation carries linear terms or infinite mass.
template <class Q>
LimitEstimate mass_via_limit(Q&& q, const StolzSchedule& schedule = StolzSchedule::standard(),
                             double tol = 1e-6) {
    LimitEstimate est;
    std::vector<double> xs;
    std::vector<complex> gs;
    const std::size_t window = 8;
    for (std::size_t k = 0; k < schedule.radii.size(); ++k) {
        const double y = schedule.radii[k];
        const double s = y * y * std::imag(q(complex(0, y), complex(0, y)));
        est.samples_used = static_cast<int>(k) + 1;
        if (!std::isfinite(s) || std::abs(s) > 1e100) {
            est.diverged = true;
            return est;
        }
        xs.push_back(1.0 / y);
        gs.push_back(complex(s, 0.0));
        if (gs.size() >= window + 2 && detail::divergence_trend(gs)) {
            est.diverged = true;
            return est;
        }
        if (gs.size() < window + 2) continue;
        complex fits[3];
        for (int shift = 0; shift < 3; ++shift) {
            const std::size_t end = gs.size() - shift;
            fits[shift] = detail::fit_limit(xs, gs, end - window, end);
        }
        double spread = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                spread = std::max(spread, std::abs(fits[i] - fits[j]));
        est.value = fits[0];
        est.error_estimate = spread;
        if (spread <= tol) {
            est.converged = true;
            return est;
        }
    }
    return est;
}

struct ParameterExtraction {
    double a = 0.0;
    LimitEstimate b1;
    LimitEstimate b2;
};

template <class Q>
ParameterExtraction extract_parameters(Q&& q,
                                       const StolzSchedule& schedule = StolzSchedule::standard(),
                                       double tol = 1e-6) {
    ParameterExtraction out;
    out.a = extract_a(q);
    out.b1 = extract_b(q, 1, schedule, tol);
    out.b2 = extract_b(q, 2, schedule, tol);
    return out;
}

// ---------------------------------------------------------------------------
// Normalization diagnostic. When the stored measure reproduces a reference
// function only up to per-component scalars (a misplaced constant in one
// component, say), the least-squares fit below recovers those scalars from
// a sample of evaluation points.

struct ComponentScaleFit {
    std::vector<double> scales;    // one per measure component
    double misfit_before = 0.0;    // max |q_rep - reference| on the sample
    double misfit_after = 0.0;     // same, with the fitted scales applied
};

// Applies per-component scales by integrating each component separately:
// q_fit(z) = a + b1 z1 + b2 z2 + sum_c s_c * (1/pi^2) integral K d mu_c.
template <class Ref>
ComponentScaleFit fit_component_scales(const Representation& rep, Ref&& reference,
                                       const std::vector<complex>& sample1,
                                       const std::vector<complex>& sample2,
                                       const QuadratureConfig& cfg = {}) {
    const std::size_t nc = rep.mu.components.size();
    ComponentScaleFit fit;
    fit.scales.assign(nc, 1.0);
    if (nc == 0) return fit;

    // Component basis values B[c][k] and targets T[k] on the sample.
    std::vector<std::vector<complex>> basis(nc);
    std::vector<complex> target;
    for (const complex z1 : sample1)
        for (const complex z2 : sample2) {
            for (std::size_t c = 0; c < nc; ++c) {
                Measure2D single;
                single.components.push_back(rep.mu.components[c]);
                QuadOutcome out = integrate(
                    single,
                    [z1, z2](double t1, double t2) { return kernel_K(z1, z2, t1, t2); },
                    kernel_terms(z1, z2), detail::pole_hints(z1, z2), cfg);
                basis[c].push_back(out.value / (pi * pi));
            }
            target.push_back(complex(reference(z1, z2)) - rep.a - rep.b1 * z1 - rep.b2 * z2);
        }

    const std::size_t np = target.size();
    for (std::size_t k = 0; k < np; ++k) {
        complex diff = -target[k];
        for (std::size_t c = 0; c < nc; ++c) diff += basis[c][k];
        fit.misfit_before = std::max(fit.misfit_before, std::abs(diff));
    }

    // Real normal equations: minimize sum_k |T[k] - sum_c s_c B[c][k]|^2
    // over real scales s.
    std::vector<std::vector<double>> A(nc, std::vector<double>(nc + 1, 0.0));
    for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t d = 0; d < nc; ++d)
            for (std::size_t k = 0; k < np; ++k)
                A[c][d] += std::real(basis[c][k] * std::conj(basis[d][k]));
        for (std::size_t k = 0; k < np; ++k)
            A[c][nc] += std::real(target[k] * std::conj(basis[c][k]));
    }
    // Gaussian elimination with partial pivoting; the system is tiny.
    for (std::size_t col = 0; col < nc; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < nc; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        if (A[col][col] == 0.0) continue;   // degenerate component, keep scale 1
        for (std::size_t r = 0; r < nc; ++r) {
            if (r == col) continue;
            const double m = A[r][col] / A[col][col];
            for (std::size_t c2 = col; c2 <= nc; ++c2) A[r][c2] -= m * A[col][c2];
        }
    }
    for (std::size_t c = 0; c < nc; ++c)
        if (A[c][c] != 0.0) fit.scales[c] = A[c][nc] / A[c][c];

    for (std::size_t k = 0; k < np; ++k) {
        complex diff = -target[k];
        for (std::size_t c = 0; c < nc; ++c) diff += fit.scales[c] * basis[c][k];
        fit.misfit_after = std::max(fit.misfit_after, std::abs(diff));
    }
    return fit;
}

}   // namespace hn2
