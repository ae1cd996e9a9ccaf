#pragma once

// Geometry of the upper half-plane and its Cayley image, plus non-tangential
// (Stolz) limit machinery used for coefficient extraction.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hn2 {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

enum class Boundary { forbid, allow };

// (1+t1^2)(1+t2^2), the weight controlling measure growth at infinity.
inline double plane_weight(double t1, double t2) {
    return (1.0 + t1 * t1) * (1.0 + t2 * t2);
}

// w = (z - i)/(z + i), maps the open upper half-plane onto the open unit disk.
// With Boundary::allow, real z maps to the unit circle minus the point 1.
inline complex cayley(complex z, Boundary mode = Boundary::forbid) {
    if (z.imag() < 0.0 || (mode == Boundary::forbid && z.imag() == 0.0))
        throw std::domain_error("cayley: point not in the upper half-plane");
    return (z - complex(0, 1)) / (z + complex(0, 1));
}

// z = i(1 + w)/(1 - w), inverse of cayley. Requires |w| < 1, or |w| <= 1
// with w != 1 when boundary points are allowed.
inline complex inverse_cayley(complex w, Boundary mode = Boundary::forbid) {
    const double r = std::abs(w);
    if (mode == Boundary::forbid ? r >= 1.0 : r > 1.0 + 1e-14)
        throw std::domain_error("inverse_cayley: point not in the unit disk");
    if (w == complex(1, 0))
        throw std::domain_error("inverse_cayley: w = 1 corresponds to the point at infinity");
    return complex(0, 1) * (1.0 + w) / (1.0 - w);
}

// Angle s in (0, 2*pi) with e^{is} = cayley(t) for real t. Monotone in t,
// s(0) = pi, s -> 0 as t -> -inf, s -> 2*pi as t -> +inf.
inline double torus_angle(double t) {
    return pi + 2.0 * std::atan(t);
}

// Inverse of torus_angle on (0, 2*pi).
inline double torus_angle_inverse(double s) {
    if (!(s > 0.0 && s < 2.0 * pi))
        throw std::domain_error("torus_angle_inverse: angle outside (0, 2*pi)");
    return std::tan(0.5 * (s - pi));
}

// Approach path for non-tangential limits: rays with angle in
// [theta, pi - theta] sampled at prescribed radii.
struct StolzSchedule {
    double theta = pi / 4.0;       // aperture bound, in (0, pi/2]
    double direction = pi / 2.0;   // ray angle, must respect the aperture
    std::vector<double> radii;     // strictly increasing positive radii

    void validate() const {
        if (!(theta > 0.0 && theta <= pi / 2.0))
            throw std::invalid_argument("StolzSchedule: theta outside (0, pi/2]");
        if (!(direction >= theta && direction <= pi - theta))
            throw std::invalid_argument("StolzSchedule: direction outside [theta, pi-theta]");
        if (radii.empty())
            throw std::invalid_argument("StolzSchedule: empty radius list");
        double prev = 0.0;
        for (double r : radii) {
            if (!(r > prev))
                throw std::invalid_argument("StolzSchedule: radii must be positive and strictly increasing");
            prev = r;
        }
    }

    // Default schedule: vertical ray, radii 2^k for k = 0..40.
    static StolzSchedule standard() {
        StolzSchedule s;
        s.radii.reserve(41);
        double r = 1.0;
        for (int k = 0; k <= 40; ++k, r *= 2.0) s.radii.push_back(r);
        return s;
    }

    // Point at schedule index k for the limit at infinity: |z| = radii[k].
    complex point_at_infinity(std::size_t k) const {
        return std::polar(radii[k], direction);
    }

    // Point for the limit at 0: |z| = 1/radii[k], same ray angle.
    complex point_at_zero(std::size_t k) const {
        return std::polar(1.0 / radii[k], direction);
    }
};

enum class LimitMode {
    ratio_at_infinity,   // limit of f(z)/z as z -> infinity in the Stolz region
    product_at_zero      // limit of z*f(z) as z -> 0 in the Stolz region
};

struct LimitEstimate {
    complex value{0.0, 0.0};
    double error_estimate = std::numeric_limits<double>::infinity();
    bool converged = false;
    bool diverged = false;       // magnitudes trend to infinity along the schedule
    int samples_used = 0;
};

namespace detail {

// Least-squares fit of g ~= L + c*x over the given samples, returning L.
// Centered in x so the normal equations stay well conditioned when all x
// are tiny (large radii make x = 1/r nearly zero).
inline complex fit_limit(const std::vector<double>& x, const std::vector<complex>& g,
                         std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    double xbar = 0.0;
    complex gbar(0, 0);
    for (std::size_t i = lo; i < hi; ++i) { xbar += x[i]; gbar += g[i]; }
    xbar /= double(n);
    gbar /= double(n);
    double sxx = 0.0;
    complex sxg(0, 0);
    for (std::size_t i = lo; i < hi; ++i) {
        const double dx = x[i] - xbar;
        sxx += dx * dx;
        sxg += dx * (g[i] - gbar);
    }
    if (sxx == 0.0) return gbar;
    const complex c = sxg / sxx;
    return gbar - c * xbar;
}

inline bool divergence_trend(const std::vector<complex>& g) {
    // Five consecutive trailing samples, each magnitude at least 1.5 times
    // the previous one, flag a genuine blow-up rather than slow settling.
    const std::size_t n = g.size();
    if (n < 5) return false;
    for (std::size_t i = n - 4; i < n; ++i) {
        const double prev = std::abs(g[i - 1]);
        const double cur = std::abs(g[i]);
        if (!(cur >= 1.5 * prev) || !(cur > prev)) return false;
    }
    return true;
}

} // namespace detail

// Sequence-accelerated non-tangential limit. Walks the schedule, transforms
// samples according to the mode, fits L + c/r on trailing windows of eight
// samples, and stops once the fitted limit is stable across three windows.
template <class F>
LimitEstimate nontangential_limit(F&& f, LimitMode mode, const StolzSchedule& schedule,
                                  double tol) {
    schedule.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("nontangential_limit: tolerance must be positive");

    const std::size_t n = schedule.radii.size();
    std::vector<double> x;       // 1/r, the fit abscissa
    std::vector<complex> g;      // transformed samples
    x.reserve(n);
    g.reserve(n);

    LimitEstimate est;
    const std::size_t window = 8;

    for (std::size_t k = 0; k < n; ++k) {
        const double r = schedule.radii[k];
        complex z, gk;
        if (mode == LimitMode::ratio_at_infinity) {
            z = schedule.point_at_infinity(k);
            gk = f(z) / z;
        } else {
            z = schedule.point_at_zero(k);
            gk = z * f(z);
        }
        x.push_back(1.0 / r);
        g.push_back(gk);
        est.samples_used = int(k + 1);

        if (!std::isfinite(gk.real()) || !std::isfinite(gk.imag()) || std::abs(gk) > 1e100) {
            est.diverged = true;
            est.value = gk;
            return est;
        }

        // Need three full trailing windows before judging stability.
        if (g.size() < window + 2) continue;
        const std::size_t m = g.size();
        const complex L0 = detail::fit_limit(x, g, m - window, m);
        const complex L1 = detail::fit_limit(x, g, m - window - 1, m - 1);
        const complex L2 = detail::fit_limit(x, g, m - window - 2, m - 2);
        const double spread = std::max(std::abs(L0 - L1),
                                       std::max(std::abs(L0 - L2), std::abs(L1 - L2)));
        est.value = L0;
        est.error_estimate = spread;
        if (spread <= tol && !detail::divergence_trend(g)) {
            est.converged = true;
            return est;
        }
    }

    est.diverged = detail::divergence_trend(g);
    if (g.size() >= window + 2) {
        est.converged = !est.diverged && est.error_estimate <= tol;
    } else if (!g.empty()) {
        // Short schedules: fall back to the plain fit over what is available.
        est.value = detail::fit_limit(x, g, 0, g.size());
        est.error_estimate = std::numeric_limits<double>::infinity();
    }
    return est;
}

} // namespace hn2
