#pragma once

// Recovery of measure pairings from boundary values. For a test function
// psi with enough decay, the pairing integral of psi against mu is the
// limit, as y shrinks to zero, of
//
//     F(y) = integral of psi(x1, x2) * Im q(x1 + iy, x2 + iy) dx1 dx2.
//
// F is evaluated on the geometric ladder y = 2^-k and extrapolated to
// y = 0 by Neville's scheme; the shift sensitivity of the extrapolated
// value serves as the error estimate.

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfplane.hpp"
#include "measure.hpp"
#include "quadrature.hpp"

namespace hn2 {

// Scalar test function with the integration window of each axis. The
// decay requirement is |psi(x)| * (1 + x1^2)(1 + x2^2) bounded, which
// makes F(y) finite for every finite-growth measure.
struct TestFunction {
    std::string name;
    std::vector<double> params;
    std::function<double(double, double)> f;
    Interval support1{};
    Interval support2{};

    double operator()(double x1, double x2) const {
        if (!support1.contains(x1) || !support2.contains(x2)) return 0.0;
        return f(x1, x2);
    }
};

// Samples the decay bound on a seeded spread of points; the constant is
// returned so callers can report it, and a wild sample rejects the
// function outright.
inline double verify_test_function(const TestFunction& psi, std::uint64_t seed = 20240902) {
    std::mt19937_64 rng(seed);
    const double u1lo = std::atan(std::max(psi.support1.lo, -1e300));
    const double u1hi = std::atan(std::min(psi.support1.hi, 1e300));
    const double u2lo = std::atan(std::max(psi.support2.lo, -1e300));
    const double u2hi = std::atan(std::min(psi.support2.hi, 1e300));
    std::uniform_real_distribution<double> u1(u1lo, u1hi), u2(u2lo, u2hi);
    double bound = 0.0;
    auto probe = [&](double x1, double x2) {
        const double v = std::abs(psi(x1, x2)) * plane_weight(x1, x2);
        if (!std::isfinite(v) || v > 1e12)
            throw std::invalid_argument("test function '" + psi.name +
                                        "' lacks the required decay (sampled bound blew up)");
        bound = std::max(bound, v);
    };
    for (int i = 0; i < 256; ++i) probe(std::tan(u1(rng)), std::tan(u2(rng)));
    // Random tangents almost never land deep in the tails, so walk a
    // deterministic ladder out to 1e8 on both axes as well.
    std::vector<double> ladder{0.0};
    for (double v = 1.0; v <= 1e8; v *= 10.0) { ladder.push_back(v); ladder.push_back(-v); }
    for (double x1 : ladder)
        for (double x2 : ladder)
            if (psi.support1.contains(x1) && psi.support2.contains(x2)) probe(x1, x2);
    return bound;
}

inline TestFunction make_test_function(const std::string& name,
                                       const std::vector<double>& params = {}) {
    TestFunction psi;
    psi.name = name;
    psi.params = params;
    if (name == "canonical") {
        if (!params.empty())
            throw std::invalid_argument("test function 'canonical' takes no parameters");
        psi.f = [](double x1, double x2) { return 1.0 / plane_weight(x1, x2); };
    } else if (name == "gaussian") {
        // params: center1, center2, width (all optional)
        const double c1 = params.size() > 0 ? params[0] : 0.0;
        const double c2 = params.size() > 1 ? params[1] : 0.0;
        const double w = params.size() > 2 ? params[2] : 1.0;
        if (!(w > 0.0)) throw std::invalid_argument("gaussian test function needs positive width");
        psi.f = [c1, c2, w](double x1, double x2) {
            const double d1 = (x1 - c1) / w, d2 = (x2 - c2) / w;
            return std::exp(-0.5 * (d1 * d1 + d2 * d2));
        };
    } else if (name == "rational_bump") {
        // params: center1, center2, width1, width2 (all optional)
        const double c1 = params.size() > 0 ? params[0] : 0.0;
        const double c2 = params.size() > 1 ? params[1] : 0.0;
        const double w1 = params.size() > 2 ? params[2] : 1.0;
        const double w2 = params.size() > 3 ? params[3] : 1.0;
        if (!(w1 > 0.0) || !(w2 > 0.0))
            throw std::invalid_argument("rational_bump test function needs positive widths");
        psi.f = [c1, c2, w1, w2](double x1, double x2) {
            const double d1 = (x1 - c1) / w1, d2 = (x2 - c2) / w2;
            return 1.0 / ((1.0 + d1 * d1) * (1.0 + d2 * d2));
        };
    } else {
        throw std::invalid_argument("unknown test function '" + name + "'");
    }
    verify_test_function(psi);
    return psi;
}

namespace detail {

// Neville's recurrence for the interpolating polynomial through
// (ys[i], fs[i]), evaluated at zero.
inline double neville_at_zero(const std::vector<double>& ys, const std::vector<double>& fs,
                              std::size_t lo, std::size_t hi) {
    std::vector<double> p(fs.begin() + lo, fs.begin() + hi);
    const std::size_t n = p.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i) {
            const double yi = ys[lo + i], yj = ys[lo + i + level];
            p[i] = (yj * p[i] - yi * p[i + 1]) / (yj - yi);
        }
    return p[0];
}

}   // namespace detail

struct InversionOptions {
    int k_min = 1;            // coarsest level, y = 2^-k_min
    int k_max = 10;           // finest level
    int extrap_points = 4;    // window length for the Neville step
    double tol = 1e-5;        // on the window-shift instability
    bool early_stop = true;
    QuadratureConfig quad{};
};

struct InversionSample {
    double y = 0.0;
    double value = 0.0;
    double quad_error = 0.0;
    bool converged = false;
};

struct InversionResult {
    double value = 0.0;
    double instability = pos_inf;   // spread between shifted extrapolation windows
    bool converged = false;
    bool quadrature_ok = true;
    std::vector<InversionSample> trace;
};

// q is any callable (complex, complex) -> complex defined on the product
// of two upper half-planes. Hints mark x-locations where Im q spikes as y
// shrinks (atom positions, line carriers); they are optional but cut the
// refinement depth substantially.
template <class Q>
InversionResult stieltjes_functional(Q&& q, const TestFunction& psi,
                                     const PlaneHints& hints = {},
                                     const InversionOptions& opt = {}) {
    if (opt.k_min < 0 || opt.k_max < opt.k_min)
        throw std::invalid_argument("stieltjes_functional: bad level range");
    if (opt.extrap_points < 2)
        throw std::invalid_argument("stieltjes_functional: need at least two extrapolation points");

    InversionResult out;
    std::vector<double> ys, fs;

    for (int k = opt.k_min; k <= opt.k_max; ++k) {
        const double y = std::ldexp(1.0, -k);
        QuadOutcome F = integrate_plane_rect(
            [&q, &psi, y](double x1, double x2) {
                const double w = psi(x1, x2);
                if (w == 0.0) return complex(0.0, 0.0);
                return complex(w * std::imag(q(complex(x1, y), complex(x2, y))), 0.0);
            },
            psi.support1, psi.support2, hints.axis1, hints.axis2, opt.quad);

        InversionSample sample{y, F.value.real(), F.error, F.converged};
        out.trace.push_back(sample);
        out.quadrature_ok = out.quadrature_ok && F.converged;
        ys.push_back(y);
        fs.push_back(sample.value);

        const std::size_t n = ys.size();
        const std::size_t w = static_cast<std::size_t>(opt.extrap_points);
        if (n < w + 1) continue;
        const double e0 = detail::neville_at_zero(ys, fs, n - w, n);
        const double e1 = detail::neville_at_zero(ys, fs, n - w - 1, n - 1);
        out.value = e0;
        out.instability = std::abs(e0 - e1);
        out.converged = out.quadrature_ok && out.instability <= opt.tol;
        if (out.converged && opt.early_stop) return out;
    }
    return out;
}

}   // namespace hn2
