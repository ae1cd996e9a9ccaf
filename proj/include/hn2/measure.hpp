#pragma once

// Structured positive Borel measures on the line and the plane. A measure
// is a finite sum of components with known shape (atoms, Lebesgue pieces,
// named densities, lines, products), which is what makes exact atom queries
// and reliable integration possible.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "density.hpp"
#include "halfplane.hpp"
#include "quadrature.hpp"

namespace hn2 {

struct Atom1D {
    double location = 0.0;
    double weight = 0.0;
};

struct Lebesgue1D {
    double scale = 1.0;
};

using Component1D = std::variant<Atom1D, Lebesgue1D, Density1D>;

struct Measure1D {
    std::vector<Component1D> components;

    static Measure1D zero() { return {}; }
    static Measure1D atom(double location, double weight) {
        return {{Atom1D{location, weight}}};
    }
    static Measure1D lebesgue(double scale) { return {{Lebesgue1D{scale}}}; }
    static Measure1D density(Density1D d) { return {{std::move(d)}}; }
};

struct Atom2D {
    double p1 = 0.0, p2 = 0.0;
    double weight = 0.0;
};

struct Product2D {
    Measure1D m1, m2;
};

// Measure carried by the line t2 = slope*t1 + intercept, parameterized by
// t1: integrates h as  int h(t, slope*t + intercept) density(t) dt.
struct Line2D {
    double slope = -1.0;
    double intercept = 0.0;
    Density1D density;
};

struct Planar2D {
    Density2D density;
    Region2D support;
};

using Component2D = std::variant<Atom2D, Product2D, Line2D, Planar2D>;

struct Measure2D {
    std::vector<Component2D> components;

    static Measure2D zero() { return {}; }
    bool empty() const { return components.empty(); }
};

// ---------------------------------------------------------------------------
// Integration against 1-D measures. The domain interval distinguishes plane
// measures (whole line, compactified) from torus-edge measures on (0, 2*pi).

namespace detail {

inline bool whole_line(const Interval& domain) {
    return !(domain.lo > neg_inf) && !(domain.hi < pos_inf);
}

template <class G>
QuadOutcome quad_over(G&& g, const Interval& range, const std::vector<QuadHint>& hints,
                      const QuadratureConfig& cfg) {
    if (range.empty()) return {};
    if (range.lo > neg_inf && range.hi < pos_inf)
        return integrate_finite(std::forward<G>(g), range.lo, range.hi, hints, cfg);
    return integrate_real_line(std::forward<G>(g), range, hints, cfg);
}

} // namespace detail

template <class G>
QuadOutcome integrate_1d(const Measure1D& m, G&& g, const Interval& domain,
                         const std::vector<QuadHint>& hints, const QuadratureConfig& cfg) {
    QuadOutcome out;
    for (const auto& comp : m.components) {
        if (const auto* a = std::get_if<Atom1D>(&comp)) {
            if (domain.contains(a->location)) {
                out.value += a->weight * std::complex<double>(g(a->location));
                out.evals += 1;
            }
        } else if (const auto* l = std::get_if<Lebesgue1D>(&comp)) {
            if (l->scale == 0.0) continue;
            const double s = l->scale;
            out += detail::quad_over([&g, s](double t) { return s * std::complex<double>(g(t)); },
                                     domain, hints, cfg);
        } else if (const auto* d = std::get_if<Density1D>(&comp)) {
            const Interval range = d->support.clipped_to(domain);
            out += detail::quad_over([&g, d](double t) { return d->f(t) * std::complex<double>(g(t)); },
                                     range, hints, cfg);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Integration against 2-D measures.

struct PlaneHints {
    std::vector<QuadHint> axis1;
    std::vector<QuadHint> axis2;
};

namespace detail {

inline QuadOutcome integrate_product_separable(const Product2D& p,
                                               const std::vector<SeparableTerm>& terms,
                                               const PlaneHints& hints, const QuadratureConfig& cfg,
                                               const Interval& domain1, const Interval& domain2) {
    QuadOutcome out;
    for (const auto& term : terms) {
        QuadOutcome i1 = integrate_1d(p.m1, term.f1, domain1, hints.axis1, cfg);
        QuadOutcome i2 = integrate_1d(p.m2, term.f2, domain2, hints.axis2, cfg);
        QuadOutcome prod;
        prod.value = i1.value * i2.value;
        prod.error = std::abs(i1.value) * i2.error + std::abs(i2.value) * i1.error +
                     i1.error * i2.error;
        prod.converged = i1.converged && i2.converged;
        prod.evals = i1.evals + i2.evals;
        out += prod;
    }
    return out;
}

}   // namespace detail

// Integration of g against the measure. The optional domain intervals
// restrict both axes; plane measures use the default whole-line domains,
// torus-side measures pass (0, 2*pi). When a separable decomposition of g
// is supplied, product components use it; all other components evaluate g
// pointwise, so the two views of the integrand must agree.
template <class G>
QuadOutcome integrate(const Measure2D& mu, G&& g, const std::vector<SeparableTerm>& terms,
                      const PlaneHints& hints, const QuadratureConfig& cfg,
                      const Interval& domain1 = {}, const Interval& domain2 = {}) {
    QuadOutcome out;

    for (const auto& comp : mu.components) {
        if (const auto* a = std::get_if<Atom2D>(&comp)) {
            if (domain1.contains(a->p1) && domain2.contains(a->p2)) {
                out.value += a->weight * std::complex<double>(g(a->p1, a->p2));
                out.evals += 1;
            }
        } else if (const auto* p = std::get_if<Product2D>(&comp)) {
            if (!terms.empty()) {
                out += detail::integrate_product_separable(*p, terms, hints, cfg, domain1, domain2);
                continue;
            }
            // No decomposition given: iterated integral, outer over the
            // second factor. The inner tolerance is tightened so inner noise
            // stays below the outer error estimate. Slow for hard factors;
            // meant for one-off integrands only.
            QuadratureConfig inner_cfg = cfg;
            inner_cfg.abs_tol = cfg.abs_tol * 0.02;
            inner_cfg.rel_tol = cfg.rel_tol * 0.1;
            double worst_inner = 0.0;
            bool inner_ok = true;
            std::int64_t inner_evals = 0;
            auto outer_f = [&](double t2) {
                QuadOutcome in = integrate_1d(p->m1,
                                              [&g, t2](double t1) { return g(t1, t2); },
                                              domain1, hints.axis1, inner_cfg);
                worst_inner = std::max(worst_inner, in.error);
                inner_ok = inner_ok && in.converged;
                inner_evals += in.evals;
                return in.value;
            };
            QuadOutcome o = integrate_1d(p->m2, outer_f, domain2, hints.axis2, cfg);
            o.evals += inner_evals;
            o.error += worst_inner * pi;   // outer-domain measure of the compactified axis
            o.converged = o.converged && inner_ok;
            out += o;
        } else if (const auto* ln = std::get_if<Line2D>(&comp)) {
            std::vector<QuadHint> h = hints.axis1;
            if (ln->slope != 0.0) {
                for (const auto& h2 : hints.axis2)
                    h.push_back(QuadHint{(h2.t - ln->intercept) / ln->slope,
                                         std::abs(h2.width / ln->slope)});
            }
            const double a = ln->slope, b = ln->intercept;
            const Density1D& dens = ln->density;
            out += detail::quad_over(
                [&g, a, b, &dens](double t) { return dens.f(t) * std::complex<double>(g(t, a * t + b)); },
                dens.support.clipped_to(domain1), h, cfg);
        } else if (const auto* pd = std::get_if<Planar2D>(&comp)) {
            for (const auto& rect : pd->support.rectangles()) {
                const Interval r1 = rect.first.clipped_to(domain1);
                const Interval r2 = rect.second.clipped_to(domain2);
                if (r1.empty() || r2.empty()) continue;
                const Density2D& dens = pd->density;
                const Region2D& reg = pd->support;
                out += integrate_plane_rect(
                    [&g, &dens, &reg](double t1, double t2) {
                        if (!reg.contains(t1, t2)) return std::complex<double>(0, 0);
                        return dens.f(t1, t2) * std::complex<double>(g(t1, t2));
                    },
                    r1, r2, hints.axis1, hints.axis2, cfg);
            }
        }
    }
    return out;
}

template <class G>
QuadOutcome integrate(const Measure2D& mu, G&& g, const PlaneHints& hints,
                      const QuadratureConfig& cfg, const Interval& domain1 = {},
                      const Interval& domain2 = {}) {
    return integrate(mu, std::forward<G>(g), {}, hints, cfg, domain1, domain2);
}

template <class G>
QuadOutcome integrate(const Measure2D& mu, G&& g, const QuadratureConfig& cfg) {
    return integrate(mu, std::forward<G>(g), {}, PlaneHints{}, cfg);
}

// ---------------------------------------------------------------------------
// Mass and growth. Divergent quantities are reported as +infinity, never as
// exceptions, so certification can record them.

namespace detail {

// Dyadic truncation probe for a possibly divergent non-negative integral.
// P(R) over |t| <= R for growing R; classifies the limit as finite (with a
// geometric tail estimate) or +infinity.
template <class P>
double truncation_probe(P&& partial) {
    double prev = partial(2.0);
    double prev_inc = prev;
    for (double r = 8.0; r <= 2.2e5; r *= 4.0) {
        const double cur = partial(r);
        const double inc = cur - prev;
        if (inc <= 1e-7 * std::max(1.0, cur)) return cur;
        if (prev_inc > 0.0 && inc < 0.85 * prev_inc) {
            const double ratio = inc / prev_inc;
            if (r > 1e4) return cur + inc * ratio / (1.0 - ratio);
        }
        prev = cur;
        prev_inc = inc;
    }
    return pos_inf;
}

inline double mass_1d(const Measure1D& m, const Interval& domain, const QuadratureConfig& cfg) {
    double total = 0.0;
    for (const auto& comp : m.components) {
        if (const auto* a = std::get_if<Atom1D>(&comp)) {
            if (domain.contains(a->location)) total += a->weight;
        } else if (const auto* l = std::get_if<Lebesgue1D>(&comp)) {
            if (l->scale == 0.0) continue;
            if (whole_line(domain) || domain.lo <= neg_inf || domain.hi >= pos_inf)
                return pos_inf;
            total += l->scale * (domain.hi - domain.lo);
        } else if (const auto* d = std::get_if<Density1D>(&comp)) {
            const Interval range = d->support.clipped_to(domain);
            if (range.empty()) continue;
            QuadratureConfig probe_cfg = cfg;
            probe_cfg.abs_tol = std::max(cfg.abs_tol, 1e-9);
            const double v = truncation_probe([&](double r) {
                const Interval clip = range.clipped_to(Interval{-r, r});
                if (clip.empty()) return 0.0;
                return quad_over([d](double t) { return std::complex<double>(d->f(t)); },
                                 clip, {}, probe_cfg)
                    .value.real();
            });
            if (v == pos_inf) return pos_inf;
            total += v;
        }
    }
    return total;
}

} // namespace detail

// Total mass of the measure; +infinity when any component is unbounded.
inline double total_mass(const Measure2D& mu, const QuadratureConfig& cfg = {}) {
    double total = 0.0;
    const Interval line{};
    for (const auto& comp : mu.components) {
        if (const auto* a = std::get_if<Atom2D>(&comp)) {
            total += a->weight;
        } else if (const auto* p = std::get_if<Product2D>(&comp)) {
            const double m1 = detail::mass_1d(p->m1, line, cfg);
            const double m2 = detail::mass_1d(p->m2, line, cfg);
            if (m1 == 0.0 || m2 == 0.0) continue;   // zero factor absorbs an infinite one
            const double m = m1 * m2;
            if (m == pos_inf) return pos_inf;
            total += m;
        } else if (const auto* ln = std::get_if<Line2D>(&comp)) {
            Measure1D carrier = Measure1D::density(ln->density);
            const double m = detail::mass_1d(carrier, line, cfg);
            if (m == pos_inf) return pos_inf;
            total += m;
        } else if (const auto* pd = std::get_if<Planar2D>(&comp)) {
            QuadratureConfig probe_cfg = cfg;
            probe_cfg.abs_tol = std::max(cfg.abs_tol, 1e-9);
            const double v = detail::truncation_probe([&](double r) {
                double acc = 0.0;
                for (const auto& rect : pd->support.rectangles()) {
                    const Interval s1 = rect.first.clipped_to(Interval{-r, r});
                    const Interval s2 = rect.second.clipped_to(Interval{-r, r});
                    if (s1.empty() || s2.empty()) continue;
                    const Density2D& dens = pd->density;
                    const Region2D& reg = pd->support;
                    acc += integrate_plane_rect(
                               [&dens, &reg](double t1, double t2) {
                                   if (!reg.contains(t1, t2)) return std::complex<double>(0, 0);
                                   return std::complex<double>(dens.f(t1, t2));
                               },
                               s1, s2, {}, {}, probe_cfg)
                               .value.real();
                }
                return acc;
            });
            if (v == pos_inf) return pos_inf;
            total += v;
        }
    }
    return total;
}

// Separable view of the growth weight 1/((1+t1^2)(1+t2^2)).
inline std::vector<SeparableTerm> growth_terms() {
    auto cp = [](double t) { return complex(1.0 / (1.0 + t * t), 0.0); };
    return {SeparableTerm{cp, cp}};
}

// Integral of 1/((1+t1^2)(1+t2^2)); finite exactly when the measure admits
// the representation growth bound. +infinity on divergence.
inline double growth_functional(const Measure2D& mu, const QuadratureConfig& cfg = {}) {
    QuadOutcome o = integrate(mu, [](double t1, double t2) { return 1.0 / plane_weight(t1, t2); },
                              growth_terms(), PlaneHints{}, cfg);
    if (o.converged) return o.value.real();
    // The compactified integrand blows up at the boundary exactly when the
    // growth integral diverges; classify with truncations.
    const double probe = detail::truncation_probe([&](double r) {
        QuadratureConfig probe_cfg = cfg;
        probe_cfg.abs_tol = std::max(cfg.abs_tol, 1e-9);
        auto clipped = [r](double t) {
            return std::abs(t) > r ? complex(0.0, 0.0) : complex(1.0 / (1.0 + t * t), 0.0);
        };
        QuadOutcome t = integrate(
            mu,
            [r](double t1, double t2) {
                if (std::abs(t1) > r || std::abs(t2) > r) return 0.0;
                return 1.0 / plane_weight(t1, t2);
            },
            {SeparableTerm{clipped, clipped}},
            PlaneHints{{QuadHint{-r, 0}, QuadHint{r, 0}}, {QuadHint{-r, 0}, QuadHint{r, 0}}},
            probe_cfg);
        return t.value.real();
    });
    return probe;
}

// Weight the measure assigns to the single point (p1, p2). Exact for the
// structured model: only explicit atoms (or products of atomic factors)
// charge points.
inline double atom_at(const Measure2D& mu, double p1, double p2) {
    auto near = [](double a, double b) {
        return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a) + std::abs(b));
    };
    double w = 0.0;
    for (const auto& comp : mu.components) {
        if (const auto* a = std::get_if<Atom2D>(&comp)) {
            if (near(a->p1, p1) && near(a->p2, p2)) w += a->weight;
        } else if (const auto* p = std::get_if<Product2D>(&comp)) {
            double w1 = 0.0, w2 = 0.0;
            for (const auto& c : p->m1.components)
                if (const auto* at = std::get_if<Atom1D>(&c))
                    if (near(at->location, p1)) w1 += at->weight;
            for (const auto& c : p->m2.components)
                if (const auto* at = std::get_if<Atom1D>(&c))
                    if (near(at->location, p2)) w2 += at->weight;
            w += w1 * w2;
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// Validation: weights and scales must be non-negative; densities are
// spot-checked for non-negativity on their support with a seeded sampler.

inline void validate_density_1d(const Density1D& d, std::mt19937_64& rng) {
    const double ulo = std::atan(std::max(d.support.lo, -1e300));
    const double uhi = std::atan(std::min(d.support.hi, 1e300));
    std::uniform_real_distribution<double> u(ulo, uhi);
    for (int i = 0; i < 64; ++i) {
        const double t = std::tan(u(rng));
        const double v = d.f(t);
        if (v < -1e-12 * std::max(1.0, std::abs(v)))
            throw std::invalid_argument("density '" + d.name + "' is negative on its support (t = " +
                                        std::to_string(t) + ")");
    }
}

inline void validate_measure(const Measure2D& mu, std::uint64_t seed = 20240901) {
    std::mt19937_64 rng(seed);
    for (const auto& comp : mu.components) {
        if (const auto* a = std::get_if<Atom2D>(&comp)) {
            if (a->weight < 0.0) throw std::invalid_argument("atom weight must be non-negative");
        } else if (const auto* p = std::get_if<Product2D>(&comp)) {
            for (const Measure1D* m : {&p->m1, &p->m2})
                for (const auto& c : m->components) {
                    if (const auto* at = std::get_if<Atom1D>(&c)) {
                        if (at->weight < 0.0)
                            throw std::invalid_argument("atom weight must be non-negative");
                    } else if (const auto* lb = std::get_if<Lebesgue1D>(&c)) {
                        if (lb->scale < 0.0)
                            throw std::invalid_argument("lebesgue scale must be non-negative");
                    } else if (const auto* dn = std::get_if<Density1D>(&c)) {
                        validate_density_1d(*dn, rng);
                    }
                }
        } else if (const auto* ln = std::get_if<Line2D>(&comp)) {
            validate_density_1d(ln->density, rng);
        } else if (const auto* pd = std::get_if<Planar2D>(&comp)) {
            for (const auto& rect : pd->support.rectangles()) {
                const double u1lo = std::atan(std::max(rect.first.lo, -1e300));
                const double u1hi = std::atan(std::min(rect.first.hi, 1e300));
                const double u2lo = std::atan(std::max(rect.second.lo, -1e300));
                const double u2hi = std::atan(std::min(rect.second.hi, 1e300));
                std::uniform_real_distribution<double> u1(u1lo, u1hi), u2(u2lo, u2hi);
                for (int i = 0; i < 64; ++i) {
                    const double t1 = std::tan(u1(rng)), t2 = std::tan(u2(rng));
                    if (!pd->support.contains(t1, t2)) continue;
                    const double v = pd->density.f(t1, t2);
                    if (v < -1e-12 * std::max(1.0, std::abs(v)))
                        throw std::invalid_argument("density '" + pd->density.name +
                                                    "' is negative on its support");
                }
            }
        }
    }
}

} // namespace hn2
