#pragma once

// Measures on the closed bi-torus [0, 2*pi)^2 and the transport of plane
// representation data onto it. The torus carrier splits into four strata:
// the corner (0, 0), the two edges {0} x (0, 2*pi) and (0, 2*pi) x {0},
// and the open interior (0, 2*pi)^2. Linear coefficients land on the edges
// as Lebesgue multiples, plane mass lands in the interior reweighted by
// 4 / ((1 + t1^2)(1 + t2^2)).

#include <stdexcept>
#include <string>
#include <utility>

#include "halfplane.hpp"
#include "measure.hpp"

namespace hn2 {

// Interior measures come in two flavours. Components born on the torus
// (transported atoms and product factors) are stored in s-coordinates and
// integrated over (0, 2*pi)^2 directly. Components that only have a clean
// description on the plane (line carriers, planar densities) are kept in
// t-coordinates together with the pullback weight, and every torus integral
// against them routes through the angle map.
struct TorusMeasure {
    double corner_weight = 0.0;
    Measure1D edge1;              // on {0} x (0, 2*pi), variable s2; carries b1
    Measure1D edge2;              // on (0, 2*pi) x {0}, variable s1; carries b2
    Measure2D interior;           // s-coordinates
    Measure2D interior_pullback;  // t-coordinates, weight 4 / plane_weight implied

    bool empty() const {
        return corner_weight == 0.0 && edge1.components.empty() && edge2.components.empty() &&
               interior.empty() && interior_pullback.empty();
    }
};

struct TorusHints {
    std::vector<QuadHint> axis1;   // s1 locations
    std::vector<QuadHint> axis2;   // s2 locations
};

namespace detail {

// Pushforward of (2 / (1 + t^2)) dm(t) under the angle map. This is the
// per-axis share of the interior transport weight, so mapping both factors
// of a product measure through here lands the whole 2-D transport.
inline Measure1D angle_map_1d(const Measure1D& m) {
    Measure1D out;
    for (const auto& comp : m.components) {
        if (const auto* a = std::get_if<Atom1D>(&comp)) {
            out.components.push_back(
                Atom1D{torus_angle(a->location), 2.0 * a->weight / (1.0 + a->location * a->location)});
        } else if (const auto* l = std::get_if<Lebesgue1D>(&comp)) {
            // (2 / (1 + t^2)) * c dt is exactly c ds: flat stays flat.
            out.components.push_back(Lebesgue1D{l->scale});
        } else if (const auto* d = std::get_if<Density1D>(&comp)) {
            Density1D mapped;
            mapped.name = "angle:" + d->name;
            mapped.params = d->params;
            const Density1D src = *d;
            // (2 / (1 + t^2)) f(t) dt = f(t(s)) ds; the Jacobian of the angle
            // map cancels the transport weight, leaving the bare composition.
            mapped.f = [src](double s) { return src(torus_angle_inverse(s)); };
            const double lo = src.support.lo == neg_inf ? 0.0 : torus_angle(src.support.lo);
            const double hi = src.support.hi == pos_inf ? 2.0 * pi : torus_angle(src.support.hi);
            mapped.support = Interval{lo, hi};
            out.components.push_back(std::move(mapped));
        }
    }
    return out;
}

}   // namespace detail

// Transports the representation data (mu, b1, b2) to the torus. The plane
// mass is reweighted into the interior, b_j becomes the flat measure
// 2*pi*b_j ds on the edge where the j-th angle vanishes, and the corner
// carries nothing.
inline TorusMeasure plane_to_torus(const Measure2D& mu, double b1, double b2) {
    TorusMeasure nu;
    nu.corner_weight = 0.0;
    if (b1 > 0.0) nu.edge1 = Measure1D::lebesgue(2.0 * pi * b1);
    if (b2 > 0.0) nu.edge2 = Measure1D::lebesgue(2.0 * pi * b2);

    for (const auto& comp : mu.components) {
        if (const auto* a = std::get_if<Atom2D>(&comp)) {
            const double w = 4.0 * a->weight / plane_weight(a->p1, a->p2);
            nu.interior.components.push_back(Atom2D{torus_angle(a->p1), torus_angle(a->p2), w});
        } else if (const auto* p = std::get_if<Product2D>(&comp)) {
            // The weight 4 / ((1+t1^2)(1+t2^2)) is exactly the product of the
            // per-axis Jacobians ds = 2 dt / (1+t^2), so mapping each factor
            // through the angle map transports the product measure whole.
            nu.interior.components.push_back(
                Product2D{detail::angle_map_1d(p->m1), detail::angle_map_1d(p->m2)});
        } else {
            // Line carriers and planar densities stay in t-coordinates.
            nu.interior_pullback.components.push_back(comp);
        }
    }
    return nu;
}

// Integral of g(s1, s2) over the full closed torus against nu. A separable
// decomposition of g (in the angle variables) accelerates native interior
// products; pullback components never take the product form, so the
// pointwise view suffices there.
template <class G>
QuadOutcome integrate_torus(const TorusMeasure& nu, G&& g, const std::vector<SeparableTerm>& terms,
                            const TorusHints& hints, const QuadratureConfig& cfg) {
    const Interval circle{0.0, 2.0 * pi};
    QuadOutcome out;

    if (nu.corner_weight != 0.0) {
        out.value += nu.corner_weight * std::complex<double>(g(0.0, 0.0));
        out.evals += 1;
    }
    if (!nu.edge1.components.empty())
        out += integrate_1d(nu.edge1, [&g](double s2) { return g(0.0, s2); }, circle, hints.axis2, cfg);
    if (!nu.edge2.components.empty())
        out += integrate_1d(nu.edge2, [&g](double s1) { return g(s1, 0.0); }, circle, hints.axis1, cfg);
    if (!nu.interior.empty()) {
        PlaneHints ph{hints.axis1, hints.axis2};
        out += integrate(nu.interior, g, terms, ph, cfg, circle, circle);
    }
    if (!nu.interior_pullback.empty()) {
        // Pull hints back through the angle map; widths scale with ds/dt.
        PlaneHints ph;
        auto pull = [](const std::vector<QuadHint>& hs) {
            std::vector<QuadHint> r;
            for (const auto& h : hs) {
                const double t = torus_angle_inverse(h.t);
                r.push_back(QuadHint{t, h.width * (1.0 + t * t) / 2.0});
            }
            return r;
        };
        ph.axis1 = pull(hints.axis1);
        ph.axis2 = pull(hints.axis2);
        out += integrate(nu.interior_pullback,
                         [&g](double t1, double t2) {
                             return std::complex<double>(g(torus_angle(t1), torus_angle(t2))) *
                                    (4.0 / plane_weight(t1, t2));
                         },
                         ph, cfg);
    }
    return out;
}

template <class G>
QuadOutcome integrate_torus(const TorusMeasure& nu, G&& g, const TorusHints& hints,
                            const QuadratureConfig& cfg) {
    return integrate_torus(nu, std::forward<G>(g), {}, hints, cfg);
}

template <class G>
QuadOutcome integrate_torus(const TorusMeasure& nu, G&& g, const QuadratureConfig& cfg) {
    return integrate_torus(nu, std::forward<G>(g), {}, TorusHints{}, cfg);
}

// Total mass of nu. Finite whenever the source data had finite growth
// functional and finite linear coefficients.
inline double torus_mass(const TorusMeasure& nu, const QuadratureConfig& cfg = {}) {
    const Interval circle{0.0, 2.0 * pi};
    double total = nu.corner_weight;
    total += detail::mass_1d(nu.edge1, circle, cfg);
    total += detail::mass_1d(nu.edge2, circle, cfg);
    if (!nu.interior.empty()) {
        auto one = [](double) { return complex(1.0, 0.0); };
        QuadOutcome o = integrate(nu.interior, [](double, double) { return 1.0; },
                                  {SeparableTerm{one, one}}, PlaneHints{}, cfg, circle, circle);
        total += o.value.real();
    }
    if (!nu.interior_pullback.empty()) {
        // Interior pullback mass is four times the growth functional of the
        // untransported components.
        const double growth = growth_functional(nu.interior_pullback, cfg);
        if (growth == pos_inf) return pos_inf;
        total += 4.0 * growth;
    }
    return total;
}

}   // namespace hn2
