#pragma once

// Built-in worked examples. Each entry pairs representation data with an
// independent closed form, so every pipeline stage can be checked against
// values that do not come from this library's own quadrature. Entries also
// record whether the data actually belongs to the class; the lone
// counterexample is kept on purpose to exercise the failure paths.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "density.hpp"
#include "measure.hpp"
#include "representation.hpp"

namespace hn2 {

struct CorpusEntry {
    std::string id;
    std::string title;
    Representation rep;
    std::function<complex(complex, complex)> closed_form;
    bool class_member = true;       // false: fails certification by design
    // Bound on |evaluate - closed_form| over the standard grid; entries with
    // heavier quadrature (square-root tails) get a wider margin.
    double oracle_tol = 1e-6;
    // Companion data whose product components are scaled up by pi; used to
    // exercise the per-component scale-fitting diagnostic.
    std::optional<Representation> mismatched;
    // Spike locations for boundary-limit quadrature (atom positions and
    // other carriers on the axes).
    PlaneHints inversion_hints;
    std::string notes;
};

namespace detail {

inline std::vector<CorpusEntry> build_corpus() {
    std::vector<CorpusEntry> entries;

    {
        CorpusEntry e;
        e.id = "ex1";
        e.title = "reciprocal of the second variable";
        e.rep.a = 0.0;
        e.rep.b1 = 0.0;
        e.rep.b2 = 0.0;
        e.rep.mu.components.push_back(
            Product2D{Measure1D::lebesgue(pi), Measure1D::atom(0.0, 1.0)});
        e.closed_form = [](complex z1, complex z2) {
            (void)z1;
            return -1.0 / z2;
        };
        e.inversion_hints.axis2.push_back(QuadHint{0.0, 0.5});
        e.notes = "flat measure in t1 against a point mass at t2 = 0";
        entries.push_back(std::move(e));
    }

    {
        CorpusEntry e;
        e.id = "ex2";
        e.title = "rational function carried by the anti-diagonal";
        e.rep.a = 2.0;
        e.rep.b1 = 1.0;
        e.rep.b2 = 0.0;
        Line2D line;
        line.slope = -1.0;
        line.intercept = 0.0;
        line.density = make_density_1d("polynomial", {pi, 2.0 * pi, pi}, Interval{});
        e.rep.mu.components.push_back(std::move(line));
        e.closed_form = [](complex z1, complex z2) {
            return 2.0 + z1 + (z1 * z2 + z2 - z1 - 1.0) / (z1 + z2);
        };
        e.oracle_tol = 1e-5;
        e.notes = "density pi (1 + t)^2 dt along t2 = -t1";
        entries.push_back(std::move(e));
    }

    {
        CorpusEntry e;
        e.id = "ex3";
        e.title = "product of shifted square roots";
        const double a3 = 7.0 + 5.0 / std::sqrt(2.0);

        auto build = [a3](double scale1, double scale2) {
            Representation r;
            r.a = a3;
            r.b1 = 0.0;
            r.b2 = 0.0;
            r.mu.components.push_back(Product2D{
                Measure1D::density(make_density_1d("sqrt_neg", {scale1}, Interval{neg_inf, 0.0})),
                Measure1D::lebesgue(1.0)});
            r.mu.components.push_back(Product2D{
                Measure1D::lebesgue(1.0),
                Measure1D::density(make_density_1d("sqrt_neg", {scale2}, Interval{neg_inf, 0.0}))});
            Planar2D cross;
            cross.density = make_density_2d("sqrt_neg_product", {1.0});
            cross.support = Region2D::opposite();
            r.mu.components.push_back(std::move(cross));
            return r;
        };
        e.rep = build(3.0, 2.0);
        e.mismatched = build(3.0 * pi, 2.0 * pi);
        e.closed_form = [](complex z1, complex z2) {
            return 1.0 + (2.0 + std::sqrt(z1)) * (3.0 + std::sqrt(z2));
        };
        e.oracle_tol = 1e-4;
        e.notes = "square-root densities on the negative axes plus a mixed-sign planar part; "
                  "the mismatched variant scales the product components by pi";
        entries.push_back(std::move(e));
    }

    {
        CorpusEntry e;
        e.id = "delta_counterexample";
        e.title = "point mass at the origin (not in the class)";
        e.rep.a = 0.0;
        e.rep.b1 = 0.0;
        e.rep.b2 = 0.0;
        e.rep.mu.components.push_back(Atom2D{0.0, 0.0, pi * pi});
        e.closed_form = [](complex z1, complex z2) {
            return kernel_K(z1, z2, 0.0, 0.0);
        };
        e.class_member = false;
        e.inversion_hints.axis1.push_back(QuadHint{0.0, 0.5});
        e.inversion_hints.axis2.push_back(QuadHint{0.0, 0.5});
        e.notes = "finite mass, yet the orthogonality residual is bounded away from zero";
        entries.push_back(std::move(e));
    }

    {
        CorpusEntry e;
        e.id = "const_real";
        e.title = "real constant";
        e.rep.a = 5.0;
        e.closed_form = [](complex, complex) { return complex(5.0, 0.0); };
        e.notes = "empty measure, zero linear part";
        entries.push_back(std::move(e));
    }

    {
        CorpusEntry e;
        e.id = "one_var_embed";
        e.title = "one-variable function of z1 embedded in two variables";
        e.rep.a = 0.0;
        e.rep.b1 = 1.0;
        e.rep.b2 = 0.0;
        // m (x) lebesgue reproduces the one-variable integral term of the
        // first coordinate; the flat factor integrates the kernel's second
        // slot away exactly.
        e.rep.mu.components.push_back(
            Product2D{Measure1D::atom(0.0, pi), Measure1D::lebesgue(1.0)});
        e.closed_form = [](complex z1, complex z2) {
            (void)z2;
            return z1 - 1.0 / z1;
        };
        e.inversion_hints.axis1.push_back(QuadHint{0.0, 0.5});
        e.notes = "embedding of z - 1/z; the point mass sits on the line t1 = 0";
        entries.push_back(std::move(e));
    }

    return entries;
}

}   // namespace detail

inline const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = detail::build_corpus();
    return entries;
}

inline const CorpusEntry& corpus_entry(const std::string& id) {
    for (const auto& e : corpus())
        if (e.id == id) return e;
    throw std::invalid_argument("unknown corpus id '" + id + "'");
}

inline std::vector<std::string> corpus_ids() {
    std::vector<std::string> ids;
    for (const auto& e : corpus()) ids.push_back(e.id);
    return ids;
}

// The two-variable data of a one-variable representation: the measure
// m (x) lebesgue makes the second variable invisible and reproduces the
// one-variable integral term in the first.
inline Representation embed_first_variable(const Representation1D& rep) {
    Representation out;
    out.a = rep.a;
    out.b1 = rep.b;
    out.b2 = 0.0;
    if (!rep.mu.components.empty())
        out.mu.components.push_back(Product2D{rep.mu, Measure1D::lebesgue(1.0)});
    return out;
}

}   // namespace hn2
