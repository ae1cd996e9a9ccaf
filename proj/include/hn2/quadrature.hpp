#pragma once

// Adaptive quadrature engine. Panels are refined globally (worst error
// first) with a fixed Gauss-Kronrod 7-15 rule per panel, in one and two
// dimensions. Infinite ranges are compactified by t = tan(u). Panels whose
// edge is an initial partition boundary receive an extended refinement
// budget, so integrable endpoint singularities (square-root tails, kinks)
// are resolved by geometric grading instead of exhausting the interior
// budget.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "density.hpp"

namespace hn2 {

struct QuadratureConfig {
    double abs_tol = 1e-9;
    double rel_tol = 1e-7;
    int max_refinements = 24;    // interior bisection depth per axis
    int tail_refinements = 72;   // extra depth for panels on a partition boundary
    std::int64_t max_panels = 60000;
};

struct QuadOutcome {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    bool converged = true;
    std::int64_t evals = 0;

    QuadOutcome& operator+=(const QuadOutcome& o) {
        value += o.value;
        error += o.error;
        converged = converged && o.converged;
        evals += o.evals;
        return *this;
    }
};

// One product term of a separable integrand: g(t1, t2) = f1(t1) * f2(t2).
// Every kernel in this library is a short sum of such terms, and against a
// product measure each term factors into two one-variable integrals. That
// factorization is the difference between thousands and billions of
// evaluations, so callers that know a decomposition should pass it.
struct SeparableTerm {
    std::function<std::complex<double>(double)> f1;
    std::function<std::complex<double>(double)> f2;
};

// Location hint for sharply localized integrand features (kernel poles sit
// at t = Re z with width Im z). Hints become initial panel boundaries.
struct QuadHint {
    double t = 0.0;
    double width = 0.0;
};

namespace qk {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1]; Gauss nodes are the
// odd-indexed Kronrod nodes.
inline constexpr int n15 = 15;
inline constexpr double x15[n15] = {
    -0.9914553711208126, -0.9491079123427585, -0.8648644233597691,
    -0.7415311855993944, -0.5860872354676911, -0.4058451513773972,
    -0.2077849550078985,  0.0,                 0.2077849550078985,
     0.4058451513773972,  0.5860872354676911,  0.7415311855993944,
     0.8648644233597691,  0.9491079123427585,  0.9914553711208126};
inline constexpr double w15[n15] = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018,
    0.14065325971552591, 0.16900472663926790, 0.19035057806478540,
    0.20443294007529889, 0.20948214108472782, 0.20443294007529889,
    0.19035057806478540, 0.16900472663926790, 0.14065325971552591,
    0.10479001032225018, 0.06309209262997855, 0.02293532201052922};
inline constexpr double wg15[n15] = {
    0.0,                 0.12948496616886969, 0.0,
    0.27970539148927664, 0.0,                 0.38183005050511894,
    0.0,                 0.41795918367346939, 0.0,
    0.38183005050511894, 0.0,                 0.27970539148927664,
    0.0,                 0.12948496616886969, 0.0};

} // namespace qk

namespace detail {

struct Panel1D {
    double a, b;
    std::complex<double> value;
    double error;
    int depth;
    bool edge_lo, edge_hi;   // endpoint is an initial partition boundary
};

template <class F>
void eval_panel_1d(F& f, Panel1D& p) {
    const double mid = 0.5 * (p.a + p.b);
    const double half = 0.5 * (p.b - p.a);
    std::complex<double> k(0, 0), g(0, 0);
    for (int i = 0; i < qk::n15; ++i) {
        const std::complex<double> v = f(mid + half * qk::x15[i]);
        k += qk::w15[i] * v;
        if (qk::wg15[i] != 0.0) g += qk::wg15[i] * v;
    }
    p.value = half * k;
    p.error = std::abs(half * (k - g));
}

} // namespace detail

// Integrate f over the union of [breaks[i], breaks[i+1]]. Initial partition
// points mark candidate singularity locations; panels that still touch one
// are allowed the extended tail budget.
template <class F>
QuadOutcome integrate_partition_1d(F&& f, const std::vector<double>& breaks,
                                   const QuadratureConfig& cfg) {
    QuadOutcome out;
    if (breaks.size() < 2) return out;

    std::vector<detail::Panel1D> panels;
    panels.reserve(64);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i] < breaks[i + 1])) continue;
        detail::Panel1D p{breaks[i], breaks[i + 1], {0, 0}, 0.0, 0, true, true};
        detail::eval_panel_1d(f, p);
        out.evals += qk::n15;
        panels.push_back(p);
    }
    if (panels.empty()) return out;

    std::vector<std::uint32_t> heap;
    auto cmp = [&panels](std::uint32_t l, std::uint32_t r) {
        if (panels[l].error != panels[r].error) return panels[l].error < panels[r].error;
        return l > r;   // ties resolved by index, keeps refinement deterministic
    };
    for (std::uint32_t i = 0; i < panels.size(); ++i) heap.push_back(i);
    std::make_heap(heap.begin(), heap.end(), cmp);

    std::complex<double> total(0, 0);
    double err_active = 0.0, err_frozen = 0.0;
    for (const auto& p : panels) { total += p.value; err_active += p.error; }

    const auto depth_limit = [&cfg](const detail::Panel1D& p) {
        return cfg.max_refinements + ((p.edge_lo || p.edge_hi) ? cfg.tail_refinements : 0);
    };

    std::int64_t since_resync = 0;
    while (!heap.empty()) {
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (err_active + err_frozen <= tol) break;
        if (std::int64_t(panels.size()) >= cfg.max_panels) break;

        std::pop_heap(heap.begin(), heap.end(), cmp);
        const std::uint32_t idx = heap.back();
        heap.pop_back();

        detail::Panel1D parent = panels[idx];
        if (parent.depth >= depth_limit(parent) ||
            parent.b - parent.a <= 8.0 * std::numeric_limits<double>::epsilon() *
                                        (std::abs(parent.a) + std::abs(parent.b) + 1.0)) {
            err_active -= parent.error;
            err_frozen += parent.error;
            continue;   // cannot refine further, error stays accounted
        }

        const double mid = 0.5 * (parent.a + parent.b);
        detail::Panel1D left{parent.a, mid, {0, 0}, 0.0, parent.depth + 1, parent.edge_lo, false};
        detail::Panel1D right{mid, parent.b, {0, 0}, 0.0, parent.depth + 1, false, parent.edge_hi};
        detail::eval_panel_1d(f, left);
        detail::eval_panel_1d(f, right);
        out.evals += 2 * qk::n15;

        total += left.value + right.value - parent.value;
        err_active += left.error + right.error - parent.error;

        panels[idx] = left;
        heap.push_back(idx);
        std::push_heap(heap.begin(), heap.end(), cmp);
        panels.push_back(right);
        heap.push_back(std::uint32_t(panels.size() - 1));
        std::push_heap(heap.begin(), heap.end(), cmp);

        if (++since_resync >= 1024) {   // kill accumulated drift in the running sums
            since_resync = 0;
            total = {0, 0};
            err_active = 0.0;
            for (std::uint32_t i : heap) { total += panels[i].value; err_active += panels[i].error; }
        }
    }

    std::complex<double> value(0, 0);
    for (const auto& p : panels) value += p.value;
    double err = err_frozen;
    for (std::uint32_t i : heap) err += panels[i].error;

    out.value = value;
    out.error = err;
    out.converged = err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
    return out;
}

namespace detail {

// Compactified partition for an integral over the real line restricted to
// `support`: u = atan(t), with boundaries at the support edges, the origin,
// and any caller hints.
inline std::vector<double> line_breaks(const Interval& support,
                                       const std::vector<QuadHint>& hints) {
    const double ulo = std::atan(std::max(support.lo, -1e300));
    const double uhi = std::atan(std::min(support.hi, 1e300));
    std::vector<double> breaks{ulo, uhi};
    auto push = [&](double t) {
        const double u = std::atan(t);
        if (u > ulo && u < uhi) breaks.push_back(u);
    };
    push(0.0);
    for (const auto& h : hints) {
        push(h.t);
        if (h.width > 0.0) {
            push(h.t - h.width);
            push(h.t + h.width);
            push(h.t - 8.0 * h.width);
            push(h.t + 8.0 * h.width);
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                 breaks.end());
    return breaks;
}

} // namespace detail

// Integral of f(t) dt over support within the real line.
template <class F>
QuadOutcome integrate_real_line(F&& f, const Interval& support,
                                const std::vector<QuadHint>& hints,
                                const QuadratureConfig& cfg) {
    if (support.empty()) return {};
    auto g = [&f](double u) {
        const double c = std::cos(u);
        return f(std::tan(u)) / (c * c);
    };
    return integrate_partition_1d(g, detail::line_breaks(support, hints), cfg);
}

// Integral of f(s) ds over a finite interval, partitioned at the hints.
template <class F>
QuadOutcome integrate_finite(F&& f, double lo, double hi,
                             const std::vector<QuadHint>& hints,
                             const QuadratureConfig& cfg) {
    std::vector<double> breaks{lo, hi};
    for (const auto& h : hints) {
        for (double v : {h.t - 8.0 * h.width, h.t - h.width, h.t, h.t + h.width, h.t + 8.0 * h.width})
            if (v > lo && v < hi) breaks.push_back(v);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                 breaks.end());
    return integrate_partition_1d(std::forward<F>(f), breaks, cfg);
}

namespace detail {

struct Cell2D {
    double a1, b1, a2, b2;
    std::complex<double> value;
    double error, err_axis1, err_axis2;
    int d1, d2;
    bool e1lo, e1hi, e2lo, e2hi;   // cell edges lying on initial boundaries
};

template <class F>
void eval_cell_2d(F& f, Cell2D& c) {
    const double m1 = 0.5 * (c.a1 + c.b1), h1 = 0.5 * (c.b1 - c.a1);
    const double m2 = 0.5 * (c.a2 + c.b2), h2 = 0.5 * (c.b2 - c.a2);
    std::complex<double> kk(0, 0), gk(0, 0), kg(0, 0);
    for (int i = 0; i < qk::n15; ++i) {
        std::complex<double> row_k(0, 0), row_g(0, 0);
        for (int j = 0; j < qk::n15; ++j) {
            const std::complex<double> v = f(m1 + h1 * qk::x15[i], m2 + h2 * qk::x15[j]);
            row_k += qk::w15[j] * v;
            if (qk::wg15[j] != 0.0) row_g += qk::wg15[j] * v;
        }
        kk += qk::w15[i] * row_k;
        kg += qk::w15[i] * row_g;
        if (qk::wg15[i] != 0.0) gk += qk::wg15[i] * row_k;
    }
    const double scale = h1 * h2;
    c.value = scale * kk;
    c.err_axis1 = std::abs(scale * (kk - gk));   // error attributable to axis 1 resolution
    c.err_axis2 = std::abs(scale * (kk - kg));
    c.error = c.err_axis1 + c.err_axis2;
}

} // namespace detail

// Two-dimensional adaptive integration over the cells spanned by the two
// break lists. Splitting is anisotropic: the axis with the larger
// directional error estimate is bisected, subject to per-axis depth budgets.
template <class F>
QuadOutcome integrate_cells_2d(F&& f, const std::vector<double>& breaks1,
                               const std::vector<double>& breaks2,
                               const QuadratureConfig& cfg) {
    QuadOutcome out;
    if (breaks1.size() < 2 || breaks2.size() < 2) return out;

    std::vector<detail::Cell2D> cells;
    for (std::size_t i = 0; i + 1 < breaks1.size(); ++i)
        for (std::size_t j = 0; j + 1 < breaks2.size(); ++j) {
            if (!(breaks1[i] < breaks1[i + 1] && breaks2[j] < breaks2[j + 1])) continue;
            detail::Cell2D c{breaks1[i], breaks1[i + 1], breaks2[j], breaks2[j + 1],
                             {0, 0}, 0.0, 0.0, 0.0, 0, 0, true, true, true, true};
            detail::eval_cell_2d(f, c);
            out.evals += qk::n15 * qk::n15;
            cells.push_back(c);
        }
    if (cells.empty()) return out;

    std::vector<std::uint32_t> heap;
    auto cmp = [&cells](std::uint32_t l, std::uint32_t r) {
        if (cells[l].error != cells[r].error) return cells[l].error < cells[r].error;
        return l > r;
    };
    for (std::uint32_t i = 0; i < cells.size(); ++i) heap.push_back(i);
    std::make_heap(heap.begin(), heap.end(), cmp);

    std::complex<double> total(0, 0);
    double err_active = 0.0, err_frozen = 0.0;
    for (const auto& c : cells) { total += c.value; err_active += c.error; }

    const auto limit1 = [&cfg](const detail::Cell2D& c) {
        return cfg.max_refinements + ((c.e1lo || c.e1hi) ? cfg.tail_refinements : 0);
    };
    const auto limit2 = [&cfg](const detail::Cell2D& c) {
        return cfg.max_refinements + ((c.e2lo || c.e2hi) ? cfg.tail_refinements : 0);
    };

    std::int64_t since_resync = 0;
    while (!heap.empty()) {
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (err_active + err_frozen <= tol) break;
        if (std::int64_t(cells.size()) >= cfg.max_panels) break;

        std::pop_heap(heap.begin(), heap.end(), cmp);
        const std::uint32_t idx = heap.back();
        heap.pop_back();

        detail::Cell2D parent = cells[idx];
        const bool can1 = parent.d1 < limit1(parent) &&
                          parent.b1 - parent.a1 > 1e-13 * (std::abs(parent.a1) + std::abs(parent.b1) + 1.0);
        const bool can2 = parent.d2 < limit2(parent) &&
                          parent.b2 - parent.a2 > 1e-13 * (std::abs(parent.a2) + std::abs(parent.b2) + 1.0);
        if (!can1 && !can2) {
            err_active -= parent.error;
            err_frozen += parent.error;
            continue;
        }

        const bool split1 = can1 && (!can2 || parent.err_axis1 >= parent.err_axis2);
        detail::Cell2D a = parent, b = parent;
        if (split1) {
            const double mid = 0.5 * (parent.a1 + parent.b1);
            a.b1 = mid;
            b.a1 = mid;
            a.d1 = b.d1 = parent.d1 + 1;
            a.e1hi = false;
            b.e1lo = false;
        } else {
            const double mid = 0.5 * (parent.a2 + parent.b2);
            a.b2 = mid;
            b.a2 = mid;
            a.d2 = b.d2 = parent.d2 + 1;
            a.e2hi = false;
            b.e2lo = false;
        }
        detail::eval_cell_2d(f, a);
        detail::eval_cell_2d(f, b);
        out.evals += 2 * qk::n15 * qk::n15;

        total += a.value + b.value - parent.value;
        err_active += a.error + b.error - parent.error;

        cells[idx] = a;
        heap.push_back(idx);
        std::push_heap(heap.begin(), heap.end(), cmp);
        cells.push_back(b);
        heap.push_back(std::uint32_t(cells.size() - 1));
        std::push_heap(heap.begin(), heap.end(), cmp);

        if (++since_resync >= 1024) {
            since_resync = 0;
            total = {0, 0};
            err_active = 0.0;
            for (std::uint32_t i : heap) { total += cells[i].value; err_active += cells[i].error; }
        }
    }

    std::complex<double> value(0, 0);
    for (const auto& c : cells) value += c.value;
    double err = err_frozen;
    for (std::uint32_t i : heap) err += cells[i].error;

    out.value = value;
    out.error = err;
    out.converged = err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
    return out;
}

// Integral of f(t1, t2) over a rectangle of the plane (possibly infinite),
// compactified per axis by tan.
template <class F>
QuadOutcome integrate_plane_rect(F&& f, const Interval& sup1, const Interval& sup2,
                                 const std::vector<QuadHint>& hints1,
                                 const std::vector<QuadHint>& hints2,
                                 const QuadratureConfig& cfg) {
    if (sup1.empty() || sup2.empty()) return {};
    auto g = [&f](double u1, double u2) {
        const double c1 = std::cos(u1), c2 = std::cos(u2);
        return f(std::tan(u1), std::tan(u2)) / (c1 * c1 * c2 * c2);
    };
    return integrate_cells_2d(g, detail::line_breaks(sup1, hints1),
                              detail::line_breaks(sup2, hints2), cfg);
}

} // namespace hn2
