#pragma once

// Named density registry. Measures reference densities by name plus numeric
// parameters so that configuration files never carry arbitrary code.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hn2 {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();
inline constexpr double pos_inf = std::numeric_limits<double>::infinity();

struct Interval {
    double lo = neg_inf;
    double hi = pos_inf;

    bool contains(double t) const { return t >= lo && t <= hi; }
    Interval clipped_to(const Interval& other) const {
        return Interval{std::max(lo, other.lo), std::min(hi, other.hi)};
    }
    bool empty() const { return !(lo < hi); }
};

// One-variable density: registry name, parameters, callable, natural support.
struct Density1D {
    std::string name;
    std::vector<double> params;
    std::function<double(double)> f;
    Interval support;   // density vanishes outside

    double operator()(double t) const { return support.contains(t) ? f(t) : 0.0; }
};

struct Density2D {
    std::string name;
    std::vector<double> params;
    std::function<double(double, double)> f;

    double operator()(double t1, double t2) const { return f(t1, t2); }
};

// polynomial: params are coefficients c0 + c1 t + c2 t^2 + ...
// constant:   params = {value}
// sqrt_neg:   params = {scale}, scale * sqrt(-t) supported on t <= 0
// gaussian:   params = {amplitude, sigma}, amplitude * exp(-(t/sigma)^2)
inline Density1D make_density_1d(const std::string& name, std::vector<double> params,
                                 Interval support = {}) {
    Density1D d;
    d.name = name;
    d.params = params;
    d.support = support;
    if (name == "constant") {
        if (params.size() != 1) throw std::invalid_argument("density constant: expected 1 parameter");
        const double c = params[0];
        d.f = [c](double) { return c; };
    } else if (name == "polynomial") {
        if (params.empty()) throw std::invalid_argument("density polynomial: expected coefficients");
        d.f = [params](double t) {
            double acc = 0.0;
            for (std::size_t i = params.size(); i-- > 0;) acc = acc * t + params[i];
            return acc;
        };
    } else if (name == "sqrt_neg") {
        if (params.size() != 1) throw std::invalid_argument("density sqrt_neg: expected 1 parameter");
        const double scale = params[0];
        d.f = [scale](double t) { return t <= 0.0 ? scale * std::sqrt(-t) : 0.0; };
        d.support = d.support.clipped_to(Interval{neg_inf, 0.0});
    } else if (name == "gaussian") {
        if (params.size() != 2) throw std::invalid_argument("density gaussian: expected 2 parameters");
        const double amp = params[0], sigma = params[1];
        if (!(sigma > 0.0)) throw std::invalid_argument("density gaussian: sigma must be positive");
        d.f = [amp, sigma](double t) { return amp * std::exp(-(t / sigma) * (t / sigma)); };
    } else {
        throw std::invalid_argument("unknown 1-D density name: " + name);
    }
    return d;
}

// sqrt_neg_product: params = {scale}, scale * sqrt(-t1 t2) where t1 t2 < 0
// constant:         params = {value}
// gaussian:         params = {amplitude, sigma}, radial Gaussian
inline Density2D make_density_2d(const std::string& name, std::vector<double> params) {
    Density2D d;
    d.name = name;
    d.params = params;
    if (name == "constant") {
        if (params.size() != 1) throw std::invalid_argument("density constant: expected 1 parameter");
        const double c = params[0];
        d.f = [c](double, double) { return c; };
    } else if (name == "sqrt_neg_product") {
        if (params.size() != 1) throw std::invalid_argument("density sqrt_neg_product: expected 1 parameter");
        const double scale = params[0];
        d.f = [scale](double t1, double t2) {
            const double p = t1 * t2;
            return p <= 0.0 ? scale * std::sqrt(-p) : 0.0;
        };
    } else if (name == "gaussian") {
        if (params.size() != 2) throw std::invalid_argument("density gaussian: expected 2 parameters");
        const double amp = params[0], sigma = params[1];
        if (!(sigma > 0.0)) throw std::invalid_argument("density gaussian: sigma must be positive");
        d.f = [amp, sigma](double t1, double t2) {
            return amp * std::exp(-(t1 * t1 + t2 * t2) / (sigma * sigma));
        };
    } else {
        throw std::invalid_argument("unknown 2-D density name: " + name);
    }
    return d;
}

// Support regions for planar density components. Sign regions are expressed
// as a subset of the four open quadrants so integration can split cleanly.
struct Region2D {
    enum class Kind { all, t1_negative, t2_negative, opposite_signs, box } kind = Kind::all;
    Interval x;   // only used by Kind::box
    Interval y;

    bool contains(double t1, double t2) const {
        switch (kind) {
            case Kind::all: return true;
            case Kind::t1_negative: return t1 < 0.0;
            case Kind::t2_negative: return t2 < 0.0;
            case Kind::opposite_signs: return t1 * t2 < 0.0;
            case Kind::box: return x.contains(t1) && y.contains(t2);
        }
        return false;
    }

    // Axis-aligned rectangles covering the region, used to seed quadrature
    // cells. Sign regions return the closure of the relevant quadrants.
    std::vector<std::pair<Interval, Interval>> rectangles() const {
        const Interval neg{neg_inf, 0.0}, pos{0.0, pos_inf}, all{};
        switch (kind) {
            case Kind::all:
                return {{all, all}};
            case Kind::t1_negative:
                return {{neg, all}};
            case Kind::t2_negative:
                return {{all, neg}};
            case Kind::opposite_signs:
                return {{neg, pos}, {pos, neg}};
            case Kind::box:
                return {{x, y}};
        }
        return {};
    }

    static Region2D all_plane() { return {}; }
    static Region2D t1_neg() { return {Kind::t1_negative, {}, {}}; }
    static Region2D t2_neg() { return {Kind::t2_negative, {}, {}}; }
    static Region2D opposite() { return {Kind::opposite_signs, {}, {}}; }
    static Region2D box(Interval bx, Interval by) { return {Kind::box, bx, by}; }
};

} // namespace hn2
