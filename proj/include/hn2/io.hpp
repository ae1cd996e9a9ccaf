#pragma once

// JSON wire format for representation data and reports. The schema is the
// stable external interface of the command-line tool; keys are emitted in
// fixed order so serialized output is byte-reproducible.
//
// Representation document:
//   {
//     "a": 0.0, "b1": 0.0, "b2": 0.0,
//     "measure": { "components": [ <component>... ] }
//   }
// Components:
//   { "type": "atom", "point": [t1, t2], "weight": w }
//   { "type": "product", "factor1": <measure1d>, "factor2": <measure1d> }
//   { "type": "line", "slope": s, "intercept": c, "density": <density1d> }
//   { "type": "planar", "density": <density2d>, "support": <region> }
// One-variable measures:
//   { "components": [ { "type": "atom", "location": t, "weight": w }
//                   | { "type": "lebesgue", "scale": c }
//                   | { "type": "density", ...<density1d> } ] }
// Densities are referenced by registry name plus parameter list; supports
// and boxes encode an unbounded side as null.

#include <json.hpp>

#include <string>
#include <vector>

#include "certification.hpp"
#include "density.hpp"
#include "halfplane.hpp"
#include "measure.hpp"
#include "representation.hpp"

namespace hn2 {

using json = nlohmann::ordered_json;

namespace detail {

inline json interval_to_json(const Interval& iv) {
    json j = json::array();
    j.push_back(iv.lo == neg_inf ? json(nullptr) : json(iv.lo));
    j.push_back(iv.hi == pos_inf ? json(nullptr) : json(iv.hi));
    return j;
}

inline Interval interval_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("interval must be a two-element array");
    Interval iv;
    if (!j[0].is_null()) iv.lo = j[0].get<double>();
    if (!j[1].is_null()) iv.hi = j[1].get<double>();
    if (iv.lo > iv.hi) throw std::invalid_argument("interval bounds out of order");
    return iv;
}

inline double number_field(const json& j, const char* key, double fallback,
                           bool required = false) {
    if (!j.contains(key)) {
        if (required) throw std::invalid_argument(std::string("missing field '") + key + "'");
        return fallback;
    }
    if (!j[key].is_number())
        throw std::invalid_argument(std::string("field '") + key + "' must be a number");
    return j[key].get<double>();
}

}   // namespace detail

inline json density_to_json(const Density1D& d) {
    json j;
    j["name"] = d.name;
    j["params"] = d.params;
    j["support"] = detail::interval_to_json(d.support);
    return j;
}

inline Density1D density_from_json(const json& j) {
    if (!j.contains("name")) throw std::invalid_argument("density needs a 'name'");
    std::vector<double> params;
    if (j.contains("params")) params = j["params"].get<std::vector<double>>();
    Interval support;
    if (j.contains("support")) support = detail::interval_from_json(j["support"]);
    return make_density_1d(j["name"].get<std::string>(), params, support);
}

inline json density2_to_json(const Density2D& d) {
    json j;
    j["name"] = d.name;
    j["params"] = d.params;
    return j;
}

inline Density2D density2_from_json(const json& j) {
    if (!j.contains("name")) throw std::invalid_argument("density needs a 'name'");
    std::vector<double> params;
    if (j.contains("params")) params = j["params"].get<std::vector<double>>();
    return make_density_2d(j["name"].get<std::string>(), params);
}

inline json region_to_json(const Region2D& r) {
    json j;
    switch (r.kind) {
        case Region2D::Kind::all: j["kind"] = "all"; break;
        case Region2D::Kind::t1_negative: j["kind"] = "t1_negative"; break;
        case Region2D::Kind::t2_negative: j["kind"] = "t2_negative"; break;
        case Region2D::Kind::opposite_signs: j["kind"] = "opposite_signs"; break;
        case Region2D::Kind::box:
            j["kind"] = "box";
            j["x"] = detail::interval_to_json(r.x);
            j["y"] = detail::interval_to_json(r.y);
            break;
    }
    return j;
}

inline Region2D region_from_json(const json& j) {
    if (!j.contains("kind")) throw std::invalid_argument("region needs a 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "all") return Region2D::all_plane();
    if (kind == "t1_negative") return Region2D::t1_neg();
    if (kind == "t2_negative") return Region2D::t2_neg();
    if (kind == "opposite_signs") return Region2D::opposite();
    if (kind == "box") {
        if (!j.contains("x") || !j.contains("y"))
            throw std::invalid_argument("box region needs 'x' and 'y' intervals");
        return Region2D::box(detail::interval_from_json(j["x"]),
                             detail::interval_from_json(j["y"]));
    }
    throw std::invalid_argument("unknown region kind '" + kind + "'");
}

inline json measure1d_to_json(const Measure1D& m) {
    json comps = json::array();
    for (const auto& c : m.components) {
        json jc;
        if (const auto* a = std::get_if<Atom1D>(&c)) {
            jc["type"] = "atom";
            jc["location"] = a->location;
            jc["weight"] = a->weight;
        } else if (const auto* l = std::get_if<Lebesgue1D>(&c)) {
            jc["type"] = "lebesgue";
            jc["scale"] = l->scale;
        } else if (const auto* d = std::get_if<Density1D>(&c)) {
            jc = density_to_json(*d);
            jc["type"] = "density";
        }
        comps.push_back(std::move(jc));
    }
    json j;
    j["components"] = std::move(comps);
    return j;
}

inline Measure1D measure1d_from_json(const json& j) {
    if (!j.contains("components") || !j["components"].is_array())
        throw std::invalid_argument("one-variable measure needs a 'components' array");
    Measure1D m;
    for (const auto& jc : j["components"]) {
        if (!jc.contains("type")) throw std::invalid_argument("component needs a 'type'");
        const std::string type = jc["type"].get<std::string>();
        if (type == "atom") {
            m.components.push_back(Atom1D{detail::number_field(jc, "location", 0.0, true),
                                          detail::number_field(jc, "weight", 0.0, true)});
        } else if (type == "lebesgue") {
            m.components.push_back(Lebesgue1D{detail::number_field(jc, "scale", 0.0, true)});
        } else if (type == "density") {
            m.components.push_back(density_from_json(jc));
        } else {
            throw std::invalid_argument("unknown one-variable component type '" + type + "'");
        }
    }
    return m;
}

inline json measure_to_json(const Measure2D& mu) {
    json comps = json::array();
    for (const auto& c : mu.components) {
        json jc;
        if (const auto* a = std::get_if<Atom2D>(&c)) {
            jc["type"] = "atom";
            jc["point"] = {a->p1, a->p2};
            jc["weight"] = a->weight;
        } else if (const auto* p = std::get_if<Product2D>(&c)) {
            jc["type"] = "product";
            jc["factor1"] = measure1d_to_json(p->m1);
            jc["factor2"] = measure1d_to_json(p->m2);
        } else if (const auto* ln = std::get_if<Line2D>(&c)) {
            jc["type"] = "line";
            jc["slope"] = ln->slope;
            jc["intercept"] = ln->intercept;
            jc["density"] = density_to_json(ln->density);
        } else if (const auto* pd = std::get_if<Planar2D>(&c)) {
            jc["type"] = "planar";
            jc["density"] = density2_to_json(pd->density);
            jc["support"] = region_to_json(pd->support);
        }
        comps.push_back(std::move(jc));
    }
    json j;
    j["components"] = std::move(comps);
    return j;
}

inline Measure2D measure_from_json(const json& j) {
    if (!j.contains("components") || !j["components"].is_array())
        throw std::invalid_argument("measure needs a 'components' array");
    Measure2D mu;
    for (const auto& jc : j["components"]) {
        if (!jc.contains("type")) throw std::invalid_argument("component needs a 'type'");
        const std::string type = jc["type"].get<std::string>();
        if (type == "atom") {
            if (!jc.contains("point") || !jc["point"].is_array() || jc["point"].size() != 2)
                throw std::invalid_argument("atom needs a two-element 'point'");
            mu.components.push_back(Atom2D{jc["point"][0].get<double>(),
                                           jc["point"][1].get<double>(),
                                           detail::number_field(jc, "weight", 0.0, true)});
        } else if (type == "product") {
            if (!jc.contains("factor1") || !jc.contains("factor2"))
                throw std::invalid_argument("product needs 'factor1' and 'factor2'");
            mu.components.push_back(
                Product2D{measure1d_from_json(jc["factor1"]), measure1d_from_json(jc["factor2"])});
        } else if (type == "line") {
            Line2D ln;
            ln.slope = detail::number_field(jc, "slope", -1.0);
            ln.intercept = detail::number_field(jc, "intercept", 0.0);
            if (!jc.contains("density")) throw std::invalid_argument("line needs a 'density'");
            ln.density = density_from_json(jc["density"]);
            if (ln.slope == 0.0)
                throw std::invalid_argument("line carrier must have nonzero slope");
            mu.components.push_back(std::move(ln));
        } else if (type == "planar") {
            Planar2D pd;
            if (!jc.contains("density")) throw std::invalid_argument("planar needs a 'density'");
            pd.density = density2_from_json(jc["density"]);
            if (jc.contains("support")) pd.support = region_from_json(jc["support"]);
            mu.components.push_back(std::move(pd));
        } else {
            throw std::invalid_argument("unknown component type '" + type + "'");
        }
    }
    return mu;
}

inline json representation_to_json(const Representation& rep) {
    json j;
    j["a"] = rep.a;
    j["b1"] = rep.b1;
    j["b2"] = rep.b2;
    j["measure"] = measure_to_json(rep.mu);
    return j;
}

inline Representation representation_from_json(const json& j) {
    Representation rep;
    rep.a = detail::number_field(j, "a", 0.0);
    rep.b1 = detail::number_field(j, "b1", 0.0);
    rep.b2 = detail::number_field(j, "b2", 0.0);
    if (j.contains("measure")) rep.mu = measure_from_json(j["measure"]);
    require_coefficients(rep);
    return rep;
}

inline json report_to_json(const CertificationReport& report) {
    json j;
    j["certified"] = report.certified;
    j["growth"] = report.growth == pos_inf ? json("infinite") : json(report.growth);
    j["mass"] = report.mass == pos_inf ? json("infinite") : json(report.mass);
    j["finite_mass_contradiction"] = report.finite_mass_contradiction;
    json checks = json::array();
    for (const auto& c : report.checks) {
        json jc;
        jc["name"] = c.name;
        jc["passed"] = c.passed;
        jc["value"] = c.value;
        jc["threshold"] = c.threshold;
        jc["detail"] = c.detail;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    return j;
}

inline json limit_to_json(const LimitEstimate& est) {
    json j;
    j["value_re"] = est.value.real();
    j["value_im"] = est.value.imag();
    j["error_estimate"] = est.error_estimate == pos_inf ? json("infinite") : json(est.error_estimate);
    j["converged"] = est.converged;
    j["diverged"] = est.diverged;
    j["samples_used"] = est.samples_used;
    return j;
}

}   // namespace hn2
