// JSON encodings of the wire types: algebra elements as {"kind","x","y"}
// with rational strings in exact mode, points, curves and the two report
// schemas. All reports carry "schema": "1".
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ap2/algebra2d.hpp"
#include "ap2/errors.hpp"
#include "ap2/grassmann.hpp"
#include "ap2/proj_plane.hpp"
#include "ap2/roots.hpp"
#include "ap2/ruled.hpp"

namespace ap2::io {

using nlohmann::json;
using nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

template <class S>
json scalar_to_json(const S& v) {
    if constexpr (is_exact_v<S>) {
        return v.str();
    } else {
        return v;
    }
}

template <class S>
S scalar_from_json(const json& j) {
    if (j.is_string()) return scalar_from_string<S>(j.get<std::string>());
    if (j.is_number()) {
        if constexpr (is_exact_v<S>) {
            return S(j.get<double>());
        } else {
            return j.get<double>();
        }
    }
    throw DegenerateInput("scalar must be a string or a number");
}

inline algebra::AlgebraKind kind_from_json(const json& j) {
    if (!j.is_string()) throw DegenerateInput("algebra kind must be a string");
    auto k = algebra::kind_from_name(j.get<std::string>());
    if (!k) throw DegenerateInput("unknown algebra kind: " + j.get<std::string>());
    return *k;
}

template <class S>
json a2_to_json(const algebra::A2<S>& a) {
    return json{{"kind", algebra::kind_name(a.kind)},
                {"x", scalar_to_json(a.x)},
                {"y", scalar_to_json(a.y)}};
}

template <class S>
algebra::A2<S> a2_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("x") || !j.contains("y"))
        throw DegenerateInput("algebra element needs kind, x and y");
    return algebra::A2<S>(kind_from_json(j.at("kind")), scalar_from_json<S>(j.at("x")),
                          scalar_from_json<S>(j.at("y")));
}

template <class S>
json point_to_json(const plane::PointA<S>& p) {
    json coords = json::array();
    for (const auto& c : p.coords()) coords.push_back(a2_to_json(c));
    return json{{"kind", algebra::kind_name(p.kind())}, {"coords", coords}};
}

template <class S>
plane::PointA<S> point_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("coords"))
        throw DegenerateInput("point needs kind and coords");
    auto kind = kind_from_json(j.at("kind"));
    const auto& coords = j.at("coords");
    if (!coords.is_array() || coords.size() != 3)
        throw DegenerateInput("point needs exactly three coordinates");
    auto c0 = a2_from_json<S>(coords[0]);
    auto c1 = a2_from_json<S>(coords[1]);
    auto c2 = a2_from_json<S>(coords[2]);
    if (c0.kind != kind || c1.kind != kind || c2.kind != kind)
        throw DegenerateInput("point coordinate kinds disagree with the point kind");
    return plane::PointA<S>(kind, c0, c1, c2);
}

template <class S>
json vec_to_json(const lin::Vec<S>& v) {
    json out = json::array();
    for (const auto& e : v) out.push_back(scalar_to_json(e));
    return out;
}

template <class S>
lin::Vec<S> vec_from_json(const json& j) {
    if (!j.is_array()) throw DegenerateInput("vector must be an array");
    lin::Vec<S> v;
    for (const auto& e : j) v.push_back(scalar_from_json<S>(e));
    return v;
}

template <class S>
json curve_to_json(const ruled::CurveA<S>& c) {
    auto poly = [](const ruled::PolyA<S>& p) {
        json arr = json::array();
        for (const auto& a : p.coeffs()) arr.push_back(a2_to_json(a));
        return arr;
    };
    return json{{"kind", algebra::kind_name(c.kind())},
                {"degree", c.degree()},
                {"coeffs", json{{"F1", poly(c.f1())}, {"F2", poly(c.f2())}}}};
}

template <class S>
ruled::CurveA<S> curve_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("degree") || !j.contains("coeffs"))
        throw DegenerateInput("curve needs kind, degree and coeffs");
    auto kind = kind_from_json(j.at("kind"));
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_object() || !coeffs.contains("F1") || !coeffs.contains("F2"))
        throw DegenerateInput("curve coeffs need F1 and F2 arrays");
    auto poly = [&](const json& arr) {
        if (!arr.is_array()) throw DegenerateInput("curve component must be an array");
        std::vector<algebra::A2<S>> cs;
        for (const auto& e : arr) {
            auto a = a2_from_json<S>(e);
            if (a.kind != kind) throw DegenerateInput("curve coefficient kind mismatch");
            cs.push_back(a);
        }
        return ruled::PolyA<S>(kind, std::move(cs));
    };
    ruled::CurveA<S> curve(kind, poly(coeffs.at("F1")), poly(coeffs.at("F2")));
    if (!j.at("degree").is_number_integer() || j.at("degree").get<int>() != curve.degree())
        throw DegenerateInput("declared curve degree disagrees with the coefficients");
    return curve;
}

template <class S>
json root_to_json(const roots::Root<S>& r) {
    return json{{"re", scalar_to_json(r.re)},
                {"im", scalar_to_json(r.im)},
                {"multiplicity", r.multiplicity},
                {"exact", r.exact}};
}

template <class S>
json rootset_to_json(const roots::RootSet<S>& rs) {
    json arr = json::array();
    for (const auto& r : rs.roots) arr.push_back(root_to_json(r));
    return json{{"degree", rs.degree}, {"roots", arr}};
}

template <class S>
json line_to_json(const grassmann::Line5<S>& l) {
    return json{{"p", vec_to_json(l.p())},
                {"q", vec_to_json(l.q())},
                {"plucker", vec_to_json(l.canonical_plucker())}};
}

template <class S>
grassmann::Line5<S> line_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("q"))
        throw DegenerateInput("line needs spanning vectors p and q");
    return grassmann::Line5<S>(vec_from_json<S>(j.at("p")), vec_from_json<S>(j.at("q")));
}

}  // namespace ap2::io
