// Scalar modes: exact rationals for identity-level statements, IEEE doubles
// for sampled numerics. Everything downstream is generic over the mode.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>

#include "ap2/errors.hpp"

namespace ap2 {

namespace mp = boost::multiprecision;

/// Arbitrary-precision rational with expression templates disabled so it
/// behaves as a plain value type inside generic code.
using Rational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;
using BigInt = mp::number<mp::cpp_int_backend<>, mp::et_off>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double abs(double v) { return std::fabs(v); }
    static double to_double(double v) { return v; }
    static double from_rational(const Rational& r) { return r.convert_to<double>(); }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
    static double to_double(const Rational& v) { return v.convert_to<double>(); }
    static Rational from_rational(const Rational& r) { return r; }
};

template <class S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

template <class S>
S scalar_abs(const S& v) {
    return ScalarTraits<S>::abs(v);
}

template <class S>
double scalar_to_double(const S& v) {
    return ScalarTraits<S>::to_double(v);
}

/// Parse "p", "p/q" or a decimal literal. Decimals convert exactly
/// (binary floats are dyadic rationals).
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw DegenerateInput("empty scalar literal");
    if (text.find_first_of(".eE") == std::string::npos || text.find('/') != std::string::npos) {
        try {
            return Rational(text);
        } catch (const std::exception&) {
            throw DegenerateInput("unparseable scalar literal: " + text);
        }
    }
    std::istringstream in(text);
    double v = 0;
    in >> v;
    if (in.fail() || !in.eof() || !std::isfinite(v))
        throw DegenerateInput("unparseable scalar literal: " + text);
    return Rational(v);
}

inline std::string rational_to_string(const Rational& r) { return r.str(); }

template <class S>
S scalar_from_string(const std::string& text);

template <>
inline Rational scalar_from_string<Rational>(const std::string& text) {
    return parse_rational(text);
}

template <>
inline double scalar_from_string<double>(const std::string& text) {
    return parse_rational(text).convert_to<double>();
}

}  // namespace ap2
