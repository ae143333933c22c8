// Forward-mode derivative scalar carrying two directional derivatives
// (d/dt1, d/dt2). Nest as Jet<Jet<S>> for mixed second derivatives.
#pragma once

#include "ap2/scalar.hpp"

namespace ap2 {

template <class S>
struct Jet {
    S v{};   // value
    S d1{};  // derivative along t1
    S d2{};  // derivative along t2

    Jet() = default;
    Jet(const S& value) : v(value) {}  // NOLINT: implicit constant lift
    Jet(const S& value, const S& dt1, const S& dt2) : v(value), d1(dt1), d2(dt2) {}

    static Jet variable1(const S& value) { return Jet(value, S(1), S(0)); }
    static Jet variable2(const S& value) { return Jet(value, S(0), S(1)); }

    Jet operator-() const { return Jet(-v, -d1, -d2); }

    Jet& operator+=(const Jet& o) {
        v += o.v;
        d1 += o.d1;
        d2 += o.d2;
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        v -= o.v;
        d1 -= o.d1;
        d2 -= o.d2;
        return *this;
    }
    Jet& operator*=(const Jet& o) {
        d1 = d1 * o.v + v * o.d1;
        d2 = d2 * o.v + v * o.d2;
        v = v * o.v;
        return *this;
    }
    Jet& operator/=(const Jet& o) {
        // (u/w)' = (u'w - uw') / w^2
        S w2 = o.v * o.v;
        d1 = (d1 * o.v - v * o.d1) / w2;
        d2 = (d2 * o.v - v * o.d2) / w2;
        v = v / o.v;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
    friend Jet operator/(Jet a, const Jet& b) { return a /= b; }

    // Comparisons act on values; derivative parts ride along. Pivot selection
    // in elimination stays locally constant at generic points, which keeps
    // jet-evaluated constructions differentiable.
    friend bool operator==(const Jet& a, const Jet& b) { return a.v == b.v; }
    friend bool operator!=(const Jet& a, const Jet& b) { return a.v != b.v; }
    friend bool operator<(const Jet& a, const Jet& b) { return a.v < b.v; }
    friend bool operator>(const Jet& a, const Jet& b) { return a.v > b.v; }
    friend bool operator<=(const Jet& a, const Jet& b) { return a.v <= b.v; }
    friend bool operator>=(const Jet& a, const Jet& b) { return a.v >= b.v; }
};

template <class S>
struct ScalarTraits<Jet<S>> {
    static constexpr bool exact = ScalarTraits<S>::exact;
    static Jet<S> abs(const Jet<S>& x) { return x.v < S(0) ? Jet<S>(-x.v, -x.d1, -x.d2) : x; }
    static double to_double(const Jet<S>& x) { return ScalarTraits<S>::to_double(x.v); }
    static Jet<S> from_rational(const Rational& r) { return Jet<S>(ScalarTraits<S>::from_rational(r)); }
};

}  // namespace ap2
