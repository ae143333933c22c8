// Arithmetic, 2x2 matrix representation and zero-divisor structure for the
// three two-dimensional real algebras (complex, double, dual numbers) and
// for the full 2x2 matrix algebra.
#pragma once

#include <array>
#include <optional>
#include <string>

#include "ap2/errors.hpp"
#include "ap2/scalar.hpp"

namespace ap2::algebra {

/// The three commutative two-dimensional real algebras, ordered so reports
/// are deterministic: u^2 = -1 (complex), +1 (double), 0 (dual).
enum class AlgebraKind { Complex = 0, Double = 1, Dual = 2 };

inline constexpr std::array<AlgebraKind, 3> kAllKinds = {
    AlgebraKind::Complex, AlgebraKind::Double, AlgebraKind::Dual};

inline const char* kind_name(AlgebraKind k) {
    switch (k) {
        case AlgebraKind::Complex: return "complex";
        case AlgebraKind::Double: return "double";
        case AlgebraKind::Dual: return "dual";
    }
    return "?";
}

inline std::optional<AlgebraKind> kind_from_name(const std::string& name) {
    for (AlgebraKind k : kAllKinds)
        if (name == kind_name(k)) return k;
    return std::nullopt;
}

/// Sign of u^2 in the algebra: -1, +1 or 0.
inline int unit_square_sign(AlgebraKind k) {
    switch (k) {
        case AlgebraKind::Complex: return -1;
        case AlgebraKind::Double: return 1;
        case AlgebraKind::Dual: return 0;
    }
    return 0;
}

/// Element x + u*y of one algebra. Mixing kinds is a contract violation,
/// never a silent coercion.
template <class S>
struct A2 {
    AlgebraKind kind{AlgebraKind::Complex};
    S x{};
    S y{};

    A2() = default;
    A2(AlgebraKind k, S rx, S ry) : kind(k), x(std::move(rx)), y(std::move(ry)) {}

    static A2 zero(AlgebraKind k) { return A2(k, S(0), S(0)); }
    static A2 unit(AlgebraKind k) { return A2(k, S(1), S(0)); }
    /// The generator u (i, e or epsilon depending on the kind).
    static A2 unit_imaginary(AlgebraKind k) { return A2(k, S(0), S(1)); }

    bool is_zero() const { return x == S(0) && y == S(0); }

    friend bool operator==(const A2& a, const A2& b) {
        return a.kind == b.kind && a.x == b.x && a.y == b.y;
    }
};

/// Element of the full 2x2 matrix algebra, row-major.
template <class S>
struct Mat2 {
    S a00{}, a01{}, a10{}, a11{};

    static Mat2 zero() { return Mat2{S(0), S(0), S(0), S(0)}; }
    static Mat2 identity() { return Mat2{S(1), S(0), S(0), S(1)}; }

    S det() const { return a00 * a11 - a01 * a10; }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return Mat2{a.a00 * b.a00 + a.a01 * b.a10, a.a00 * b.a01 + a.a01 * b.a11,
                    a.a10 * b.a00 + a.a11 * b.a10, a.a10 * b.a01 + a.a11 * b.a11};
    }
    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        return Mat2{a.a00 + b.a00, a.a01 + b.a01, a.a10 + b.a10, a.a11 + b.a11};
    }
    friend bool operator==(const Mat2& a, const Mat2& b) {
        return a.a00 == b.a00 && a.a01 == b.a01 && a.a10 == b.a10 && a.a11 == b.a11;
    }
};

/// A ratio that may be infinite. Kept symbolic so the exact mode never
/// manufactures float infinities.
template <class S>
struct RatioOrInf {
    bool infinite{false};
    S value{};

    static RatioOrInf inf() { return RatioOrInf{true, S(0)}; }
    static RatioOrInf of(S v) { return RatioOrInf{false, std::move(v)}; }

    friend bool operator==(const RatioOrInf& a, const RatioOrInf& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
};

/// The two plane-generator parameters of the zero-divisor cone of the
/// matrix algebra: lambda through the column ratios, mu through the rows.
template <class S>
struct ConeRuling {
    RatioOrInf<S> lambda;
    RatioOrInf<S> mu;
};

namespace detail {
template <class S>
void require_same_kind(const A2<S>& a, const A2<S>& b, const char* op) {
    if (a.kind != b.kind)
        throw ContractViolation(std::string("algebra kind mismatch in ") + op);
}
}  // namespace detail

template <class S>
A2<S> add(const A2<S>& a, const A2<S>& b) {
    detail::require_same_kind(a, b, "add");
    return A2<S>(a.kind, a.x + b.x, a.y + b.y);
}

template <class S>
A2<S> sub(const A2<S>& a, const A2<S>& b) {
    detail::require_same_kind(a, b, "sub");
    return A2<S>(a.kind, a.x - b.x, a.y - b.y);
}

template <class S>
A2<S> neg(const A2<S>& a) {
    return A2<S>(a.kind, -a.x, -a.y);
}

/// (x1 + u y1)(x2 + u y2) = x1 x2 + u^2 y1 y2 + u (x1 y2 + y1 x2).
template <class S>
A2<S> mul(const A2<S>& a, const A2<S>& b) {
    detail::require_same_kind(a, b, "mul");
    S xx = a.x * b.x;
    S cross = a.x * b.y + a.y * b.x;
    switch (unit_square_sign(a.kind)) {
        case -1: return A2<S>(a.kind, xx - a.y * b.y, cross);
        case 1: return A2<S>(a.kind, xx + a.y * b.y, cross);
        default: return A2<S>(a.kind, xx, cross);
    }
}

template <class S>
A2<S> scale(const A2<S>& a, const S& c) {
    return A2<S>(a.kind, a.x * c, a.y * c);
}

/// Conjugate x - u*y. Satisfies a * conj(a) = norm(a) * 1 in all three kinds.
template <class S>
A2<S> conj(const A2<S>& a) {
    return A2<S>(a.kind, a.x, -a.y);
}

/// Multiplicative norm x^2 - u^2 y^2; coincides with det(to_matrix(a)).
template <class S>
S norm(const A2<S>& a) {
    switch (unit_square_sign(a.kind)) {
        case -1: return a.x * a.x + a.y * a.y;
        case 1: return a.x * a.x - a.y * a.y;
        default: return a.x * a.x;
    }
}

/// Zero divisors, zero included: the elements with no inverse. Complex has
/// only 0, double numbers the lines y = +-x, dual numbers the y-axis.
template <class S>
bool is_zero_divisor(const A2<S>& a) {
    if constexpr (is_exact_v<S>) {
        return norm(a) == S(0);
    } else {
        double n = scalar_to_double(norm(a));
        double scale2 = scalar_to_double(a.x * a.x + a.y * a.y);
        return std::fabs(n) <= 1e-10 * scale2 || scale2 == 0.0;
    }
}

template <class S>
A2<S> inverse(const A2<S>& a) {
    if (is_zero_divisor(a)) throw DivisorError("inverse of a zero divisor");
    S n = norm(a);
    return A2<S>(a.kind, a.x / n, -a.y / n);
}

/// 2x2 representation: complex [[x,-y],[y,x]], double [[x,y],[y,x]],
/// dual [[x,0],[y,x]].
template <class S>
Mat2<S> to_matrix(const A2<S>& a) {
    switch (a.kind) {
        case AlgebraKind::Complex: return Mat2<S>{a.x, -a.y, a.y, a.x};
        case AlgebraKind::Double: return Mat2<S>{a.x, a.y, a.y, a.x};
        default: return Mat2<S>{a.x, S(0), a.y, a.x};
    }
}

/// Inverse of to_matrix. The shape must match the representation exactly.
template <class S>
A2<S> from_matrix(const Mat2<S>& m, AlgebraKind kind) {
    bool ok = false;
    switch (kind) {
        case AlgebraKind::Complex: ok = (m.a00 == m.a11 && m.a01 == -m.a10); break;
        case AlgebraKind::Double: ok = (m.a00 == m.a11 && m.a01 == m.a10); break;
        case AlgebraKind::Dual: ok = (m.a00 == m.a11 && m.a01 == S(0)); break;
    }
    if (!ok) throw RepresentationError("matrix does not represent an element of this algebra");
    return A2<S>(kind, m.a00, m.a10);
}

template <class S>
S mat_norm2(const Mat2<S>& m) {
    return m.a00 * m.a00 + m.a01 * m.a01 + m.a10 * m.a10 + m.a11 * m.a11;
}

/// Zero-divisor test in the matrix algebra: vanishing determinant.
template <class S>
bool mat_is_zero_divisor(const Mat2<S>& m) {
    if constexpr (is_exact_v<S>) {
        return m.det() == S(0);
    } else {
        double d = scalar_to_double(m.det());
        double n2 = scalar_to_double(mat_norm2(m));
        return std::fabs(d) <= 1e-10 * n2 || n2 == 0.0;
    }
}

namespace detail {
// Ratio p/q shared with a fallback fraction r/s; the determinant condition
// makes the two fractions agree wherever both are determinate.
template <class S>
RatioOrInf<S> consistent_ratio(const S& p, const S& q, const S& r, const S& s) {
    if (q != S(0)) return RatioOrInf<S>::of(p / q);
    if (s != S(0)) return RatioOrInf<S>::of(r / s);
    return RatioOrInf<S>::inf();
}
}  // namespace detail

/// Ruling parameters (lambda, mu) of a nonzero zero divisor of the matrix
/// algebra. Layout follows the point coordinates: columns are indexed below,
/// rows above, so lambda = a00/a10 = a01/a11 and mu = a00/a01 = a10/a11.
template <class S>
ConeRuling<S> cone_ruling(const Mat2<S>& m) {
    if (m == Mat2<S>::zero()) throw DegenerateInput("cone_ruling of the zero matrix");
    if (!mat_is_zero_divisor(m)) throw ContractViolation("cone_ruling requires det = 0");
    ConeRuling<S> r;
    r.lambda = detail::consistent_ratio(m.a00, m.a10, m.a01, m.a11);
    r.mu = detail::consistent_ratio(m.a00, m.a01, m.a10, m.a11);
    return r;
}

}  // namespace ap2::algebra
