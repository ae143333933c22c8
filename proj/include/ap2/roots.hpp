// Real-coefficient polynomials up to degree 4 and their real/complex roots
// with multiplicities. Exact mode recovers multiplicities by square-free
// factorization; float mode clusters the companion-matrix eigenvalues.
#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "ap2/errors.hpp"
#include "ap2/scalar.hpp"

namespace ap2::roots {

inline constexpr double kClusterRadius = 1e-6;

/// Coefficients ascending: p(x) = c[0] + c[1] x + ... Trailing zeros trimmed.
template <class S>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(S v) { return Poly(std::vector<S>{std::move(v)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<S>& coeffs() const { return c_; }
    S coeff(std::size_t i) const { return i < c_.size() ? c_[i] : S(0); }
    S leading() const { return c_.empty() ? S(0) : c_.back(); }

    S eval(const S& x) const {
        S acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<S> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * S(static_cast<int>(i));
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<S> r(std::max(a.c_.size(), b.c_.size()), S(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<S> r(std::max(a.c_.size(), b.c_.size()), S(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<S> r(a.c_.size() + b.c_.size() - 1, S(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const S& s) {
        std::vector<S> r = a.c_;
        for (auto& e : r) e = e * s;
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Division with remainder; divisor must be nonzero.
    friend std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den) {
        if (den.is_zero()) throw DegenerateInput("division by the zero polynomial");
        std::vector<S> rem = num.c_;
        std::vector<S> quot(
            num.degree() >= den.degree() ? static_cast<std::size_t>(num.degree() - den.degree()) + 1 : 0,
            S(0));
        while (static_cast<int>(rem.size()) - 1 >= den.degree()) {
            S f = rem.back() / den.leading();
            std::size_t shift = rem.size() - den.c_.size();
            quot[shift] = f;
            for (std::size_t i = 0; i + 1 < den.c_.size(); ++i) rem[shift + i] -= f * den.c_[i];
            rem.pop_back();  // leading term cancels by construction
            while (!rem.empty() && rem.back() == S(0)) rem.pop_back();
        }
        return {Poly(std::move(quot)), Poly(std::move(rem))};
    }

    double max_abs_coeff() const {
        double m = 0;
        for (const S& e : c_) m = std::max(m, std::fabs(scalar_to_double(e)));
        return m;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == S(0)) c_.pop_back();
    }
    std::vector<S> c_;
};

/// One root location; conjugate complex roots appear as two entries. The
/// exact flag records whether the location was derived algebraically.
template <class S>
struct Root {
    S re{};
    S im{};
    int multiplicity = 1;
    bool exact = true;

    bool is_real() const { return im == S(0); }
};

template <class S>
struct RootSet {
    int degree = 0;
    std::vector<Root<S>> roots;

    std::vector<Root<S>> real_roots() const {
        std::vector<Root<S>> r;
        for (const auto& root : roots)
            if (root.is_real()) r.push_back(root);
        return r;
    }
    int total_multiplicity() const {
        int t = 0;
        for (const auto& r : roots) t += r.multiplicity;
        return t;
    }
};

namespace detail {

template <class S>
Poly<S> make_monic(const Poly<S>& p) {
    if (p.is_zero()) return p;
    return p * (S(1) / p.leading());
}

template <class S>
Poly<S> poly_gcd(Poly<S> a, Poly<S> b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

/// Yun square-free decomposition: returns (factor, multiplicity) pairs with
/// factors monic, square-free and pairwise coprime.
template <class S>
std::vector<std::pair<Poly<S>, int>> squarefree_decompose(const Poly<S>& p) {
    std::vector<std::pair<Poly<S>, int>> out;
    Poly<S> f = make_monic(p);
    if (f.degree() < 1) return out;
    Poly<S> fp = f.derivative();
    Poly<S> a = poly_gcd(f, fp);
    Poly<S> b = divmod(f, a).first;
    Poly<S> c = divmod(fp, a).first;
    Poly<S> d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        Poly<S> ai = poly_gcd(b, d);
        if (ai.degree() > 0) out.emplace_back(ai, i);
        b = divmod(b, ai).first;
        c = divmod(d, ai).first;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

inline std::optional<Rational> exact_sqrt(const Rational& v) {
    if (v < 0) return std::nullopt;
    BigInt num = numerator(v), den = denominator(v);
    BigInt sn = mp::sqrt(num), sd = mp::sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rational(sn, sd);
}

/// All complex roots of a double polynomial via the companion matrix.
inline std::vector<std::complex<double>> companion_roots(const Poly<double>& p) {
    int n = p.degree();
    std::vector<std::complex<double>> out;
    if (n < 1) return out;
    if (n == 1) {
        out.emplace_back(-p.coeff(0) / p.coeff(1), 0.0);
        return out;
    }
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.coeff(i) / p.leading();
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
    for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
    return out;
}

/// Greedy clustering with the given radius; multiplicity is cluster size.
template <class S>
std::vector<Root<S>> cluster_roots(const std::vector<std::complex<double>>& raw, double radius) {
    std::vector<std::complex<double>> pts = raw;
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<Root<S>> out;
    std::vector<bool> used(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        std::complex<double> sum = pts[i];
        int count = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(pts[j] - sum / static_cast<double>(count)) <= radius) {
                sum += pts[j];
                ++count;
                used[j] = true;
            }
        }
        std::complex<double> center = sum / static_cast<double>(count);
        Root<S> r;
        r.multiplicity = count;
        r.exact = false;
        if (std::fabs(center.imag()) <= radius) {
            r.re = S(center.real());
            r.im = S(0);
        } else {
            r.re = S(center.real());
            r.im = S(center.imag());
        }
        out.push_back(r);
    }
    return out;
}

inline void append_quadratic_roots(const Poly<Rational>& q, int mult, std::vector<Root<Rational>>& out) {
    Rational a = q.coeff(2), b = q.coeff(1), c = q.coeff(0);
    Rational disc = b * b - Rational(4) * a * c;
    Rational two_a = Rational(2) * a;
    if (disc >= 0) {
        if (auto r = exact_sqrt(disc)) {
            out.push_back({(-b + *r) / two_a, Rational(0), mult, true});
            if (*r != 0) out.push_back({(-b - *r) / two_a, Rational(0), mult, true});
            return;
        }
        double s = std::sqrt(disc.convert_to<double>());
        double bd = b.convert_to<double>(), ad = a.convert_to<double>();
        out.push_back({Rational((-bd + s) / (2 * ad)), Rational(0), mult, false});
        out.push_back({Rational((-bd - s) / (2 * ad)), Rational(0), mult, false});
        return;
    }
    Rational neg = -disc;
    if (auto r = exact_sqrt(neg)) {
        out.push_back({-b / two_a, *r / two_a, mult, true});
        out.push_back({-b / two_a, -(*r) / two_a, mult, true});
        return;
    }
    double s = std::sqrt(neg.convert_to<double>());
    double bd = b.convert_to<double>(), ad = a.convert_to<double>();
    out.push_back({Rational(-bd / (2 * ad)), Rational(s / (2 * ad)), mult, false});
    out.push_back({Rational(-bd / (2 * ad)), Rational(-s / (2 * ad)), mult, false});
}

}  // namespace detail

/// All roots (real and conjugate complex) of a polynomial of degree <= 4,
/// with multiplicities. Exact mode: multiplicities from square-free
/// factorization, locations exact whenever they are rational or quadratic
/// with a rational square root. Float mode: companion eigenvalues clustered
/// with radius 1e-6, multiplicity = cluster cardinality.
template <class S>
RootSet<S> all_roots_with_multiplicity(const Poly<S>& p);

template <>
inline RootSet<Rational> all_roots_with_multiplicity(const Poly<Rational>& p) {
    if (p.is_zero()) throw DegenerateInput("roots of the zero polynomial");
    RootSet<Rational> rs;
    rs.degree = p.degree();
    for (auto& [factor, mult] : detail::squarefree_decompose(p)) {
        switch (factor.degree()) {
            case 1:
                rs.roots.push_back({-factor.coeff(0) / factor.coeff(1), Rational(0), mult, true});
                break;
            case 2:
                detail::append_quadratic_roots(factor, mult, rs.roots);
                break;
            default: {
                // square-free cubic/quartic: simple roots, numeric locations
                std::vector<double> dc;
                for (const auto& c : factor.coeffs()) dc.push_back(c.convert_to<double>());
                auto raw = detail::companion_roots(Poly<double>(std::move(dc)));
                for (auto& r : detail::cluster_roots<Rational>(raw, kClusterRadius)) {
                    r.multiplicity *= mult;
                    rs.roots.push_back(r);
                }
                break;
            }
        }
    }
    std::sort(rs.roots.begin(), rs.roots.end(), [](const auto& a, const auto& b) {
        return a.re != b.re ? a.re < b.re : a.im < b.im;
    });
    return rs;
}

template <>
inline RootSet<double> all_roots_with_multiplicity(const Poly<double>& p) {
    if (p.is_zero()) throw DegenerateInput("roots of the zero polynomial");
    RootSet<double> rs;
    rs.degree = p.degree();
    rs.roots = detail::cluster_roots<double>(detail::companion_roots(p), kClusterRadius);
    std::sort(rs.roots.begin(), rs.roots.end(), [](const auto& a, const auto& b) {
        return a.re != b.re ? a.re < b.re : a.im < b.im;
    });
    return rs;
}

/// Real roots only (the complex part of the answer is dropped).
template <class S>
RootSet<S> real_roots_with_multiplicity(const Poly<S>& p) {
    RootSet<S> all = all_roots_with_multiplicity(p);
    RootSet<S> rs;
    rs.degree = all.degree;
    for (auto& r : all.roots)
        if (r.is_real()) rs.roots.push_back(r);
    return rs;
}

}  // namespace ap2::roots
