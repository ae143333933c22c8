// The line-space side: embedding of plane points as projective lines of RP^5,
// Pluecker coordinates, and the focal classification of the three point
// congruences induced by the two-dimensional algebras.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ap2/algebra2d.hpp"
#include "ap2/errors.hpp"
#include "ap2/linalg.hpp"
#include "ap2/proj_plane.hpp"
#include "ap2/roots.hpp"

namespace ap2::grassmann {

using algebra::AlgebraKind;

/// Index pairs (i < j) of the 15 Pluecker coordinates in R^6, lexicographic.
inline const std::array<std::pair<int, int>, 15>& plucker_index_pairs() {
    static const std::array<std::pair<int, int>, 15> pairs = {{{0, 1},
                                                               {0, 2},
                                                               {0, 3},
                                                               {0, 4},
                                                               {0, 5},
                                                               {1, 2},
                                                               {1, 3},
                                                               {1, 4},
                                                               {1, 5},
                                                               {2, 3},
                                                               {2, 4},
                                                               {2, 5},
                                                               {3, 4},
                                                               {3, 5},
                                                               {4, 5}}};
    return pairs;
}

/// Projective line in RP^5: a spanning pair plus its cached Pluecker vector.
template <class S>
class Line5 {
public:
    Line5(lin::Vec<S> p, lin::Vec<S> q) : p_(std::move(p)), q_(std::move(q)) {
        if (p_.size() != 6 || q_.size() != 6) throw ContractViolation("line spans need 6-vectors");
        plucker_.reserve(15);
        for (const auto& [i, j] : plucker_index_pairs())
            plucker_.push_back(p_[i] * q_[j] - p_[j] * q_[i]);
        bool nonzero = false;
        for (const S& c : plucker_)
            if (c != S(0)) nonzero = true;
        if (!nonzero) throw ContractViolation("spanning pair is dependent");
    }

    const lin::Vec<S>& p() const { return p_; }
    const lin::Vec<S>& q() const { return q_; }
    const lin::Vec<S>& plucker() const { return plucker_; }

    /// Pluecker vector scaled so its largest-magnitude entry is 1.
    lin::Vec<S> canonical_plucker() const { return lin::normalize_homogeneous(plucker_); }

    /// The Grassmann quadratic relations; identically zero for any spanning
    /// pair, asserted as a sanity check on the cached coordinates.
    std::vector<S> quadratic_relation_values() const {
        auto idx = [](int i, int j) {
            // position of (i,j), i<j, in the lexicographic pair list
            static const int base[6] = {0, 5, 9, 12, 14, 15};
            return base[i] + (j - i - 1);
        };
        std::vector<S> vals;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                for (int k = j + 1; k < 6; ++k)
                    for (int l = k + 1; l < 6; ++l)
                        vals.push_back(plucker_[idx(i, j)] * plucker_[idx(k, l)] -
                                       plucker_[idx(i, k)] * plucker_[idx(j, l)] +
                                       plucker_[idx(i, l)] * plucker_[idx(j, k)]);
        return vals;
    }

private:
    lin::Vec<S> p_, q_;
    lin::Vec<S> plucker_;
};

/// Max-abs difference of canonical Pluecker vectors; 0 iff equal lines.
template <class S>
double plucker_distance(const Line5<S>& a, const Line5<S>& b) {
    auto pa = a.canonical_plucker();
    auto pb = b.canonical_plucker();
    double d = 0;
    for (std::size_t i = 0; i < 15; ++i)
        d = std::max(d, std::fabs(scalar_to_double(pa[i]) - scalar_to_double(pb[i])));
    return d;
}

template <class S>
bool same_line(const Line5<S>& a, const Line5<S>& b, double tol = 1e-12) {
    if constexpr (is_exact_v<S>) {
        return a.canonical_plucker() == b.canonical_plucker();
    } else {
        return plucker_distance(a, b) <= tol;
    }
}

/// Two-dimensional plane in RP^5 spanned by three independent points.
template <class S>
class Plane5 {
public:
    explicit Plane5(std::vector<lin::Vec<S>> span) : span_(std::move(span)) {
        if (span_.size() != 3) throw ContractViolation("plane needs three spanning vectors");
        if (lin::rank(lin::Mat<S>::from_rows(span_)) != 3)
            throw ContractViolation("plane spanning vectors are dependent");
        space_ = lin::Subspace<S>::span(span_);
    }

    const std::vector<lin::Vec<S>>& span() const { return span_; }
    const lin::Subspace<S>& space() const { return space_; }
    bool contains(const lin::Vec<S>& v, double tol = lin::kDefaultRankTol) const {
        return space_.contains(v, tol);
    }

private:
    std::vector<lin::Vec<S>> span_;
    lin::Subspace<S> space_;
};

enum class CongruenceClass { Elliptic, Hyperbolic, Parabolic };

inline const char* congruence_class_name(CongruenceClass c) {
    switch (c) {
        case CongruenceClass::Elliptic: return "elliptic";
        case CongruenceClass::Hyperbolic: return "hyperbolic";
        case CongruenceClass::Parabolic: return "parabolic";
    }
    return "?";
}

/// Lift of a plane point to its line in RP^5: the two columns of the stacked
/// coordinate representation span the line.
template <class S>
Line5<S> embed(const plane::PointA<S>& p) {
    auto sc = p.columns();
    return Line5<S>(sc.col0, sc.col1);
}

/// Lines meet iff their four spanning points fail to span a 3-space.
template <class S>
bool lines_intersect(const Line5<S>& l1, const Line5<S>& l2, double tol = lin::kDefaultRankTol) {
    lin::Mat<S> m = lin::Mat<S>::from_rows({l1.p(), l1.q(), l2.p(), l2.q()});
    return lin::rank(m, tol) < 4;
}

/// Consistency determinant of the focal system of the congruence, as a
/// quartic in the position lambda of the focus candidate on the line:
/// (1 + lambda^2)^2, (1 - lambda^2)^2 or lambda^4 depending on the algebra.
template <class S>
roots::Poly<S> focal_polynomial(AlgebraKind kind) {
    switch (kind) {
        case AlgebraKind::Complex:
            return roots::Poly<S>({S(1), S(0), S(2), S(0), S(1)});
        case AlgebraKind::Double:
            return roots::Poly<S>({S(1), S(0), S(-2), S(0), S(1)});
        case AlgebraKind::Dual:
            return roots::Poly<S>({S(0), S(0), S(0), S(0), S(1)});
    }
    throw ContractViolation("unknown algebra kind");
}

/// A complex 2-plane stored as (real part, imaginary part) spanning pairs;
/// the second plane of the conjugate pair is implied.
template <class S>
struct ComplexPlanePair {
    std::vector<std::pair<lin::Vec<S>, lin::Vec<S>>> basis;  // (re, im) per basis vector
};

template <class S>
struct FocalPlanes {
    std::vector<Plane5<S>> real_planes;
    std::optional<ComplexPlanePair<S>> complex_pair;
};

/// The fixed focal planes of the congruence expressed in a frame a0..a5.
/// Double numbers: two real planes, spanned by the sums and differences of
/// consecutive frame points. Dual numbers: the single plane a1 ^ a3 ^ a5.
/// Complex numbers: a conjugate pair of complex planes, no real ones.
template <class S>
FocalPlanes<S> focal_planes(AlgebraKind kind, const std::vector<lin::Vec<S>>& frame) {
    if (frame.size() != 6) throw ContractViolation("focal_planes needs six frame vectors");
    if (lin::rank(lin::Mat<S>::from_rows(frame)) != 6)
        throw ContractViolation("frame vectors are dependent");
    FocalPlanes<S> out;
    switch (kind) {
        case AlgebraKind::Double: {
            std::vector<lin::Vec<S>> plus, minus;
            for (int j = 0; j < 3; ++j) {
                plus.push_back(lin::vec_add(frame[2 * j], frame[2 * j + 1]));
                minus.push_back(lin::vec_sub(frame[2 * j], frame[2 * j + 1]));
            }
            out.real_planes.emplace_back(plus);
            out.real_planes.emplace_back(minus);
            break;
        }
        case AlgebraKind::Dual:
            out.real_planes.emplace_back(
                std::vector<lin::Vec<S>>{frame[1], frame[3], frame[5]});
            break;
        case AlgebraKind::Complex: {
            ComplexPlanePair<S> pair;
            for (int j = 0; j < 3; ++j) pair.basis.emplace_back(frame[2 * j + 1], frame[2 * j]);
            out.complex_pair = std::move(pair);
            break;
        }
    }
    return out;
}

namespace detail {
template <class S>
double residual_to_double(const S& v) {
    return std::fabs(scalar_to_double(v));
}
}  // namespace detail

/// Exact membership certificates for the standard-basis focal planes.
/// Double: u0 = +-u1, u2 = +-u3, u4 = +-u5. Dual: slots 0, 2, 4 vanish.
template <class S>
double plane_membership_residual(AlgebraKind kind, int plane_index, const lin::Vec<S>& u) {
    double r = 0;
    switch (kind) {
        case AlgebraKind::Double: {
            S sign = plane_index == 0 ? S(1) : S(-1);
            for (int j = 0; j < 3; ++j)
                r = std::max(r, detail::residual_to_double(u[2 * j] - sign * u[2 * j + 1]));
            break;
        }
        case AlgebraKind::Dual:
            for (int j = 0; j < 3; ++j) r = std::max(r, detail::residual_to_double(u[2 * j]));
            break;
        case AlgebraKind::Complex:
            throw ContractViolation("complex congruence has no real focal planes");
    }
    return r;
}

/// Residual of the complexified membership f = re + i*im in the complex
/// focal plane (plane_index 0) or its conjugate (1).
template <class S>
double complex_plane_membership_residual(int plane_index, const lin::Vec<S>& re,
                                         const lin::Vec<S>& im) {
    S sign = plane_index == 0 ? S(1) : S(-1);
    double r = 0;
    for (int j = 0; j < 3; ++j) {
        r = std::max(r, detail::residual_to_double(re[2 * j] + sign * im[2 * j + 1]));
        r = std::max(r, detail::residual_to_double(im[2 * j] - sign * re[2 * j + 1]));
    }
    return r;
}

/// Congruence classification by the real-root structure of its focal
/// polynomial: two real foci -> hyperbolic, one -> parabolic, none ->
/// elliptic.
template <class S>
struct CongruenceClassification {
    AlgebraKind kind;
    CongruenceClass cls;
    roots::RootSet<S> focal_roots;  // all roots, conjugate pairs included
};

template <class S>
CongruenceClassification<S> classify_congruence(AlgebraKind kind) {
    CongruenceClassification<S> out;
    out.kind = kind;
    out.focal_roots = roots::all_roots_with_multiplicity(focal_polynomial<S>(kind));
    std::size_t real_count = out.focal_roots.real_roots().size();
    out.cls = real_count == 2   ? CongruenceClass::Hyperbolic
              : real_count == 1 ? CongruenceClass::Parabolic
                                : CongruenceClass::Elliptic;
    return out;
}

struct MembershipFailure {
    std::size_t sample_index;
    std::string focus;     // which focus failed
    std::string plane;     // which plane it should lie in
    double residual;
    std::string point_json;  // filled by the caller when serializing
};

template <class S>
struct CongruenceReport {
    AlgebraKind kind{};
    CongruenceClass cls{};
    std::size_t samples = 0;
    std::size_t passes = 0;
    std::vector<MembershipFailure> failures;
    double max_residual = 0;

    bool all_passed() const { return failures.empty(); }
};

/// Check, for each embedded sample line, that its foci lie in the fixed
/// focal planes of the congruence: f = x1 +- x0 in the two real planes for
/// double numbers, x1 in the plane spanned by the odd basis vectors for dual
/// numbers, and the complexified pair x1 +- i x0 for complex numbers.
template <class S>
CongruenceReport<S> verify_congruence_membership(AlgebraKind kind,
                                                 const std::vector<plane::PointA<S>>& sample,
                                                 double tol = 1e-10) {
    CongruenceReport<S> report;
    report.kind = kind;
    report.cls = classify_congruence<S>(kind).cls;
    report.samples = sample.size();
    for (std::size_t idx = 0; idx < sample.size(); ++idx) {
        auto sc = sample[idx].columns();
        bool ok = true;
        auto record = [&](const char* focus, const char* plane, double r) {
            report.max_residual = std::max(report.max_residual, r);
            bool pass = is_exact_v<S> ? r == 0.0 : r <= tol;
            if (!pass) {
                ok = false;
                report.failures.push_back({idx, focus, plane, r, ""});
            }
        };
        switch (kind) {
            case AlgebraKind::Double: {
                auto fplus = lin::vec_add(sc.col1, sc.col0);
                auto fminus = lin::vec_sub(sc.col1, sc.col0);
                record("x1 + x0", "pi1", plane_membership_residual(kind, 0, fplus));
                record("x1 - x0", "pi2", plane_membership_residual(kind, 1, fminus));
                break;
            }
            case AlgebraKind::Dual:
                record("x1", "pi", plane_membership_residual(kind, 0, sc.col1));
                break;
            case AlgebraKind::Complex:
                record("x1 + i x0", "pi1", complex_plane_membership_residual(0, sc.col1, sc.col0));
                record("x1 - i x0", "pi2", complex_plane_membership_residual(1, sc.col1, sc.col0));
                break;
        }
        if (ok) ++report.passes;
    }
    return report;
}

}  // namespace ap2::grassmann
