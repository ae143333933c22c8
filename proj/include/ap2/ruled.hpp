// Algebra-analytic curves in the plane over a two-dimensional algebra, the
// ruled 3-folds they sweep in RP^5, rank of the Gauss map, per-generator
// foci and the singular-locus classification (join / plane-curve family /
// no real singularities).
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ap2/algebra2d.hpp"
#include "ap2/errors.hpp"
#include "ap2/grassmann.hpp"
#include "ap2/jet.hpp"
#include "ap2/linalg.hpp"
#include "ap2/proj_plane.hpp"
#include "ap2/roots.hpp"

namespace ap2::ruled {

using algebra::A2;
using algebra::AlgebraKind;

template <class T, class S>
A2<T> lift_a2(const A2<S>& a) {
    return A2<T>(a.kind, T(a.x), T(a.y));
}

/// Polynomial in one algebra variable with algebra coefficients, ascending.
template <class S>
class PolyA {
public:
    PolyA(AlgebraKind kind, std::vector<A2<S>> coeffs) : kind_(kind), c_(std::move(coeffs)) {
        for (const auto& c : c_)
            if (c.kind != kind_) throw ContractViolation("coefficient kind mismatch");
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    static PolyA zero(AlgebraKind kind) { return PolyA(kind, {}); }

    AlgebraKind kind() const { return kind_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<A2<S>>& coeffs() const { return c_; }

    template <class T>
    A2<T> eval_lifted(const A2<T>& z) const {
        A2<T> acc = A2<T>::zero(kind_);
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = algebra::add(algebra::mul(acc, z), lift_a2<T>(c_[i]));
        return acc;
    }

    A2<S> eval(const A2<S>& z) const { return eval_lifted<S>(z); }

    PolyA derivative() const {
        std::vector<A2<S>> d;
        for (std::size_t i = 1; i < c_.size(); ++i)
            d.push_back(algebra::scale(c_[i], S(static_cast<int>(i))));
        return PolyA(kind_, std::move(d));
    }

private:
    AlgebraKind kind_;
    std::vector<A2<S>> c_;
};

/// Curve z -> (1, F1(z), F2(z)) in the affine chart of the plane; the induced
/// two-parameter family of embedded lines is the ruled 3-fold under study.
template <class S>
class CurveA {
public:
    CurveA(AlgebraKind kind, PolyA<S> f1, PolyA<S> f2)
        : kind_(kind), f1_(std::move(f1)), f2_(std::move(f2)) {
        if (f1_.kind() != kind_ || f2_.kind() != kind_)
            throw ContractViolation("curve component kind mismatch");
    }

    AlgebraKind kind() const { return kind_; }
    const PolyA<S>& f1() const { return f1_; }
    const PolyA<S>& f2() const { return f2_; }
    int degree() const { return std::max(f1_.degree(), f2_.degree()); }

    /// Spanning columns of the embedded line at parameter (t1, t2), generic
    /// over the scalar so jets flow through for derivatives.
    template <class T>
    plane::StackedColumns<T> line_at(const T& t1, const T& t2) const {
        A2<T> z(kind_, t1, t2);
        std::array<A2<T>, 3> triple = {A2<T>::unit(kind_), f1_.eval_lifted(z), f2_.eval_lifted(z)};
        return plane::stacked_columns(kind_, triple);
    }

    plane::PointA<S> point_at(const A2<S>& z) const {
        if (z.kind != kind_) throw ContractViolation("parameter kind mismatch");
        return plane::PointA<S>(kind_, A2<S>::unit(kind_), f1_.eval(z), f2_.eval(z));
    }

private:
    AlgebraKind kind_;
    PolyA<S> f1_, f2_;
};

template <class S>
plane::PointA<S> eval_curve(const CurveA<S>& c, const A2<S>& z) {
    return c.point_at(z);
}

/// Component-wise formal derivative dF/dz; the directional derivatives along
/// the two real parameters are F'(z) and u*F'(z).
template <class S>
CurveA<S> curve_derivative(const CurveA<S>& c) {
    return CurveA<S>(c.kind(), c.f1().derivative(), c.f2().derivative());
}

/// Generator columns and their first partial derivatives at one parameter.
template <class S>
struct FirstOrder {
    S t1{}, t2{};
    lin::Vec<S> a0, a1;
    lin::Vec<S> d1a0, d2a0, d1a1, d2a1;
};

namespace detail {

template <class S>
lin::Vec<S> jet_values(const lin::Vec<Jet<S>>& v) {
    lin::Vec<S> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].v;
    return out;
}
template <class S>
lin::Vec<S> jet_d1(const lin::Vec<Jet<S>>& v) {
    lin::Vec<S> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].d1;
    return out;
}
template <class S>
lin::Vec<S> jet_d2(const lin::Vec<Jet<S>>& v) {
    lin::Vec<S> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].d2;
    return out;
}

}  // namespace detail

template <class S>
FirstOrder<S> first_order(const CurveA<S>& c, const S& t1, const S& t2) {
    auto cols = c.line_at(Jet<S>::variable1(t1), Jet<S>::variable2(t2));
    FirstOrder<S> fo;
    fo.t1 = t1;
    fo.t2 = t2;
    fo.a0 = detail::jet_values(cols.col0);
    fo.a1 = detail::jet_values(cols.col1);
    fo.d1a0 = detail::jet_d1(cols.col0);
    fo.d2a0 = detail::jet_d2(cols.col0);
    fo.d1a1 = detail::jet_d1(cols.col1);
    fo.d2a1 = detail::jet_d2(cols.col1);
    return fo;
}

/// Generator with the adapted points a2, a3 completing its moving tangent
/// space, built by pivot reduction of the derivative columns; the reduction
/// is deterministic and stays smooth near generic parameters.
template <class S>
struct AdaptedFrame {
    FirstOrder<S> fo;
    lin::Vec<S> a2, a3;

    grassmann::Line5<S> generator() const { return grassmann::Line5<S>(fo.a0, fo.a1); }
};

template <class S>
AdaptedFrame<S> adapted_frame(const CurveA<S>& c, const S& t1, const S& t2,
                              double tol = lin::kDefaultRankTol) {
    FirstOrder<S> fo = first_order(c, t1, t2);
    lin::PivotReducer<S> red(tol);
    if (!red.try_add(fo.a0) || !red.try_add(fo.a1))
        throw DegenerateSample("generator columns are dependent at this parameter");
    AdaptedFrame<S> out{std::move(fo), {}, {}};
    std::vector<const lin::Vec<S>*> cands = {&out.fo.d1a0, &out.fo.d2a0, &out.fo.d1a1,
                                             &out.fo.d2a1};
    std::vector<lin::Vec<S>> picked;
    for (const auto* v : cands) {
        if (picked.size() == 2) break;
        if (red.try_add(*v)) picked.push_back(red.rows().back());
    }
    if (picked.size() < 2)
        throw DegenerateSample("tangent subspace has rank < 4 at this parameter");
    out.a2 = picked[0];
    out.a3 = picked[1];
    return out;
}

/// Deviation from "the tangent subspace is one fixed 4-space along the
/// generator": the pointwise tangent spaces at x = a1 + lambda a0 for
/// lambda in {0, 1, -1} must coincide wherever they have full dimension 4,
/// and must stay inside the common span where they degenerate (a degenerate
/// position is a focus, i.e. a singular point of the swept 3-fold).
template <class S>
double tangent_space_spread(const FirstOrder<S>& fo, double tol = lin::kDefaultRankTol) {
    std::vector<lin::Vec<S>> all = {fo.a0, fo.a1, fo.d1a0, fo.d2a0, fo.d1a1, fo.d2a1};
    auto full = lin::Subspace<S>::span(all, tol);
    double worst = 0;
    std::vector<lin::Subspace<S>> smooth;
    for (int lambda : {0, 1, -1}) {
        S l(lambda);
        std::vector<lin::Vec<S>> rows = {
            fo.a0, fo.a1, lin::vec_add(fo.d1a1, lin::vec_scale(fo.d1a0, l)),
            lin::vec_add(fo.d2a1, lin::vec_scale(fo.d2a0, l))};
        auto sp = lin::Subspace<S>::span(rows, tol);
        if (sp.dim() == 4) {
            smooth.push_back(std::move(sp));
            continue;
        }
        // focal position on the generator: check containment only
        for (const auto& r : rows) {
            if constexpr (is_exact_v<S>) {
                if (!full.contains(r)) worst = std::max(worst, 1.0);
            } else {
                auto res = full.residual(r);
                double den = std::max(1.0, scalar_to_double(lin::max_abs(r)));
                worst = std::max(worst, scalar_to_double(lin::max_abs(res)) / den);
            }
        }
    }
    for (std::size_t i = 0; i < smooth.size(); ++i)
        for (std::size_t j = i + 1; j < smooth.size(); ++j) {
            if constexpr (is_exact_v<S>) {
                if (!(smooth[i] == smooth[j])) worst = std::max(worst, 1.0);
            } else {
                worst = std::max(worst, lin::subspace_distance(smooth[i], smooth[j]));
            }
        }
    return worst;
}

/// Rank of the span of the generator and all first derivative columns; 4 for
/// a generic curve sample, 3 along a straight line. When the rank is 4 the
/// tangent space is also checked to be the same subspace at three points of
/// the generator, which is the degenerate-Gauss-map statement itself.
template <class S>
std::size_t tangent_rank(const CurveA<S>& c, const S& t1, const S& t2,
                         double tol = lin::kDefaultRankTol) {
    FirstOrder<S> fo = first_order(c, t1, t2);
    std::vector<lin::Vec<S>> rows = {fo.a0, fo.a1, fo.d1a0, fo.d2a0, fo.d1a1, fo.d2a1};
    std::vector<lin::Vec<S>> kept;
    for (auto& r : rows) {
        if constexpr (is_exact_v<S>) {
            kept.push_back(r);
        } else {
            double m = scalar_to_double(lin::max_abs(r));
            if (m > 1e-14) kept.push_back(lin::vec_scale(r, S(1.0 / m)));
        }
    }
    std::size_t rk = lin::rank(lin::Mat<S>::from_rows(kept), tol);
    if (rk == 4) {
        double gap = tangent_space_spread(fo, tol);
        if (gap > 1e-8)
            throw Error("tangent subspace varies along the generator (spread " +
                        std::to_string(gap) + ")");
    }
    return rk;
}

/// Line field sampled numerically: any map (t1, t2) -> spanning columns.
/// Lets tests feed non-analytic perturbations to the smoothness check.
using LineField = std::function<plane::StackedColumns<double>(double, double)>;

template <class S>
LineField to_line_field(const CurveA<S>& c) {
    CurveA<double> dc = [&] {
        auto conv = [](const PolyA<S>& p) {
            std::vector<A2<double>> cc;
            for (const auto& a : p.coeffs())
                cc.emplace_back(a.kind, scalar_to_double(a.x), scalar_to_double(a.y));
            return PolyA<double>(p.kind(), std::move(cc));
        };
        return CurveA<double>(c.kind(), conv(c.f1()), conv(c.f2()));
    }();
    return [dc](double t1, double t2) { return dc.template line_at<double>(t1, t2); };
}

inline constexpr double kFiniteDifferenceStep = 1e-5;

/// Numerical smoothness test: the four centered finite-difference derivative
/// vectors of the spanning columns must stay inside the 4-space spanned by
/// the generator and its tangent directions (rank of the stack <= 4).
inline bool check_smoothness(const LineField& field, double t1, double t2,
                             double h = kFiniteDifferenceStep, double tol = lin::kDefaultRankTol) {
    auto center = field(t1, t2);
    {
        lin::Mat<double> g(6, 2);
        for (std::size_t i = 0; i < 6; ++i) {
            g(i, 0) = center.col0[i];
            g(i, 1) = center.col1[i];
        }
        if (lin::rank(g, tol) < 2)
            throw DegenerateSample("generator columns are dependent at this parameter");
    }
    auto diff = [&](bool along1, bool first) {
        auto plusF = field(t1 + (along1 ? h : 0), t2 + (along1 ? 0 : h));
        auto minusF = field(t1 - (along1 ? h : 0), t2 - (along1 ? 0 : h));
        const auto& plus = first ? plusF.col0 : plusF.col1;
        const auto& minus = first ? minusF.col0 : minusF.col1;
        lin::Vec<double> d(6);
        for (std::size_t i = 0; i < 6; ++i) d[i] = (plus[i] - minus[i]) / (2 * h);
        return d;
    };
    std::vector<lin::Vec<double>> rows = {center.col0,       center.col1,       diff(true, true),
                                          diff(false, true), diff(true, false), diff(false, false)};
    std::vector<lin::Vec<double>> kept;
    for (auto& r : rows) {
        double m = lin::max_abs(r);
        if (m > 1e-12) kept.push_back(lin::vec_scale(r, 1.0 / m));
    }
    return lin::rank(lin::Mat<double>::from_rows(kept), tol) <= 4;
}

/// Exact-derivative variant for curves; rank computed without differencing.
template <class S>
bool check_smoothness(const CurveA<S>& c, const S& t1, const S& t2,
                      double tol = lin::kDefaultRankTol) {
    FirstOrder<S> fo = first_order(c, t1, t2);
    lin::Mat<S> g(6, 2);
    for (std::size_t i = 0; i < 6; ++i) {
        g(i, 0) = fo.a0[i];
        g(i, 1) = fo.a1[i];
    }
    if (lin::rank(g, tol) < 2)
        throw DegenerateSample("generator columns are dependent at this parameter");
    lin::Mat<S> m = lin::Mat<S>::from_rows({fo.a0, fo.a1, fo.d1a0, fo.d2a0, fo.d1a1, fo.d2a1});
    return lin::rank(m, tol) <= 4;
}

/// Focus polynomial expected from the algebra's structure: lambda^2 + 1,
/// lambda^2 - 1 or lambda^2.
template <class S>
roots::Poly<S> closed_form_focus_polynomial(AlgebraKind kind) {
    switch (kind) {
        case AlgebraKind::Complex: return roots::Poly<S>({S(1), S(0), S(1)});
        case AlgebraKind::Double: return roots::Poly<S>({S(-1), S(0), S(1)});
        case AlgebraKind::Dual: return roots::Poly<S>({S(0), S(0), S(1)});
    }
    throw ContractViolation("unknown algebra kind");
}

template <class S>
struct GeneratorFoci {
    roots::Poly<S> focus_poly;   // generic minor-based solver output
    roots::RootSet<S> roots;     // its roots with multiplicities
    std::vector<std::pair<roots::Root<S>, lin::Vec<S>>> real_foci;  // (root, a1 + lambda a0)
};

/// Generic focus solver on one generator: project the derivative columns of
/// a1 + lambda a0 to the quotient by the generator span; the 2x2 minors of
/// the projected 2-column system are proportional quadratics whose common
/// roots locate the foci. The result is cross-checked against the closed
/// form for the algebra; disagreement is surfaced, never reconciled.
template <class S>
GeneratorFoci<S> generator_foci(const CurveA<S>& c, const S& t1, const S& t2,
                                double tol = lin::kDefaultRankTol) {
    FirstOrder<S> fo = first_order(c, t1, t2);
    lin::PivotReducer<S> gen(tol);
    if (!gen.try_add(fo.a0) || !gen.try_add(fo.a1))
        throw DegenerateSample("generator columns are dependent at this parameter");
    lin::Vec<S> A1 = gen.residual(fo.d1a1);
    lin::Vec<S> B1 = gen.residual(fo.d1a0);
    lin::Vec<S> A2v = gen.residual(fo.d2a1);
    lin::Vec<S> B2 = gen.residual(fo.d2a0);
    {
        lin::PivotReducer<S> quot(tol);
        int extra = 0;
        for (const auto* v : {&A1, &B1, &A2v, &B2})
            if (quot.try_add(*v)) ++extra;
        if (extra < 2) throw DegenerateSample("tangent subspace has rank < 4 at this parameter");
        if (extra > 2) throw DegenerateSample("curve is not algebra-smooth at this parameter");
    }

    // 2x2 minors of [v1(lambda) v2(lambda)] with v1 = A1 + lambda B1,
    // v2 = A2 + lambda B2, as quadratics in lambda
    std::vector<roots::Poly<S>> minors;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j) {
            S q0 = A1[i] * A2v[j] - A1[j] * A2v[i];
            S q1 = A1[i] * B2[j] + B1[i] * A2v[j] - A1[j] * B2[i] - B1[j] * A2v[i];
            S q2 = B1[i] * B2[j] - B1[j] * B2[i];
            roots::Poly<S> m({q0, q1, q2});
            if (!m.is_zero()) minors.push_back(std::move(m));
        }
    if (minors.empty())
        throw DegenerateSample("every point of the generator is focal");

    std::size_t best = 0;
    for (std::size_t k = 1; k < minors.size(); ++k)
        if (minors[k].max_abs_coeff() > minors[best].max_abs_coeff()) best = k;
    const roots::Poly<S>& p = minors[best];

    // all minors must be scalar multiples of the chosen one
    for (const auto& m : minors) {
        for (int i = 0; i <= 2; ++i)
            for (int j = i + 1; j <= 2; ++j) {
                S cross = m.coeff(i) * p.coeff(j) - m.coeff(j) * p.coeff(i);
                if constexpr (is_exact_v<S>) {
                    if (cross != S(0)) throw Error("focal minor system is not rank one");
                } else {
                    double scale = m.max_abs_coeff() * p.max_abs_coeff();
                    if (std::fabs(scalar_to_double(cross)) > 1e-7 * std::max(scale, 1e-30))
                        throw Error("focal minor system is not rank one");
                }
            }
    }
    if (p.degree() < 2)
        throw DegenerateSample("a focus escapes to infinity on this generator");

    GeneratorFoci<S> out;
    out.focus_poly = p;
    out.roots = roots::all_roots_with_multiplicity(p);

    // cross-check against the closed form
    auto expected = roots::all_roots_with_multiplicity(closed_form_focus_polynomial<S>(c.kind()));
    auto generic_real = out.roots.real_roots();
    auto expected_real = expected.real_roots();
    bool match = generic_real.size() == expected_real.size();
    if (match) {
        for (std::size_t k = 0; k < generic_real.size(); ++k) {
            if (generic_real[k].multiplicity != expected_real[k].multiplicity) match = false;
            double d = std::fabs(scalar_to_double(generic_real[k].re) -
                                 scalar_to_double(expected_real[k].re));
            if (d > 1e-6) match = false;
        }
    }
    if (!match) throw Error("generic focus solver disagrees with the closed form");

    for (const auto& r : generic_real)
        out.real_foci.emplace_back(r, lin::vec_add(fo.a1, lin::vec_scale(fo.a0, r.re)));
    return out;
}

enum class SurfaceClass { NoRealSingularities, Join, PlaneCurveFamily };

inline const char* surface_class_name(SurfaceClass c) {
    switch (c) {
        case SurfaceClass::NoRealSingularities: return "no-real-singularities";
        case SurfaceClass::Join: return "join";
        case SurfaceClass::PlaneCurveFamily: return "plane-curve-family";
    }
    return "?";
}

inline SurfaceClass expected_surface_class(AlgebraKind kind) {
    switch (kind) {
        case AlgebraKind::Complex: return SurfaceClass::NoRealSingularities;
        case AlgebraKind::Double: return SurfaceClass::Join;
        case AlgebraKind::Dual: return SurfaceClass::PlaneCurveFamily;
    }
    throw ContractViolation("unknown algebra kind");
}

template <class S>
struct SampleRecord {
    S t1{}, t2{};
    bool degenerate = false;
    std::string reason;
    std::size_t rank = 0;
    std::optional<roots::RootSet<S>> foci;
    std::optional<grassmann::Line5<S>> generator;
    double membership_residual = 0;
    bool membership_ok = true;
};

template <class S>
struct FocalCurvePoint {
    S param{};
    lin::Vec<S> point;
};

template <class S>
struct SurfaceReport {
    AlgebraKind kind{};
    SurfaceClass cls{};              // derived from the observed root structure
    bool classified = false;         // at least one sample supported the classification
    bool consistent = true;          // every sample agrees and all memberships hold
    std::size_t samples = 0;
    std::size_t degenerate_count = 0;
    double max_membership_residual = 0;
    std::vector<SampleRecord<S>> records;
    // Join: two curves (planes pi1, pi2); plane-curve family: one; else none.
    std::vector<std::vector<FocalCurvePoint<S>>> focal_curves;
};

/// Per-sample classification by the real-root structure of the focus
/// polynomial: two simple real foci -> join, one double real focus ->
/// plane-curve family, none -> no real singularities.
template <class S>
std::optional<SurfaceClass> classify_sample(const roots::RootSet<S>& rs) {
    auto real = rs.real_roots();
    if (real.empty()) return SurfaceClass::NoRealSingularities;
    if (real.size() == 1 && real[0].multiplicity == 2) return SurfaceClass::PlaneCurveFamily;
    if (real.size() == 2 && real[0].multiplicity == 1 && real[1].multiplicity == 1)
        return SurfaceClass::Join;
    return std::nullopt;
}

namespace detail {

template <class S>
bool params_equal(const S& a, const S& b) {
    if constexpr (is_exact_v<S>) {
        return a == b;
    } else {
        return std::fabs(scalar_to_double(a) - scalar_to_double(b)) <= 1e-12;
    }
}

template <class S>
void insert_focal_point(std::vector<FocalCurvePoint<S>>& curve, const S& param,
                        const lin::Vec<S>& pt, bool& consistent, double tol) {
    for (auto& existing : curve) {
        if (!params_equal(existing.param, param)) continue;
        double d = 0;
        for (std::size_t i = 0; i < 6; ++i)
            d = std::max(d, std::fabs(scalar_to_double(existing.point[i]) -
                                      scalar_to_double(pt[i])));
        if (d > tol) consistent = false;  // same parameter, different focus point
        return;
    }
    curve.push_back({param, pt});
}

}  // namespace detail

/// Sweep a parameter grid, solve for the foci of every generator and verify
/// that they land in the fixed focal planes of the congruence; classify the
/// surface by the observed root structure. Double numbers produce a join of
/// two plane curves (returned, parameterized by t1 +- t2), dual numbers one
/// plane curve (parameterized by t1), complex numbers nothing real.
template <class S>
SurfaceReport<S> singular_locus(const CurveA<S>& c, const std::vector<S>& grid_t1,
                                const std::vector<S>& grid_t2, double tol = 1e-10) {
    SurfaceReport<S> report;
    report.kind = c.kind();
    report.cls = expected_surface_class(c.kind());  // overwritten by observation below
    switch (c.kind()) {
        case AlgebraKind::Double: report.focal_curves.resize(2); break;
        case AlgebraKind::Dual: report.focal_curves.resize(1); break;
        case AlgebraKind::Complex: break;
    }
    for (const S& t1 : grid_t1) {
        for (const S& t2 : grid_t2) {
            SampleRecord<S> rec;
            rec.t1 = t1;
            rec.t2 = t2;
            report.samples++;
            try {
                FirstOrder<S> fo = first_order(c, t1, t2);
                auto foci = generator_foci(c, t1, t2);
                rec.rank = 4;
                rec.foci = foci.roots;
                rec.generator = grassmann::Line5<S>(fo.a0, fo.a1);

                auto observed = classify_sample(foci.roots);
                if (!observed) {
                    rec.membership_ok = false;
                    report.consistent = false;
                } else if (!report.classified) {
                    report.cls = *observed;
                    report.classified = true;
                } else if (*observed != report.cls) {
                    report.consistent = false;
                }

                auto residual = [&](double r) {
                    rec.membership_residual = std::max(rec.membership_residual, r);
                    report.max_membership_residual =
                        std::max(report.max_membership_residual, r);
                    bool pass = is_exact_v<S> ? r == 0.0 : r <= tol;
                    if (!pass) rec.membership_ok = false;
                };
                if (observed == SurfaceClass::Join) {
                    if (c.kind() != AlgebraKind::Double) {
                        rec.membership_ok = false;
                    } else {
                        for (auto& [root, f] : foci.real_foci) {
                            bool plus = root.re > S(0);
                            residual(
                                grassmann::plane_membership_residual(c.kind(), plus ? 0 : 1, f));
                            S param = plus ? S(t1 + t2) : S(t1 - t2);
                            detail::insert_focal_point(report.focal_curves[plus ? 0 : 1], param,
                                                       f, report.consistent, 1e-8);
                        }
                    }
                } else if (observed == SurfaceClass::PlaneCurveFamily) {
                    if (c.kind() != AlgebraKind::Dual) {
                        rec.membership_ok = false;
                    } else {
                        const auto& f = foci.real_foci[0].second;
                        residual(grassmann::plane_membership_residual(c.kind(), 0, f));
                        detail::insert_focal_point(report.focal_curves[0], t1, f,
                                                   report.consistent, 1e-8);
                    }
                }
                if (!rec.membership_ok) report.consistent = false;
            } catch (const DegenerateSample& e) {
                rec.degenerate = true;
                rec.reason = e.what();
                report.degenerate_count++;
            }
            report.records.push_back(std::move(rec));
        }
    }
    if (!report.classified) report.consistent = false;
    for (auto& curve : report.focal_curves)
        std::sort(curve.begin(), curve.end(), [](const auto& a, const auto& b) {
            return scalar_to_double(a.param) < scalar_to_double(b.param);
        });
    return report;
}

template <class S>
struct JoinResult {
    std::vector<std::optional<grassmann::Line5<S>>> lines;  // per matched pair
    std::size_t skipped = 0;                                // coincident pairs
};

/// Connect matched sample points of two curves; the resulting two-parameter
/// line family is the join. Pairs that collapse to one projective point are
/// skipped with a warning count (a cone through the shared vertex).
template <class S>
JoinResult<S> join_reconstruct(const std::vector<lin::Vec<S>>& curve1,
                               const std::vector<lin::Vec<S>>& curve2) {
    if (curve1.size() != curve2.size())
        throw ContractViolation("join curves must be sampled at matched parameters");
    JoinResult<S> out;
    for (std::size_t i = 0; i < curve1.size(); ++i) {
        lin::Mat<S> m = lin::Mat<S>::from_rows({curve1[i], curve2[i]});
        if (lin::rank(m) < 2) {
            out.lines.push_back(std::nullopt);
            out.skipped++;
            continue;
        }
        out.lines.emplace_back(grassmann::Line5<S>(curve1[i], curve2[i]));
    }
    return out;
}

/// Moving frame along the surface and its connection: F columns a0..a5,
/// directional derivatives dF/dt_d, and W_d = F^{-1} dF/dt_d realizing the
/// displacement forms on the two coordinate directions.
template <class S>
struct FrameDerivative {
    lin::Mat<S> frame;  // 6x6, columns a0..a5
    lin::Mat<S> d1, d2;
    lin::Mat<S> w1, w2;
};

template <class S>
FrameDerivative<S> frame_derivative(const CurveA<S>& c, const S& t1, const S& t2,
                                    double tol = lin::kDefaultRankTol) {
    using U = Jet<S>;
    using T = Jet<U>;
    // seeds: value carries (t, dt1, dt2); outer slots carry d/dt with their
    // own first derivatives so the chain rule reaches the frame construction
    T s1(U(t1, S(1), S(0)), U(S(1), S(0), S(0)), U(S(0), S(0), S(0)));
    T s2(U(t2, S(0), S(1)), U(S(0), S(0), S(0)), U(S(1), S(0), S(0)));
    auto cols = c.line_at(s1, s2);

    auto ucol = [](const lin::Vec<T>& v, int which) {
        lin::Vec<U> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            out[i] = which == 0 ? v[i].v : (which == 1 ? v[i].d1 : v[i].d2);
        return out;
    };
    lin::Vec<U> a0 = ucol(cols.col0, 0), a1 = ucol(cols.col1, 0);
    std::vector<lin::Vec<U>> cands = {ucol(cols.col0, 1), ucol(cols.col0, 2), ucol(cols.col1, 1),
                                      ucol(cols.col1, 2)};

    lin::PivotReducer<U> red(tol);
    if (!red.try_add(a0) || !red.try_add(a1))
        throw DegenerateSample("generator columns are dependent at this parameter");
    std::vector<lin::Vec<U>> frame_cols = {a0, a1};
    for (const auto& v : cands) {
        if (frame_cols.size() == 4) break;
        if (red.try_add(v)) frame_cols.push_back(red.rows().back());
    }
    if (frame_cols.size() < 4)
        throw DegenerateSample("tangent subspace has rank < 4 at this parameter");
    for (std::size_t e = 0; e < 6 && frame_cols.size() < 6; ++e) {
        lin::Vec<U> unit(6, U(S(0)));
        unit[e] = U(S(1));
        if (red.try_add(unit)) frame_cols.push_back(red.rows().back());
    }
    if (frame_cols.size() < 6) throw DegenerateSample("could not complete the moving frame");

    FrameDerivative<S> out;
    out.frame = lin::Mat<S>(6, 6);
    out.d1 = lin::Mat<S>(6, 6);
    out.d2 = lin::Mat<S>(6, 6);
    for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t i = 0; i < 6; ++i) {
            out.frame(i, j) = frame_cols[j][i].v;
            out.d1(i, j) = frame_cols[j][i].d1;
            out.d2(i, j) = frame_cols[j][i].d2;
        }
    out.w1 = lin::solve(out.frame, out.d1);
    out.w2 = lin::solve(out.frame, out.d2);
    return out;
}

inline constexpr double kStructureStep = 1e-3;

/// Residual of the integrability identity d2(W1) - d1(W2) = [W1, W2],
/// the numerical face of the structure equations of the frame field. The
/// connection matrices themselves carry exact derivatives (jets); only the
/// outer derivative is differenced, with one Richardson step so the residual
/// sits far below 10 h^2 whenever the W's come from a single smooth frame.
inline double structure_residual(const CurveA<double>& c, double t1, double t2,
                                 double h = kStructureStep) {
    auto central = [&](int which, double hh) {
        // d/dt_other of W_which, centered
        double e1 = which == 1 ? 0.0 : 1.0, e2 = which == 1 ? 1.0 : 0.0;
        auto plus = frame_derivative(c, t1 + e1 * hh, t2 + e2 * hh);
        auto minus = frame_derivative(c, t1 - e1 * hh, t2 - e2 * hh);
        return lin::mat_scale(
            lin::mat_sub(which == 1 ? plus.w1 : plus.w2, which == 1 ? minus.w1 : minus.w2),
            1.0 / (2 * hh));
    };
    auto richardson = [&](int which) {
        auto full = central(which, h);
        auto half = central(which, h / 2);
        return lin::mat_scale(lin::mat_sub(lin::mat_scale(half, 4.0), full), 1.0 / 3.0);
    };
    FrameDerivative<double> centerF = frame_derivative(c, t1, t2);
    lin::Mat<double> d2w1 = richardson(1);
    lin::Mat<double> d1w2 = richardson(2);
    lin::Mat<double> comm = lin::mat_sub(lin::mat_mul(centerF.w1, centerF.w2),
                                         lin::mat_mul(centerF.w2, centerF.w1));
    lin::Mat<double> res = lin::mat_sub(lin::mat_sub(d2w1, d1w2), comm);
    return lin::mat_max_abs(res);
}

}  // namespace ap2::ruled
