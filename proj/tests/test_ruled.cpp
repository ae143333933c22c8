#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ap2/ruled.hpp"
#include "test_support.hpp"

using namespace ap2;
using namespace ap2::ruled;
using algebra::A2;
using algebra::AlgebraKind;
using testsupport::parabola_curve;
using testsupport::random_curve;
using testsupport::uniform_grid;

namespace {

A2<Rational> ra(AlgebraKind k, int x, int y) {
    return A2<Rational>(k, Rational(x), Rational(y));
}

CurveA<Rational> straight_line(AlgebraKind k) {
    // (1, z, gamma z + delta) with generic constants
    PolyA<Rational> f1(k, {A2<Rational>::zero(k), A2<Rational>::unit(k)});
    PolyA<Rational> f2(k, {A2<Rational>(k, Rational(1, 3), Rational(2)),
                           A2<Rational>(k, Rational(2), Rational(-1, 2))});
    return CurveA<Rational>(k, f1, f2);
}

// finite-difference oracle for the tangent stack rank
std::size_t fd_tangent_rank(const LineField& field, double t1, double t2, double h = 1e-5) {
    auto center = field(t1, t2);
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
    return lin::rank(lin::Mat<double>::from_rows(kept));
}

}  // namespace

TEST_CASE("curve evaluation") {
    for (auto k : algebra::kAllKinds) {
        CurveA<Rational> c(k, PolyA<Rational>(k, {ra(k, 3, 1)}), PolyA<Rational>(k, {ra(k, 0, 2)}));
        auto p = eval_curve(c, ra(k, 7, -5));
        CHECK(p.coord(1) == ra(k, 3, 1));  // constants ignore z
        CHECK(p.coord(2) == ra(k, 0, 2));
    }

    auto k = AlgebraKind::Dual;
    auto c = parabola_curve<Rational>(k);
    auto p = eval_curve(c, ra(k, 1, 1));  // z = 1 + eps
    CHECK(p.coord(1) == ra(k, 1, 1));
    CHECK(p.coord(2) == ra(k, 1, 2));  // (1 + eps)^2 = 1 + 2 eps

    auto kd = AlgebraKind::Double;
    CurveA<Rational> line(kd, PolyA<Rational>(kd, {A2<Rational>::zero(kd), A2<Rational>::unit(kd)}),
                          PolyA<Rational>::zero(kd));
    auto q = eval_curve(line, ra(kd, 0, 1));
    CHECK(q.coord(1) == ra(kd, 0, 1));
    CHECK(q.coord(2) == ra(kd, 0, 0));
}

TEST_CASE("formal derivative") {
    auto k = AlgebraKind::Complex;
    auto c = parabola_curve<Rational>(k);
    auto d = curve_derivative(c);
    CHECK(d.f1().degree() == 0);  // d/dz z = 1
    CHECK(d.f1().coeffs()[0] == A2<Rational>::unit(k));
    CHECK(d.f2().degree() == 1);  // d/dz z^2 = 2z
    CHECK(d.f2().coeffs()[1] == ra(k, 2, 0));
    CHECK(curve_derivative(d).f1().degree() == -1);  // constant drops to zero
}

TEST_CASE("formal derivative agrees with finite differences") {
    rng::SplitMix64 g(61);
    for (auto k : algebra::kAllKinds) {
        for (int trial = 0; trial < 20; ++trial) {
            auto c = testsupport::to_double_curve(random_curve<Rational>(k, 3, g));
            auto d = curve_derivative(c);
            double t1 = 0.4, t2 = -0.3, h = kFiniteDifferenceStep;
            A2<double> z(k, t1, t2);
            // derivative along t1 is F'(z)
            auto fd1 = algebra::scale(
                algebra::sub(c.f1().eval(A2<double>(k, t1 + h, t2)),
                             c.f1().eval(A2<double>(k, t1 - h, t2))),
                1.0 / (2 * h));
            auto exact = d.f1().eval(z);
            double scale = std::max({1.0, std::fabs(exact.x), std::fabs(exact.y)});
            CHECK(std::fabs(fd1.x - exact.x) <= 1e-8 * scale);
            CHECK(std::fabs(fd1.y - exact.y) <= 1e-8 * scale);
            // derivative along t2 is u * F'(z)
            auto fd2 = algebra::scale(
                algebra::sub(c.f2().eval(A2<double>(k, t1, t2 + h)),
                             c.f2().eval(A2<double>(k, t1, t2 - h))),
                1.0 / (2 * h));
            auto exact2 = algebra::mul(A2<double>::unit_imaginary(k), d.f2().eval(z));
            double scale2 = std::max({1.0, std::fabs(exact2.x), std::fabs(exact2.y)});
            CHECK(std::fabs(fd2.x - exact2.x) <= 1e-8 * scale2);
            CHECK(std::fabs(fd2.y - exact2.y) <= 1e-8 * scale2);
        }
    }
}

TEST_CASE("analytic curves are smooth, a conjugate perturbation is not") {
    rng::SplitMix64 g(62);
    for (auto k : algebra::kAllKinds) {
        for (int trial = 0; trial < 10; ++trial) {
            auto c = random_curve<Rational>(k, 2 + trial % 3, g);
            auto field = to_line_field(c);
            for (int s = 0; s < 10; ++s) {
                Rational t1(g.uniform(-9, 9), 10);
                Rational t2(g.uniform(-9, 9), 10);
                CHECK(check_smoothness(field, scalar_to_double(t1), scalar_to_double(t2)));
                CHECK(check_smoothness(c, t1, t2));
            }
        }
    }

    // F2 = z^2 + 0.3 conj(z) violates the differentiability relations
    auto k = AlgebraKind::Complex;
    LineField warped = [k](double t1, double t2) {
        A2<double> z(k, t1, t2), zbar(k, t1, -t2);
        auto f1 = z;
        auto f2 = algebra::add(algebra::mul(z, z), algebra::scale(zbar, 0.3));
        return plane::stacked_columns<double>(k, {A2<double>::unit(k), f1, f2});
    };
    CHECK_FALSE(check_smoothness(warped, 0.37, 0.21));
    CHECK_FALSE(check_smoothness(warped, -0.5, 0.4));

    // straight lines stay smooth (the stack never exceeds rank 4)
    CHECK(check_smoothness(to_line_field(straight_line(k)), 0.3, -0.2));
}

TEST_CASE("tangent rank is 4 and matches the finite-difference oracle") {
    for (auto k : algebra::kAllKinds) {
        auto c = parabola_curve<Rational>(k);
        CHECK(tangent_rank(c, Rational(1, 2), Rational(1, 3)) == 4);
        CHECK(fd_tangent_rank(to_line_field(c), 0.5, 1.0 / 3.0) == 4);
        CHECK(tangent_space_spread(first_order(c, Rational(1, 2), Rational(1, 3))) == 0.0);
    }
}

TEST_CASE("straight lines sweep one fixed 3-space") {
    for (auto k : algebra::kAllKinds) {
        auto line = straight_line(k);
        // the derivative stack still spans the 4 linear dimensions of that
        // 3-space, and the span does not move with the parameter
        CHECK(tangent_rank(line, Rational(1, 2), Rational(1, 3)) == 4);
        auto span_at = [&](Rational t1, Rational t2) {
            auto fo = first_order(line, t1, t2);
            return lin::subspace_span<Rational>(
                {fo.a0, fo.a1, fo.d1a0, fo.d2a0, fo.d1a1, fo.d2a1});
        };
        CHECK(span_at(Rational(1, 2), Rational(1, 3)) == span_at(Rational(-2, 5), Rational(3, 4)));

        auto moving = parabola_curve<Rational>(k);
        auto m1 = first_order(moving, Rational(1, 2), Rational(1, 3));
        auto m2 = first_order(moving, Rational(-2, 5), Rational(3, 4));
        CHECK_FALSE(lin::subspace_span<Rational>(
                        {m1.a0, m1.a1, m1.d1a0, m1.d2a0, m1.d1a1, m1.d2a1}) ==
                    lin::subspace_span<Rational>(
                        {m2.a0, m2.a1, m2.d1a0, m2.d2a0, m2.d1a1, m2.d2a1}));
    }
}

TEST_CASE("per-generator foci per algebra") {
    auto kd = AlgebraKind::Double;
    auto foci_d = generator_foci(parabola_curve<Rational>(kd), Rational(1, 2), Rational(1, 3));
    REQUIRE(foci_d.real_foci.size() == 2);
    CHECK(foci_d.real_foci[0].first.re == Rational(-1));
    CHECK(foci_d.real_foci[0].first.multiplicity == 1);
    CHECK(foci_d.real_foci[1].first.re == Rational(1));

    auto ke = AlgebraKind::Dual;
    PolyA<Rational> f1(ke, {A2<Rational>::zero(ke), A2<Rational>::unit(ke)});
    PolyA<Rational> f3(ke, {A2<Rational>::zero(ke), A2<Rational>::zero(ke),
                            A2<Rational>::zero(ke), A2<Rational>::unit(ke)});
    CurveA<Rational> cubic(ke, f1, f3);  // (1, z, z^3)
    auto foci_e = generator_foci(cubic, Rational(1, 2), Rational(1, 3));
    REQUIRE(foci_e.real_foci.size() == 1);
    CHECK(foci_e.real_foci[0].first.re == Rational(0));
    CHECK(foci_e.real_foci[0].first.multiplicity == 2);
    // the double focus is the second generator column itself
    auto fo = first_order(cubic, Rational(1, 2), Rational(1, 3));
    CHECK(foci_e.real_foci[0].second == fo.a1);

    auto kc = AlgebraKind::Complex;
    auto foci_c = generator_foci(parabola_curve<Rational>(kc), Rational(1, 2), Rational(1, 3));
    CHECK(foci_c.real_foci.empty());
    CHECK(foci_c.roots.real_roots().empty());
}

TEST_CASE("singular locus classification and memberships") {
    auto grid = uniform_grid<Rational>(10);

    auto join = singular_locus(parabola_curve<Rational>(AlgebraKind::Double), grid, grid);
    CHECK(join.cls == SurfaceClass::Join);
    CHECK(join.consistent);
    CHECK(join.degenerate_count == 0);
    CHECK(join.max_membership_residual == 0.0);
    REQUIRE(join.focal_curves.size() == 2);
    // focus curves are parameterized by t1 +- t2; a 10-point grid meets 19
    // distinct values of each
    CHECK(join.focal_curves[0].size() == 19);
    CHECK(join.focal_curves[1].size() == 19);

    auto fam = singular_locus(parabola_curve<Rational>(AlgebraKind::Dual), grid, grid);
    CHECK(fam.cls == SurfaceClass::PlaneCurveFamily);
    CHECK(fam.consistent);
    REQUIRE(fam.focal_curves.size() == 1);
    CHECK(fam.focal_curves[0].size() == 10);  // depends on t1 only
    for (const auto& pt : fam.focal_curves[0]) {
        CHECK(pt.point[0] == Rational(0));
        CHECK(pt.point[2] == Rational(0));
        CHECK(pt.point[4] == Rational(0));
    }

    auto none = singular_locus(parabola_curve<Rational>(AlgebraKind::Complex), grid, grid);
    CHECK(none.cls == SurfaceClass::NoRealSingularities);
    CHECK(none.consistent);
    CHECK(none.focal_curves.empty());
}

TEST_CASE("join reconstruction round-trips the double-number surface") {
    auto grid = uniform_grid<Rational>(5);
    auto report = singular_locus(parabola_curve<Rational>(AlgebraKind::Double), grid, grid);
    REQUIRE(report.consistent);

    auto find_point = [&](int curve, const Rational& param) {
        for (const auto& p : report.focal_curves[curve])
            if (p.param == param) return p.point;
        FAIL("missing focal point");
        return lin::Vec<Rational>{};
    };
    std::vector<lin::Vec<Rational>> c1, c2;
    std::vector<grassmann::Line5<Rational>> originals;
    for (const auto& rec : report.records) {
        REQUIRE_FALSE(rec.degenerate);
        c1.push_back(find_point(0, rec.t1 + rec.t2));
        c2.push_back(find_point(1, rec.t1 - rec.t2));
        originals.push_back(*rec.generator);
    }
    auto join = join_reconstruct(c1, c2);
    CHECK(join.skipped == 0);
    for (std::size_t i = 0; i < join.lines.size(); ++i) {
        REQUIRE(join.lines[i].has_value());
        CHECK(grassmann::plucker_distance(*join.lines[i], originals[i]) <= 1e-8);
    }
}

TEST_CASE("join of two straight plane curves lies in a 3-space") {
    // straight lines inside pi1 and pi2 (double-number focal planes)
    std::vector<lin::Vec<Rational>> c1, c2;
    for (int i = 0; i <= 4; ++i) {
        Rational s(i);
        c1.push_back({Rational(1), Rational(1), s, s, Rational(0), Rational(0)});
        c2.push_back({Rational(1), Rational(-1), Rational(0), Rational(0), s, -s});
    }
    auto join = join_reconstruct(c1, c2);
    CHECK(join.skipped == 0);
    std::vector<lin::Vec<Rational>> rows;
    for (const auto& l : join.lines) {
        rows.push_back(l->p());
        rows.push_back(l->q());
    }
    CHECK(lin::rank(lin::Mat<Rational>::from_rows(rows)) == 4);
}

TEST_CASE("degenerate matched pairs are skipped with a warning") {
    std::vector<lin::Vec<Rational>> c1, c2;
    c1.push_back({Rational(1), Rational(1), Rational(0), Rational(0), Rational(0), Rational(0)});
    c2.push_back(c1.back());  // coincident pair: no line
    c1.push_back({Rational(1), Rational(1), Rational(1), Rational(1), Rational(0), Rational(0)});
    c2.push_back({Rational(1), Rational(-1), Rational(0), Rational(0), Rational(1), Rational(-1)});
    auto join = join_reconstruct(c1, c2);
    CHECK(join.skipped == 1);
    CHECK_FALSE(join.lines[0].has_value());
    CHECK(join.lines[1].has_value());
}

TEST_CASE("frame connection satisfies the integrability identity") {
    for (auto k : algebra::kAllKinds) {
        auto c = testsupport::to_double_curve(parabola_curve<Rational>(k));
        double h = kStructureStep;
        CHECK(structure_residual(c, 0.3, 0.2, h) <= 10 * h * h);
        CHECK(structure_residual(c, -0.6, 0.45, h) <= 10 * h * h);
    }
}

TEST_CASE("analyticity implies smoothness on seeded samples") {
    rng::SplitMix64 g(63);
    for (auto k : algebra::kAllKinds) {
        for (int deg = 1; deg <= 4; ++deg) {
            auto c = random_curve<Rational>(k, std::max(deg, 2), g);
            int checked = 0;
            while (checked < 100) {
                Rational t1(g.uniform(-20, 20), 7);
                Rational t2(g.uniform(-20, 20), 9);
                try {
                    CHECK(check_smoothness(c, t1, t2));
                } catch (const DegenerateSample&) {
                    continue;  // generator collapsed at this parameter
                }
                ++checked;
            }
        }
    }
}
