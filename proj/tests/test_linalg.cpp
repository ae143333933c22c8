#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ap2/grassmann.hpp"
#include "ap2/linalg.hpp"
#include "ap2/proj_plane.hpp"
#include "ap2/rng.hpp"

using namespace ap2;
using lin::Mat;
using lin::Vec;

namespace {

template <class S>
Vec<S> unit6(std::size_t i) {
    Vec<S> v(6, S(0));
    v[i] = S(1);
    return v;
}

template <class S>
Mat<S> random_matrix(std::size_t r, std::size_t c, rng::SplitMix64& g) {
    Mat<S> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = ScalarTraits<S>::from_rational(Rational(g.uniform(-10, 10)));
    return m;
}

}  // namespace

TEST_CASE("rank basics") {
    CHECK(lin::rank(Mat<Rational>::identity(4)) == 4);
    Mat<Rational> prop(2, 2);
    prop(0, 0) = 1;
    prop(0, 1) = 2;
    prop(1, 0) = 2;
    prop(1, 1) = 4;
    CHECK(lin::rank(prop) == 1);
    CHECK_THROWS_AS(lin::rank(Mat<Rational>()), ContractViolation);
}

TEST_CASE("rank of the stacked basis-point columns") {
    auto e0 = plane::basis_point<Rational>(algebra::AlgebraKind::Complex, 0).columns();
    auto e1 = plane::basis_point<Rational>(algebra::AlgebraKind::Complex, 1).columns();
    Mat<Rational> m(6, 4);
    for (std::size_t i = 0; i < 6; ++i) {
        m(i, 0) = e0.col0[i];
        m(i, 1) = e0.col1[i];
        m(i, 2) = e1.col0[i];
        m(i, 3) = e1.col1[i];
    }
    CHECK(lin::rank(m) == 4);
}

TEST_CASE("rank is invariant under row permutation and scaling") {
    rng::SplitMix64 g(21);
    for (int trial = 0; trial < 200; ++trial) {
        auto m = random_matrix<Rational>(4, 5, g);
        auto base = lin::rank(m);
        Mat<Rational> perm(4, 5);
        std::array<std::size_t, 4> order = {2, 0, 3, 1};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 5; ++j) perm(i, j) = m(order[i], j);
        CHECK(lin::rank(perm) == base);
        Mat<Rational> scaled = m;
        for (std::size_t j = 0; j < 5; ++j) scaled(1, j) = scaled(1, j) * Rational(-7, 3);
        CHECK(lin::rank(scaled) == base);
    }
}

TEST_CASE("exact and float ranks agree on integer matrices") {
    rng::SplitMix64 g(22);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t r = 2 + static_cast<std::size_t>(g.uniform(0, 4));
        std::size_t c = 2 + static_cast<std::size_t>(g.uniform(0, 4));
        auto exact = random_matrix<Rational>(r, c, g);
        Mat<double> approx(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) approx(i, j) = scalar_to_double(exact(i, j));
        CHECK(lin::rank(exact) == lin::rank(approx));
    }
}

TEST_CASE("nullspace vectors annihilate the matrix") {
    rng::SplitMix64 g(23);
    for (int trial = 0; trial < 200; ++trial) {
        auto m = random_matrix<Rational>(3, 6, g);
        auto basis = lin::nullspace(m);
        CHECK(basis.size() == 6 - lin::rank(m));
        for (const auto& v : basis) {
            for (std::size_t i = 0; i < 3; ++i) {
                Rational acc(0);
                for (std::size_t j = 0; j < 6; ++j) acc += m(i, j) * v[j];
                CHECK(acc == Rational(0));
            }
        }
    }
}

TEST_CASE("subspace membership") {
    auto span01 = lin::subspace_span<Rational>({unit6<Rational>(0), unit6<Rational>(1)});
    CHECK(span01.dim() == 2);
    CHECK(lin::subspace_contains(span01, lin::vec_add(unit6<Rational>(0), unit6<Rational>(1))));
    CHECK_FALSE(lin::subspace_contains(span01, unit6<Rational>(2)));

    // plane with membership pattern u0=u1, u2=u3, u4=u5
    std::vector<Vec<Rational>> pi1 = {
        lin::vec_add(unit6<Rational>(0), unit6<Rational>(1)),
        lin::vec_add(unit6<Rational>(2), unit6<Rational>(3)),
        lin::vec_add(unit6<Rational>(4), unit6<Rational>(5))};
    auto plane = lin::subspace_span<Rational>(pi1);
    Vec<Rational> probe = {Rational(1), Rational(1), Rational(2),
                           Rational(2), Rational(5), Rational(5)};
    CHECK(lin::subspace_contains(plane, probe));
    probe[5] = Rational(6);
    CHECK_FALSE(lin::subspace_contains(plane, probe));
}

TEST_CASE("homogeneous normalization picks the largest entry, lowest index on ties") {
    Vec<Rational> v = {Rational(2), Rational(-4), Rational(4), Rational(0), Rational(1),
                       Rational(0)};
    auto n = lin::normalize_homogeneous(v);
    CHECK(n[1] == Rational(1));  // |-4| ties |4|, lower index wins
    CHECK(n[0] == Rational(-1, 2));
    CHECK_THROWS_AS(lin::normalize_homogeneous(Vec<Rational>(6, Rational(0))), DegenerateInput);
}

TEST_CASE("solve returns the exact solution") {
    rng::SplitMix64 g(24);
    int done = 0;
    while (done < 100) {
        auto a = random_matrix<Rational>(4, 4, g);
        if (lin::rank(a) < 4) continue;
        auto x = random_matrix<Rational>(4, 2, g);
        auto b = lin::mat_mul(a, x);
        auto solved = lin::solve(a, b);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(solved(i, j) == x(i, j));
        ++done;
    }
}

TEST_CASE("pivot reducer spans incrementally") {
    lin::PivotReducer<Rational> red;
    CHECK(red.try_add(unit6<Rational>(0)));
    CHECK(red.try_add(unit6<Rational>(1)));
    CHECK_FALSE(red.try_add(lin::vec_add(unit6<Rational>(0), unit6<Rational>(1))));
    CHECK(red.try_add(unit6<Rational>(3)));
    CHECK(red.size() == 3);
    auto r = red.residual({Rational(5), Rational(7), Rational(1), Rational(2), Rational(0),
                           Rational(0)});
    CHECK(r == Vec<Rational>{Rational(0), Rational(0), Rational(1), Rational(0), Rational(0),
                             Rational(0)});
}

TEST_CASE("subspace distance separates spans") {
    auto a = lin::subspace_span<double>({unit6<double>(0), unit6<double>(1)});
    auto b = lin::subspace_span<double>(
        {lin::vec_add(unit6<double>(0), unit6<double>(1)),
         lin::vec_sub(unit6<double>(0), unit6<double>(1))});
    CHECK(lin::subspace_distance(a, b) <= 1e-12);
    auto c = lin::subspace_span<double>({unit6<double>(2), unit6<double>(3)});
    CHECK(lin::subspace_distance(a, c) == doctest::Approx(1.0));
}
