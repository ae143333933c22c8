// Points, lines, frames and affine coordinates of the projective plane over
// a two-dimensional algebra. Coordinates are homogeneous triples of algebra
// elements, equal up to right multiplication by a non-zero-divisor.
#pragma once

#include <array>
#include <optional>
#include <utility>

#include "ap2/algebra2d.hpp"
#include "ap2/errors.hpp"
#include "ap2/linalg.hpp"

namespace ap2::plane {

using algebra::A2;
using algebra::AlgebraKind;

/// The two real columns of the stacked 2x2 representations of a coordinate
/// triple. Column 0 is (x, y) per block in every algebra; column 1 carries
/// the algebra's structure.
template <class S>
struct StackedColumns {
    lin::Vec<S> col0;  // 6 entries
    lin::Vec<S> col1;
};

template <class S>
StackedColumns<S> stacked_columns(AlgebraKind kind, const std::array<A2<S>, 3>& triple) {
    StackedColumns<S> sc;
    sc.col0.reserve(6);
    sc.col1.reserve(6);
    for (const auto& c : triple) {
        auto m = algebra::to_matrix(c);
        sc.col0.push_back(m.a00);
        sc.col0.push_back(m.a10);
        sc.col1.push_back(m.a01);
        sc.col1.push_back(m.a11);
    }
    (void)kind;
    return sc;
}

/// Point of the plane: homogeneous coordinate triple whose stacked 6x2 real
/// matrix has rank 2. Stored un-normalized; normalization is explicit.
template <class S>
class PointA {
public:
    PointA(AlgebraKind kind, A2<S> c0, A2<S> c1, A2<S> c2)
        : kind_(kind), coords_{std::move(c0), std::move(c1), std::move(c2)} {
        for (const auto& c : coords_)
            if (c.kind != kind_) throw ContractViolation("point coordinate kind mismatch");
        if (!columns_independent()) throw ContractViolation("point coordinates have rank < 2");
    }

    AlgebraKind kind() const { return kind_; }
    const std::array<A2<S>, 3>& coords() const { return coords_; }
    const A2<S>& coord(std::size_t i) const { return coords_[i]; }

    StackedColumns<S> columns() const { return stacked_columns(kind_, coords_); }

    /// Right multiplication by an algebra element (the projective scaling).
    PointA scaled(const A2<S>& p) const {
        return PointA(kind_, algebra::mul(coords_[0], p), algebra::mul(coords_[1], p),
                      algebra::mul(coords_[2], p));
    }

    static bool triple_valid(AlgebraKind kind, const std::array<A2<S>, 3>& triple) {
        auto sc = stacked_columns(kind, triple);
        lin::Mat<S> m(6, 2);
        for (std::size_t i = 0; i < 6; ++i) {
            m(i, 0) = sc.col0[i];
            m(i, 1) = sc.col1[i];
        }
        return lin::rank(m) == 2;
    }

private:
    bool columns_independent() const { return triple_valid(kind_, coords_); }

    AlgebraKind kind_;
    std::array<A2<S>, 3> coords_;
};

/// Line of the plane: coefficient triple of U0 X^0 + U1 X^1 + U2 X^2 = 0,
/// defined up to left multiplication by a non-zero-divisor.
template <class S>
class LineA {
public:
    LineA(AlgebraKind kind, A2<S> u0, A2<S> u1, A2<S> u2)
        : kind_(kind), coeffs_{std::move(u0), std::move(u1), std::move(u2)} {
        for (const auto& c : coeffs_)
            if (c.kind != kind_) throw ContractViolation("line coefficient kind mismatch");
        if (!PointA<S>::triple_valid(kind_, coeffs_))
            throw ContractViolation("line coefficients have rank < 2");
    }

    AlgebraKind kind() const { return kind_; }
    const std::array<A2<S>, 3>& coeffs() const { return coeffs_; }

private:
    AlgebraKind kind_;
    std::array<A2<S>, 3> coeffs_;
};

/// Affine coordinate pair (X^1 (X^0)^-1, X^2 (X^0)^-1); unique per point.
template <class S>
struct MatrixCoordinate {
    A2<S> x1;
    A2<S> x2;
};

template <class S>
PointA<S> normalize(const PointA<S>& p, std::size_t pivot) {
    if (pivot > 2) throw ContractViolation("coordinate index out of range");
    if (algebra::is_zero_divisor(p.coord(pivot)))
        throw DivisorError("normalization pivot is a zero divisor");
    return p.scaled(algebra::inverse(p.coord(pivot)));
}

/// Adjacent points are joined by more than one line; detected as rank < 4 of
/// the 6x4 stack of both coordinate matrices.
template <class S>
bool adjacent(const PointA<S>& p, const PointA<S>& q, double tol = lin::kDefaultRankTol) {
    if (p.kind() != q.kind()) throw ContractViolation("adjacency across different algebras");
    auto pc = p.columns();
    auto qc = q.columns();
    lin::Mat<S> m(6, 4);
    for (std::size_t i = 0; i < 6; ++i) {
        m(i, 0) = pc.col0[i];
        m(i, 1) = pc.col1[i];
        m(i, 2) = qc.col0[i];
        m(i, 3) = qc.col1[i];
    }
    return lin::rank(m, tol) < 4;
}

/// Same projective point: the combined column stack still has rank 2.
template <class S>
bool same_point(const PointA<S>& p, const PointA<S>& q) {
    if (p.kind() != q.kind()) return false;
    auto pc = p.columns();
    auto qc = q.columns();
    lin::Mat<S> m(6, 4);
    for (std::size_t i = 0; i < 6; ++i) {
        m(i, 0) = pc.col0[i];
        m(i, 1) = pc.col1[i];
        m(i, 2) = qc.col0[i];
        m(i, 3) = qc.col1[i];
    }
    return lin::rank(m) == 2;
}

template <class S>
bool incident(const LineA<S>& u, const PointA<S>& p, double tol = 1e-10) {
    if (u.kind() != p.kind()) throw ContractViolation("incidence across different algebras");
    A2<S> acc = A2<S>::zero(u.kind());
    for (std::size_t i = 0; i < 3; ++i)
        acc = algebra::add(acc, algebra::mul(u.coeffs()[i], p.coord(i)));
    if constexpr (is_exact_v<S>) {
        return acc.is_zero();
    } else {
        double sc = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            sc = std::max(sc, std::fabs(scalar_to_double(u.coeffs()[i].x)));
            sc = std::max(sc, std::fabs(scalar_to_double(u.coeffs()[i].y)));
            sc = std::max(sc, std::fabs(scalar_to_double(p.coord(i).x)));
            sc = std::max(sc, std::fabs(scalar_to_double(p.coord(i).y)));
        }
        double r = std::max(std::fabs(scalar_to_double(acc.x)), std::fabs(scalar_to_double(acc.y)));
        return r <= tol * std::max(1.0, sc * sc);
    }
}

template <class S>
MatrixCoordinate<S> matrix_coordinate(const PointA<S>& p) {
    if (algebra::is_zero_divisor(p.coord(0)))
        throw DivisorError("matrix coordinate undefined: X^0 is a zero divisor");
    A2<S> inv = algebra::inverse(p.coord(0));
    return MatrixCoordinate<S>{algebra::mul(p.coord(1), inv), algebra::mul(p.coord(2), inv)};
}

/// The unique line through two non-adjacent points, by exact nullspace of
/// the 4x6 real incidence system in the six coefficient components.
template <class S>
LineA<S> line_through(const PointA<S>& p, const PointA<S>& q) {
    if (p.kind() != q.kind()) throw ContractViolation("line through points of different algebras");
    if (adjacent(p, q)) throw ContractViolation("adjacent points span more than one line");
    const int s = algebra::unit_square_sign(p.kind());
    lin::Mat<S> m(4, 6);
    for (int which = 0; which < 2; ++which) {
        const PointA<S>& pt = which == 0 ? p : q;
        for (std::size_t a = 0; a < 3; ++a) {
            const A2<S>& c = pt.coord(a);
            // real part of U_a * X^a: u.x * c.x + s * u.y * c.y
            m(2 * which, 2 * a) = c.x;
            m(2 * which, 2 * a + 1) = S(s) * c.y;
            // u-part: u.x * c.y + u.y * c.x
            m(2 * which + 1, 2 * a) = c.y;
            m(2 * which + 1, 2 * a + 1) = c.x;
        }
    }
    auto basis = lin::nullspace(m);
    if (basis.size() < 2) throw ContractViolation("incidence system lost rank unexpectedly");
    auto build = [&](const lin::Vec<S>& v) -> std::optional<LineA<S>> {
        std::array<A2<S>, 3> u = {A2<S>(p.kind(), v[0], v[1]), A2<S>(p.kind(), v[2], v[3]),
                                  A2<S>(p.kind(), v[4], v[5])};
        if (!PointA<S>::triple_valid(p.kind(), u)) return std::nullopt;
        return LineA<S>(p.kind(), u[0], u[1], u[2]);
    };
    for (const auto& cand : {basis[0], basis[1], lin::vec_add(basis[0], basis[1])})
        if (auto line = build(cand)) return *line;
    throw DegenerateSample("no representative of the line has full coefficient rank");
}

/// A projective frame: three mutually non-adjacent points.
template <class S>
class FrameA {
public:
    FrameA(PointA<S> a0, PointA<S> a1, PointA<S> a2)
        : pts_{std::move(a0), std::move(a1), std::move(a2)} {
        if (pts_[0].kind() != pts_[1].kind() || pts_[0].kind() != pts_[2].kind())
            throw ContractViolation("frame points of different algebras");
        if (adjacent(pts_[0], pts_[1]) || adjacent(pts_[0], pts_[2]) || adjacent(pts_[1], pts_[2]))
            throw ContractViolation("frame points must be mutually non-adjacent");
    }

    const PointA<S>& operator[](std::size_t i) const { return pts_[i]; }
    AlgebraKind kind() const { return pts_[0].kind(); }

private:
    std::array<PointA<S>, 3> pts_;
};

/// Basis points E0, E1, E2.
template <class S>
PointA<S> basis_point(AlgebraKind kind, std::size_t index) {
    std::array<A2<S>, 3> c = {A2<S>::zero(kind), A2<S>::zero(kind), A2<S>::zero(kind)};
    c[index] = A2<S>::unit(kind);
    return PointA<S>(kind, c[0], c[1], c[2]);
}

}  // namespace ap2::plane
