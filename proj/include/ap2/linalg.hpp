// Small dense linear algebra over exact rationals and doubles: rank,
// nullspace, spans, membership. Sized for 6-vectors and stacks up to ~8x6;
// nothing here is tuned for large systems.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "ap2/errors.hpp"
#include "ap2/scalar.hpp"

namespace ap2::lin {

inline constexpr double kDefaultRankTol = 1e-8;

template <class S>
using Vec = std::vector<S>;

/// Dense row-major matrix with a handful of rows and columns.
template <class S>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    static Mat from_rows(const std::vector<Vec<S>>& rows) {
        if (rows.empty()) throw ContractViolation("matrix needs at least one row");
        Mat m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw ContractViolation("ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec<S> row(std::size_t i) const {
        Vec<S> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    void append_row(const Vec<S>& r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw ContractViolation("ragged rows");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<S> data_;
};

template <class S>
Vec<S> vec_add(const Vec<S>& a, const Vec<S>& b) {
    Vec<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

template <class S>
Vec<S> vec_sub(const Vec<S>& a, const Vec<S>& b) {
    Vec<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <class S>
Vec<S> vec_scale(const Vec<S>& a, const S& c) {
    Vec<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

template <class S>
S max_abs(const Vec<S>& v) {
    S m(0);
    for (const S& e : v) m = std::max(m, scalar_abs(e));
    return m;
}

inline Eigen::MatrixXd to_eigen(const Mat<double>& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

namespace detail {

// In-place row echelon reduction; returns pivot columns. For inexact scalars
// a pivot must exceed tol times the largest magnitude of its column segment.
template <class S>
std::vector<std::size_t> echelon(Mat<S>& m, double tol) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t best = r;
        for (std::size_t i = r + 1; i < m.rows(); ++i)
            if (scalar_abs(m(i, c)) > scalar_abs(m(best, c))) best = i;
        bool usable;
        if constexpr (is_exact_v<S>) {
            usable = m(best, c) != S(0);
        } else {
            usable = scalar_to_double(scalar_abs(m(best, c))) > tol;
        }
        if (!usable) continue;
        if (best != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(best, j), m(r, j));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            if (m(i, c) == S(0)) continue;
            S f = m(i, c) / m(r, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
            m(i, c) = S(0);
        }
        pivots.push_back(c);
        ++r;
    }
    // normalize pivot rows so the reduced form is canonical
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        S p = m(k, pivots[k]);
        for (std::size_t j = 0; j < m.cols(); ++j) m(k, j) = m(k, j) / p;
    }
    return pivots;
}

}  // namespace detail

/// Reduced row echelon form together with its pivot columns.
template <class S>
std::pair<Mat<S>, std::vector<std::size_t>> rref(Mat<S> m, double tol = kDefaultRankTol) {
    auto pivots = detail::echelon(m, tol);
    return {std::move(m), std::move(pivots)};
}

/// Rank: exact elimination in rational mode, singular values above
/// tol * sigma_max in float mode.
template <class S>
std::size_t rank(const Mat<S>& m, double tol = kDefaultRankTol) {
    if (m.rows() == 0 || m.cols() == 0) throw ContractViolation("rank of an empty matrix");
    if constexpr (std::is_same_v<S, double>) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
        const auto& sv = svd.singularValues();
        if (sv.size() == 0 || sv(0) == 0.0) return 0;
        std::size_t r = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > tol * sv(0)) ++r;
        return r;
    } else {
        Mat<S> work = m;
        return detail::echelon(work, tol).size();
    }
}

/// Basis of the right nullspace, one vector per non-pivot column.
template <class S>
std::vector<Vec<S>> nullspace(const Mat<S>& m, double tol = kDefaultRankTol) {
    auto [red, pivots] = rref(m, tol);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<Vec<S>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec<S> v(m.cols(), S(0));
        v[free] = S(1);
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -red(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Homogeneous-vector normalization: divide by the entry of largest absolute
/// value, ties resolved toward the lowest index.
template <class S>
Vec<S> normalize_homogeneous(const Vec<S>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (scalar_abs(v[i]) > scalar_abs(v[best])) best = i;
    if (v[best] == S(0)) throw DegenerateInput("normalizing the zero vector");
    return vec_scale(v, S(1) / v[best]);
}

/// A linear subspace held by a canonical spanning basis: reduced rows in
/// exact mode, orthonormal rows (SVD) in float mode.
template <class S>
class Subspace {
public:
    Subspace() = default;

    static Subspace span(const std::vector<Vec<S>>& vectors, double tol = kDefaultRankTol) {
        if (vectors.empty()) throw ContractViolation("span of an empty set");
        Subspace s;
        s.ambient_ = vectors.front().size();
        if constexpr (std::is_same_v<S, double>) {
            Eigen::MatrixXd m(vectors.size(), s.ambient_);
            for (std::size_t i = 0; i < vectors.size(); ++i) {
                if (vectors[i].size() != s.ambient_) throw ContractViolation("mixed ambient dims");
                for (std::size_t j = 0; j < s.ambient_; ++j) m(i, j) = vectors[i][j];
            }
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
            const auto& sv = svd.singularValues();
            for (Eigen::Index i = 0; i < sv.size(); ++i) {
                if (sv(0) == 0.0 || sv(i) <= tol * sv(0)) break;
                Vec<S> row(s.ambient_);
                for (std::size_t j = 0; j < s.ambient_; ++j) row[j] = svd.matrixV()(j, i);
                s.basis_.push_back(std::move(row));
            }
        } else {
            Mat<S> m = Mat<S>::from_rows(vectors);
            auto [red, pivots] = rref(std::move(m), tol);
            for (std::size_t k = 0; k < pivots.size(); ++k) s.basis_.push_back(red.row(k));
        }
        return s;
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vec<S>>& basis() const { return basis_; }

    /// Residual of v after projecting onto (exact: eliminating against) the basis.
    Vec<S> residual(const Vec<S>& v) const {
        if (v.size() != ambient_) throw ContractViolation("ambient dimension mismatch");
        Vec<S> r = v;
        if constexpr (std::is_same_v<S, double>) {
            for (const auto& b : basis_) {
                S dot(0);
                for (std::size_t j = 0; j < ambient_; ++j) dot += r[j] * b[j];
                for (std::size_t j = 0; j < ambient_; ++j) r[j] -= dot * b[j];
            }
        } else {
            // basis rows are in reduced echelon form: eliminate at each pivot
            for (const auto& b : basis_) {
                std::size_t p = 0;
                while (p < ambient_ && b[p] == S(0)) ++p;
                if (p == ambient_) continue;
                S f = r[p] / b[p];
                if (f == S(0)) continue;
                for (std::size_t j = 0; j < ambient_; ++j) r[j] = r[j] - f * b[j];
            }
        }
        return r;
    }

    bool contains(const Vec<S>& v, double tol = kDefaultRankTol) const {
        Vec<S> r = residual(v);
        if constexpr (is_exact_v<S>) {
            for (const S& e : r)
                if (e != S(0)) return false;
            return true;
        } else {
            return scalar_to_double(max_abs(r)) <= tol * std::max(1e-300, scalar_to_double(max_abs(v)));
        }
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        static_assert(is_exact_v<S>, "exact-mode subspace comparison only");
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_ = 0;
    std::vector<Vec<S>> basis_;
};

template <class S>
Subspace<S> subspace_span(const std::vector<Vec<S>>& vectors, double tol = kDefaultRankTol) {
    return Subspace<S>::span(vectors, tol);
}

template <class S>
bool subspace_contains(const Subspace<S>& s, const Vec<S>& v, double tol = kDefaultRankTol) {
    return s.contains(v, tol);
}

template <class S>
Mat<S> mat_mul(const Mat<S>& a, const Mat<S>& b) {
    if (a.cols() != b.rows()) throw ContractViolation("matrix product shape mismatch");
    Mat<S> r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
    return r;
}

template <class S>
Mat<S> mat_sub(const Mat<S>& a, const Mat<S>& b) {
    Mat<S> r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

template <class S>
Mat<S> mat_scale(const Mat<S>& a, const S& c) {
    Mat<S> r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * c;
    return r;
}

template <class S>
double mat_max_abs(const Mat<S>& a) {
    double m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::fabs(scalar_to_double(a(i, j))));
    return m;
}

/// Solve A X = B for square invertible A by elimination.
template <class S>
Mat<S> solve(const Mat<S>& a, const Mat<S>& b, double tol = kDefaultRankTol) {
    if (a.rows() != a.cols() || b.rows() != a.rows())
        throw ContractViolation("solve expects a square system");
    const std::size_t n = a.rows();
    Mat<S> aug(n, n + b.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
    }
    auto pivots = detail::echelon(aug, tol);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw DegenerateSample("singular system in solve");
    Mat<S> x(n, b.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = aug(i, n + j);
    return x;
}

/// Incremental pivot reduction over any field-like scalar (rationals,
/// doubles, jets). Rows are stored already reduced against the previous
/// ones; each remembers the pivot position chosen when it was accepted.
/// No square roots, so it is usable in exact mode and stays differentiable
/// under jet scalars at generic points.
template <class T>
class PivotReducer {
public:
    explicit PivotReducer(double tol = kDefaultRankTol) : tol_(tol) {}

    Vec<T> residual(Vec<T> v) const {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const std::size_t p = pivots_[k];
            if (v[p] == T(0)) continue;
            T f = v[p] / rows_[k][p];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] - f * rows_[k][j];
            v[p] = T(0);  // cancels identically; drop float residue
        }
        return v;
    }

    /// Reduce v against the accepted rows; keep it if anything survives.
    bool try_add(const Vec<T>& v) {
        Vec<T> r = residual(v);
        std::size_t p = 0;
        for (std::size_t i = 1; i < r.size(); ++i)
            if (scalar_abs(r[i]) > scalar_abs(r[p])) p = i;
        bool usable;
        if constexpr (is_exact_v<T>) {
            usable = r[p] != T(0);
        } else {
            double scale = std::max(1.0, scalar_to_double(max_abs(v)));
            usable = scalar_to_double(scalar_abs(r[p])) > tol_ * scale;
        }
        if (!usable) return false;
        rows_.push_back(std::move(r));
        pivots_.push_back(p);
        return true;
    }

    std::size_t size() const { return rows_.size(); }
    const std::vector<Vec<T>>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

private:
    double tol_;
    std::vector<Vec<T>> rows_;
    std::vector<std::size_t> pivots_;
};

/// Gap between two subspaces as the spectral norm of the difference of the
/// orthogonal projectors; 0 for equal subspaces, 1 for orthogonal directions.
inline double subspace_distance(const Subspace<double>& a, const Subspace<double>& b) {
    if (a.ambient() != b.ambient()) throw ContractViolation("ambient dimension mismatch");
    const auto n = static_cast<Eigen::Index>(a.ambient());
    Eigen::MatrixXd pa = Eigen::MatrixXd::Zero(n, n), pb = Eigen::MatrixXd::Zero(n, n);
    for (const auto& r : a.basis()) {
        Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(r.data(), n);
        pa += v * v.transpose();
    }
    for (const auto& r : b.basis()) {
        Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(r.data(), n);
        pb += v * v.transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(pa - pb);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace ap2::lin
