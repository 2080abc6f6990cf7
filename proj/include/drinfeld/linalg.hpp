#pragma once
/**
 * @file linalg.hpp
 * @brief Dense matrices over an exact field: row reduction, rank, kernels,
 *        inverses.  Same scalar requirements as Poly.
 */

#include <stdexcept>
#include <utility>
#include <vector>

#include "scalars.hpp"

namespace drinfeld {

template <class T>
class Matrix {
public:
    Matrix(size_t rows, size_t cols, const T& zero)
        : rows_(rows), cols_(cols), zero_(zero_like(zero)), a_(rows * cols, zero_like(zero)) {}

    static Matrix identity(size_t n, const T& zero) {
        Matrix m(n, n, zero);
        for (size_t i = 0; i < n; ++i) m(i, i) = one_like(zero);
        return m;
    }
    /** @brief Matrix whose columns are the given vectors (all of length `rows`). */
    static Matrix from_columns(const std::vector<std::vector<T>>& cols, size_t rows, const T& zero) {
        Matrix m(rows, cols.size(), zero);
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const T& zero() const { return zero_; }
    T& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> column(size_t j) const {
        std::vector<T> c;
        c.reserve(rows_);
        for (size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix dimension mismatch");
        Matrix r(x.rows_, y.cols_, x.zero_);
        for (size_t i = 0; i < x.rows_; ++i)
            for (size_t k = 0; k < x.cols_; ++k) {
                if (drinfeld::is_zero(x(i, k))) continue;
                for (size_t j = 0; j < y.cols_; ++j) r(i, j) = r(i, j) + x(i, k) * y(k, j);
            }
        return r;
    }
    friend std::vector<T> operator*(const Matrix& x, const std::vector<T>& v) {
        std::vector<T> r(x.rows_, x.zero_);
        for (size_t i = 0; i < x.rows_; ++i)
            for (size_t k = 0; k < x.cols_; ++k) r[i] = r[i] + x(i, k) * v[k];
        return r;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_, zero_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    /** @brief In-place reduced row echelon form; returns the pivot columns. */
    std::vector<size_t> rref() {
        std::vector<size_t> pivots;
        size_t r = 0;
        for (size_t c = 0; c < cols_ && r < rows_; ++c) {
            size_t piv = r;
            while (piv < rows_ && drinfeld::is_zero((*this)(piv, c))) ++piv;
            if (piv == rows_) continue;
            if (piv != r)
                for (size_t j = 0; j < cols_; ++j) std::swap((*this)(r, j), (*this)(piv, j));
            T inv = one_like(zero_) / (*this)(r, c);
            for (size_t j = 0; j < cols_; ++j) (*this)(r, j) = (*this)(r, j) * inv;
            for (size_t i = 0; i < rows_; ++i) {
                if (i == r || drinfeld::is_zero((*this)(i, c))) continue;
                T f = (*this)(i, c);
                for (size_t j = 0; j < cols_; ++j) (*this)(i, j) = (*this)(i, j) - f * (*this)(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    size_t rank() const {
        Matrix m = *this;
        return m.rref().size();
    }

    /** @brief Basis of the right kernel {x : M x = 0}. */
    std::vector<std::vector<T>> kernel() const {
        Matrix m = *this;
        auto pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::vector<T>> basis;
        for (size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<T> v(cols_, zero_);
            v[free] = one_like(zero_);
            for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    Matrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
        size_t n = rows_;
        Matrix aug(n, 2 * n, zero_);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
            aug(i, n + i) = one_like(zero_);
        }
        auto pivots = aug.rref();
        if (pivots.size() < n || pivots[n - 1] != n - 1) throw SingularMatrix("singular matrix");
        Matrix r(n, n, zero_);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
        return r;
    }

private:
    size_t rows_, cols_;
    T zero_;
    std::vector<T> a_;
};

/** @brief Rank of a family of vectors of common length n. */
template <class T>
size_t rank_of(const std::vector<std::vector<T>>& vecs, size_t n, const T& zero) {
    if (vecs.empty()) return 0;
    return Matrix<T>::from_columns(vecs, n, zero).rank();
}

/** @brief True when v lies in the span of `vecs`. */
template <class T>
bool in_span(const std::vector<T>& v, const std::vector<std::vector<T>>& vecs, const T& zero) {
    auto all = vecs;
    size_t r = rank_of(vecs, v.size(), zero);
    all.push_back(v);
    return rank_of(all, v.size(), zero) == r;
}

}  // namespace drinfeld
