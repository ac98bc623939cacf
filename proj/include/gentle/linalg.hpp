#pragma once

/*
 * Dense exact linear algebra over a field: rref, rank, kernels, solving.
 * Sizes here are small (hom spaces, path bases), so dense Gauss is the
 * right tool; exactness is the requirement, not asymptotics.
 */

#include <cassert>
#include <optional>
#include <vector>

#include "gentle/field.hpp"

namespace gentle {

template <typename F>
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<F> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, F(0)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    F& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const F& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool is_zero() const {
        for (const F& x : a)
            if (!(x == F(0))) return false;
        return true;
    }

    Matrix operator*(const Matrix& o) const {
        assert(cols == o.rows);
        Matrix r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const F& x = (*this)(i, k);
                if (x == F(0)) continue;
                for (int j = 0; j < o.cols; ++j) r(i, j) += x * o(k, j);
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        assert(rows == o.rows && cols == o.cols);
        Matrix r = *this;
        for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        assert(rows == o.rows && cols == o.cols);
        Matrix r = *this;
        for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

// In-place reduced row echelon form. Returns pivot column per pivot row.
template <typename F>
std::vector<int> rref(Matrix<F>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (!(m(i, c) == F(0))) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
        F inv = F(1) / m(r, c);
        for (int j = c; j < m.cols; ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            F f = m(i, c);
            if (f == F(0)) continue;
            for (int j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <typename F>
int rank(Matrix<F> m) {
    return static_cast<int>(rref(m).size());
}

// Basis of {x : A x = 0}, returned as columns of the result.
template <typename F>
Matrix<F> right_nullspace(Matrix<F> m) {
    int n = m.cols;
    std::vector<int> piv = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix<F> basis(n, static_cast<int>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        basis(fc, static_cast<int>(k)) = F(1);
        for (size_t r = 0; r < piv.size(); ++r) basis(piv[r], static_cast<int>(k)) = -m(static_cast<int>(r), fc);
    }
    return basis;
}

// One solution of A x = b, if any.
template <typename F>
std::optional<std::vector<F>> solve(const Matrix<F>& A, const std::vector<F>& b) {
    assert(static_cast<int>(b.size()) == A.rows);
    Matrix<F> aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
        aug(i, A.cols) = b[i];
    }
    std::vector<int> piv = rref(aug);
    for (int c : piv)
        if (c == A.cols) return std::nullopt;
    std::vector<F> x(A.cols, F(0));
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(static_cast<int>(r), A.cols);
    return x;
}

// Inverse of a square matrix, if invertible.
template <typename F>
std::optional<Matrix<F>> inverse(const Matrix<F>& A) {
    assert(A.rows == A.cols);
    int n = A.rows;
    Matrix<F> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = A(i, j);
        aug(i, n + i) = F(1);
    }
    std::vector<int> piv = rref(aug);
    if (static_cast<int>(piv.size()) < n || piv.back() >= n) {
        if (static_cast<int>(piv.size()) < n) return std::nullopt;
    }
    for (int r = 0; r < n; ++r)
        if (piv[r] != r) return std::nullopt;
    Matrix<F> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

// rank([A]) == rank([A|b]) style membership: is v in the column span of A.
template <typename F>
bool in_column_span(const Matrix<F>& A, const std::vector<F>& v) {
    return solve(A, v).has_value();
}

} // namespace gentle
