#ifndef GPBTHETA_MATRIX_HPP
#define GPBTHETA_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "field.hpp"

namespace gpbtheta {

/// Dense row-major matrix over an exact field.
template <Field F>
class Matrix {
public:
    using value_type = typename F::value_type;

    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

    Matrix(F field, std::size_t rows, std::size_t cols, std::vector<value_type> entries)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix entry count mismatch");
    }

    static Matrix identity(const F& field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }

    /// Builds a matrix from small integers, mostly for fixtures.
    static Matrix from_ints(const F& field, std::initializer_list<std::initializer_list<long long>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.begin()->size();
        Matrix m(field, r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw std::invalid_argument("ragged matrix literal");
            std::size_t j = 0;
            for (long long x : row) m(i, j++) = field.from_int(x);
            ++i;
        }
        return m;
    }

    static Matrix from_rows(const F& field, std::size_t cols, const std::vector<std::vector<value_type>>& rows) {
        Matrix m(field, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<value_type> row(std::size_t i) const {
        return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
    }
    std::vector<value_type> column(std::size_t j) const {
        std::vector<value_type> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!field_.is_zero(x)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix b(field_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix c(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const value_type& aik = a(i, k);
                if (a.field_.is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
        return c;
    }

    Matrix scaled(const value_type& s) const {
        Matrix c = *this;
        for (auto& x : c.data_) x *= s;
        return c;
    }

    std::vector<value_type> apply(const std::vector<value_type>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
        std::vector<value_type> out(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    void require_same_shape(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    F field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<value_type> data_;
};

template <Field F>
struct RrefResult {
    Matrix<F> reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form. The pivot in each column is the first row (at or
/// below the current one) with a nonzero entry; the result is unique anyway.
template <Field F>
RrefResult<F> rref(Matrix<F> m) {
    const F& k = m.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && k.is_zero(m(p, col))) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(row, p);
        const auto inv = k.inverse(m(row, col));
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || k.is_zero(m(i, col))) continue;
            const typename F::value_type factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), pivots.size(), std::move(pivots)};
}

template <Field F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).rank;
}

/// Basis of the right null space {v : m v = 0}, one vector per free column,
/// in increasing free-column order.
template <Field F>
std::vector<std::vector<typename F::value_type>> kernel_basis(const Matrix<F>& m) {
    const F& k = m.field();
    auto [reduced, rk, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<std::vector<typename F::value_type>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename F::value_type> v(m.cols(), k.zero());
        v[free] = k.one();
        for (std::size_t i = 0; i < rk; ++i) v[pivots[i]] = -reduced(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Rows spanning the same space as the rows of m, in canonical (RREF) form.
template <Field F>
Matrix<F> row_space(const Matrix<F>& m) {
    auto r = rref(m);
    return r.reduced.block(0, 0, r.rank, m.cols());
}

/// Exact determinant by elimination; row swaps flip the sign.
template <Field F>
typename F::value_type det(Matrix<F> m) {
    if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
    const F& k = m.field();
    const std::size_t n = m.rows();
    typename F::value_type result = k.one();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && k.is_zero(m(p, col))) ++p;
        if (p == n) return k.zero();
        if (p != col) {
            m.swap_rows(p, col);
            result = -result;
        }
        const typename F::value_type pivot = m(col, col);
        result *= pivot;
        const auto inv = k.inverse(pivot);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (k.is_zero(m(i, col))) continue;
            const typename F::value_type factor = m(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) m(i, j) -= factor * m(col, j);
        }
    }
    return result;
}

/// Inverse via the RREF of [m | I].
template <Field F>
Matrix<F> inverse(const Matrix<F>& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix<F> aug(m.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = m.field().one();
    }
    auto r = rref(std::move(aug));
    if (r.rank < n || r.pivots[n - 1] != n - 1) throw std::invalid_argument("matrix is singular");
    return r.reduced.block(0, n, n, n);
}

}  // namespace gpbtheta

#endif  // GPBTHETA_MATRIX_HPP
