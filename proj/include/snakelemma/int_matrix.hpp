#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "snakelemma/errors.hpp"

namespace snakelemma {

using Int = mpz_class;
using Vector = std::vector<Int>;

/// Dense integer matrix with arbitrary-precision entries, row-major.
/// Zero-sized dimensions are allowed; a 0 x n matrix is the map from Z^n to
/// the trivial group.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            detail::require(r.size() == cols_, "IntMatrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static IntMatrix from_columns(std::size_t rows, const std::vector<Vector>& columns) {
        IntMatrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j)
            m.set_column(j, columns[j]);
        return m;
    }

    static IntMatrix column_vector(const Vector& v) { return from_columns(v.size(), {v}); }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector column(std::size_t j) const {
        Vector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            v[i] = (*this)(i, j);
        return v;
    }

    void set_column(std::size_t j, const Vector& v) {
        detail::require(v.size() == rows_, "IntMatrix::set_column: length mismatch");
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = v[i];
    }

    /// Rows [r0, r1) and columns [c0, c1).
    IntMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
        detail::require(r0 <= r1 && r1 <= rows_ && c0 <= c1 && c1 <= cols_, "IntMatrix::block: out of range");
        IntMatrix b(r1 - r0, c1 - c0);
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = c0; j < c1; ++j)
                b(i - r0, j - c0) = (*this)(i, j);
        return b;
    }

    IntMatrix first_columns(std::size_t k) const { return block(0, rows_, 0, k); }
    IntMatrix top_rows(std::size_t k) const { return block(0, k, 0, cols_); }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return sgn(x) == 0; });
    }

    // Elementary operations, used by the normal-form routines.
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_columns(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& factor) {
        if (sgn(factor) == 0)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(dst, j) += factor * (*this)(src, j);
    }
    /// col[dst] += factor * col[src]
    void add_column_multiple(std::size_t dst, std::size_t src, const Int& factor) {
        if (sgn(factor) == 0)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, dst) += factor * (*this)(i, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(r, j) = -(*this)(r, j);
    }
    void negate_column(std::size_t c) {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, c) = -(*this)(i, c);
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        detail::require(a.cols_ == b.rows_, "IntMatrix product: inner dimension mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Int& aik = a(i, k);
                if (sgn(aik) == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Vector operator*(const IntMatrix& a, const Vector& v) {
        detail::require(a.cols_ == v.size(), "IntMatrix * vector: dimension mismatch");
        Vector out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                out[i] += a(i, k) * v[k];
        return out;
    }

    friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
        detail::require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "IntMatrix sum: shape mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] += b.data_[i];
        return a;
    }

    friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
        detail::require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "IntMatrix difference: shape mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] -= b.data_[i];
        return a;
    }

    friend IntMatrix operator-(IntMatrix a) {
        for (auto& x : a.data_)
            x = -x;
        return a;
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j)
                os << (j ? "," : "") << m(i, j).get_str();
            os << ']';
        }
        return os << ']' << " (" << m.rows_ << 'x' << m.cols_ << ')';
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

/// [a | b]
inline IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
    detail::require(a.rows() == b.rows(), "hcat: row count mismatch");
    IntMatrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

/// [a ; b]
inline IntMatrix vcat(const IntMatrix& a, const IntMatrix& b) {
    detail::require(a.cols() == b.cols(), "vcat: column count mismatch");
    IntMatrix m(a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i)
            m(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i)
            m(a.rows() + i, j) = b(i, j);
    }
    return m;
}

/// Block diagonal [[a, 0], [0, b]].
inline IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

inline bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) == 0; });
}

inline Vector operator-(const Vector& a, const Vector& b) {
    detail::require(a.size() == b.size(), "vector difference: length mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

inline Vector operator+(const Vector& a, const Vector& b) {
    detail::require(a.size() == b.size(), "vector sum: length mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

inline Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v(n);
    v[i] = 1;
    return v;
}

} // namespace snakelemma
