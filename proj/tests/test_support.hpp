#pragma once
// Test-only oracles. Nothing here calls into the normal-form code.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "snakelemma/int_matrix.hpp"
#include "snakelemma/random.hpp"

namespace snakelemma::testkit {

/// Fraction-free (Bareiss) determinant.
inline Int determinant(IntMatrix m) {
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(m(p, k)) == 0)
                ++p;
            if (p == n)
                return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Rank over Q via Bareiss elimination on a copy.
inline std::size_t rational_rank(IntMatrix m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && sgn(m(p, c)) == 0)
            ++p;
        if (p == m.rows())
            continue;
        m.swap_rows(r, p);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            const Int a = m(r, c), b = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) = m(i, j) * a - m(r, j) * b;
        }
        ++r;
    }
    return r;
}

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t bound) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = static_cast<long>(uniform_int(rng, -bound, bound));
    return m;
}

/// Checks u m v == d, unimodularity, diagonal shape, nonnegativity,
/// divisibility chain, zeros trailing. Returns an empty string on success.
inline std::string snf_violation(const IntMatrix& m, const IntMatrix& u, const IntMatrix& d, const IntMatrix& v) {
    if (u.rows() != m.rows() || u.cols() != m.rows() || v.rows() != m.cols() || v.cols() != m.cols())
        return "transform shape";
    if (!(u * m * v == d))
        return "u*m*v != d";
    if (abs(determinant(u)) != 1)
        return "u not unimodular";
    if (abs(determinant(v)) != 1)
        return "v not unimodular";
    const std::size_t n = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (i != j && sgn(d(i, j)) != 0)
                return "off-diagonal entry";
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(d(i, i)) < 0)
            return "negative diagonal";
        if (i + 1 < n) {
            const Int& a = d(i, i);
            const Int& b = d(i + 1, i + 1);
            if (sgn(a) == 0 && sgn(b) != 0)
                return "zero before nonzero";
            if (sgn(a) != 0 && b % a != 0)
                return "divisibility chain broken";
        }
    }
    return {};
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace snakelemma::testkit
