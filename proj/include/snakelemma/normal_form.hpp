#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "snakelemma/int_matrix.hpp"
#include "snakelemma/random.hpp"

namespace snakelemma {

struct SnfResult {
    IntMatrix u; ///< rows x rows, unimodular
    IntMatrix d; ///< rows x cols, diagonal, d(0,0) | d(1,1) | ..., zeros last
    IntMatrix v; ///< cols x cols, unimodular
    std::size_t rank = 0;
};

/// Column Hermite normal form with transform: m * u == h, u unimodular.
/// The first `rank` columns of h are the canonical basis of the column span,
/// the remaining columns are zero, so the trailing columns of u span ker m.
struct HnfResult {
    IntMatrix h;
    IntMatrix u;
    std::size_t rank = 0;
};

namespace detail {

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int trunc_div(const Int& a, const Int& b) {
    Int q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline int cmp_abs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

inline bool divides(const Int& d, const Int& x) {
    if (sgn(d) == 0)
        return sgn(x) == 0;
    return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

} // namespace detail

/// Canonical column HNF: pivot rows strictly increase left to right, pivots
/// are positive, entries above a pivot are zero, and entries left of a pivot
/// in its row lie in [0, pivot).
inline HnfResult column_hnf(const IntMatrix& m, bool track_transform = true) {
    HnfResult r{m, track_transform ? IntMatrix::identity(m.cols()) : IntMatrix(), 0};
    IntMatrix& h = r.h;
    IntMatrix& u = r.u;
    const std::size_t rows = h.rows();
    const std::size_t cols = h.cols();
    auto col_swap = [&](std::size_t a, std::size_t b) {
        h.swap_columns(a, b);
        if (track_transform)
            u.swap_columns(a, b);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Int& f) {
        h.add_column_multiple(dst, src, f);
        if (track_transform)
            u.add_column_multiple(dst, src, f);
    };

    std::size_t k = 0;
    for (std::size_t row = 0; row < rows && k < cols; ++row) {
        for (;;) {
            std::size_t best = cols;
            for (std::size_t j = k; j < cols; ++j) {
                if (sgn(h(row, j)) == 0)
                    continue;
                if (best == cols || detail::cmp_abs(h(row, j), h(row, best)) < 0)
                    best = j;
            }
            if (best == cols)
                break;
            col_swap(k, best);
            bool clean = true;
            for (std::size_t j = k + 1; j < cols; ++j) {
                if (sgn(h(row, j)) == 0)
                    continue;
                col_add(j, k, -detail::floor_div(h(row, j), h(row, k)));
                if (sgn(h(row, j)) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (sgn(h(row, k)) == 0)
            continue;
        if (sgn(h(row, k)) < 0) {
            h.negate_column(k);
            if (track_transform)
                u.negate_column(k);
        }
        for (std::size_t j = 0; j < k; ++j)
            col_add(j, k, -detail::floor_div(h(row, j), h(row, k)));
        ++k;
    }
    r.rank = k;
    return r;
}

/// Smith normal form u * m * v == d. Pivots are chosen with minimal absolute
/// value among the remaining entries.
inline SnfResult snf(const IntMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    SnfResult r{IntMatrix::identity(rows), m, IntMatrix::identity(cols), 0};
    IntMatrix& d = r.d;

    const std::size_t diag = std::min(rows, cols);
    std::size_t t = 0;
    for (; t < diag; ++t) {
        bool found_any = true;
        for (;;) {
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (sgn(d(i, j)) == 0)
                        continue;
                    if (bi == rows || detail::cmp_abs(d(i, j), d(bi, bj)) < 0) {
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == rows) {
                found_any = false;
                break;
            }
            d.swap_rows(t, bi);
            r.u.swap_rows(t, bi);
            d.swap_columns(t, bj);
            r.v.swap_columns(t, bj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (sgn(d(i, t)) == 0)
                    continue;
                const Int q = -detail::trunc_div(d(i, t), d(t, t));
                d.add_row_multiple(i, t, q);
                r.u.add_row_multiple(i, t, q);
                if (sgn(d(i, t)) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (sgn(d(t, j)) == 0)
                    continue;
                const Int q = -detail::trunc_div(d(t, j), d(t, t));
                d.add_column_multiple(j, t, q);
                r.v.add_column_multiple(j, t, q);
                if (sgn(d(t, j)) != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            // Divisibility: fold an offending row into the pivot row and retry.
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!detail::divides(d(t, t), d(i, j))) {
                        bad = i;
                        break;
                    }
            if (bad == rows)
                break;
            d.add_row_multiple(t, bad, 1);
            r.u.add_row_multiple(t, bad, 1);
        }
        if (!found_any)
            break;
        if (sgn(d(t, t)) < 0) {
            d.negate_row(t);
            r.u.negate_row(t);
        }
    }
    r.rank = t;
    return r;
}

/// Caches the Smith form of m so that m * x == b can be solved for many b.
/// With an Rng the free coordinates of the solution are drawn at random,
/// producing a different witness from the same solution set.
class LinearSystem {
public:
    explicit LinearSystem(const IntMatrix& m) : m_(m), snf_(snf(m)) {}

    const IntMatrix& matrix() const noexcept { return m_; }
    std::size_t rank() const noexcept { return snf_.rank; }

    std::optional<Vector> solve(const Vector& b, Rng* rng = nullptr) const {
        detail::require(b.size() == m_.rows(), "solve: right-hand side length must equal row count");
        const Vector c = snf_.u * b;
        Vector y(m_.cols());
        for (std::size_t i = 0; i < m_.rows(); ++i) {
            if (i < snf_.rank) {
                const Int& di = snf_.d(i, i);
                if (!detail::divides(di, c[i]))
                    return std::nullopt;
                mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), di.get_mpz_t());
            } else if (sgn(c[i]) != 0) {
                return std::nullopt;
            }
        }
        if (rng)
            for (std::size_t i = snf_.rank; i < m_.cols(); ++i)
                y[i] = static_cast<long>(uniform_int(*rng, -3, 3));
        return snf_.v * y;
    }

private:
    IntMatrix m_;
    SnfResult snf_;
};

inline std::optional<Vector> solve(const IntMatrix& m, const Vector& b, Rng* rng = nullptr) {
    return LinearSystem(m).solve(b, rng);
}

} // namespace snakelemma
