#pragma once

#include <cstddef>
#include <vector>

#include "snakelemma/normal_form.hpp"

namespace snakelemma {

/// A sublattice of Z^n held by its canonical column-HNF basis, so equality of
/// lattices is entrywise equality of bases.
class Lattice {
public:
    Lattice() = default;

    /// Span of the columns of `generators` inside Z^ambient.
    static Lattice span(std::size_t ambient, const IntMatrix& generators) {
        detail::require(generators.rows() == ambient, "Lattice::span: generator length != ambient dimension");
        const HnfResult h = column_hnf(generators, false);
        Lattice l;
        l.ambient_ = ambient;
        l.basis_ = h.h.first_columns(h.rank);
        l.index_pivots();
        return l;
    }

    static Lattice zero(std::size_t ambient) { return span(ambient, IntMatrix(ambient, 0)); }
    static Lattice full(std::size_t ambient) { return span(ambient, IntMatrix::identity(ambient)); }

    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t rank() const noexcept { return basis_.cols(); }
    const IntMatrix& basis() const noexcept { return basis_; }
    bool is_full() const { return *this == full(ambient_); }

    bool contains(Vector v) const {
        detail::require(v.size() == ambient_, "Lattice::contains: vector length != ambient dimension");
        for (std::size_t j = 0; j < basis_.cols(); ++j) {
            const Int& p = basis_(pivots_[j], j);
            if (!detail::divides(p, v[pivots_[j]]))
                return false;
            Int q;
            mpz_divexact(q.get_mpz_t(), v[pivots_[j]].get_mpz_t(), p.get_mpz_t());
            for (std::size_t i = pivots_[j]; i < ambient_; ++i)
                v[i] -= q * basis_(i, j);
        }
        return is_zero(v);
    }

    bool contains_columns(const IntMatrix& m) const {
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!contains(m.column(j)))
                return false;
        return true;
    }

    bool is_subset_of(const Lattice& other) const {
        detail::require(ambient_ == other.ambient_, "Lattice::is_subset_of: ambient mismatch");
        return other.contains_columns(basis_);
    }

    /// Canonical representative of v + L: each pivot coordinate in [0, pivot).
    Vector reduce(Vector v) const {
        detail::require(v.size() == ambient_, "Lattice::reduce: vector length != ambient dimension");
        for (std::size_t j = 0; j < basis_.cols(); ++j) {
            const Int q = detail::floor_div(v[pivots_[j]], basis_(pivots_[j], j));
            for (std::size_t i = pivots_[j]; i < ambient_; ++i)
                v[i] -= q * basis_(i, j);
        }
        return v;
    }

    friend bool operator==(const Lattice& a, const Lattice& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    void index_pivots() {
        pivots_.assign(basis_.cols(), 0);
        std::size_t row = 0;
        for (std::size_t j = 0; j < basis_.cols(); ++j) {
            while (sgn(basis_(row, j)) == 0)
                ++row;
            pivots_[j] = row;
        }
    }

    std::size_t ambient_ = 0;
    IntMatrix basis_;
    std::vector<std::size_t> pivots_;
};

/// {x : m x = 0}
inline Lattice kernel_lattice(const IntMatrix& m) {
    const HnfResult h = column_hnf(m);
    return Lattice::span(m.cols(), h.u.block(0, m.cols(), h.rank, m.cols()));
}

inline Lattice lattice_sum(const Lattice& a, const Lattice& b) {
    detail::require(a.ambient_dim() == b.ambient_dim(), "lattice_sum: ambient mismatch");
    return Lattice::span(a.ambient_dim(), hcat(a.basis(), b.basis()));
}

/// Kernel of [A | -B] projected onto the A-coordinates, mapped back through A.
inline Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
    detail::require(a.ambient_dim() == b.ambient_dim(), "lattice_intersect: ambient mismatch");
    const Lattice k = kernel_lattice(hcat(a.basis(), -b.basis()));
    return Lattice::span(a.ambient_dim(), a.basis() * k.basis().top_rows(a.rank()));
}

inline bool lattice_contains(const Lattice& a, const Vector& v) { return a.contains(v); }

/// {x : m x in target}
inline Lattice lattice_preimage(const IntMatrix& m, const Lattice& target) {
    detail::require(m.rows() == target.ambient_dim(), "lattice_preimage: row count != target ambient");
    const Lattice k = kernel_lattice(hcat(m, -target.basis()));
    return Lattice::span(m.cols(), k.basis().top_rows(m.cols()));
}

} // namespace snakelemma
