#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "snakelemma/lattice.hpp"

namespace snakelemma {

/// Z^n modulo a relation lattice. Invariant factors are computed once at
/// construction: d1 | d2 | ... with units dropped and 0 for each free factor.
class FpAbGroup {
public:
    FpAbGroup() : FpAbGroup(Lattice::zero(0)) {}

    explicit FpAbGroup(Lattice relations) : relations_(std::move(relations)) {
        const SnfResult s = snf(relations_.basis());
        for (std::size_t i = 0; i < s.rank; ++i)
            if (s.d(i, i) != 1)
                factors_.push_back(s.d(i, i));
        for (std::size_t i = s.rank; i < n_gens(); ++i)
            factors_.push_back(0);
    }

    static FpAbGroup trivial() { return FpAbGroup(); }
    static FpAbGroup free(std::size_t n) { return FpAbGroup(Lattice::zero(n)); }
    static FpAbGroup cyclic(const Int& order) {
        return FpAbGroup(Lattice::span(1, IntMatrix{{order}}));
    }

    std::size_t n_gens() const noexcept { return relations_.ambient_dim(); }
    const Lattice& relations() const noexcept { return relations_; }
    const std::vector<Int>& invariant_factors() const noexcept { return factors_; }

    bool is_trivial() const noexcept { return factors_.empty(); }
    bool is_finite() const {
        for (const auto& d : factors_)
            if (sgn(d) == 0)
                return false;
        return true;
    }
    /// Product of the invariant factors; nullopt for infinite groups.
    std::optional<Int> order() const {
        if (!is_finite())
            return std::nullopt;
        Int o = 1;
        for (const auto& d : factors_)
            o *= d;
        return o;
    }

    bool equal_elements(const Vector& a, const Vector& b) const { return relations_.contains(a - b); }
    bool is_zero_element(const Vector& a) const { return relations_.contains(a); }

    /// Same presentation (generator count and relation lattice).
    friend bool operator==(const FpAbGroup& a, const FpAbGroup& b) { return a.relations_ == b.relations_; }

    std::string describe() const {
        if (factors_.empty())
            return "0";
        std::string s;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i)
                s += " + ";
            s += sgn(factors_[i]) == 0 ? std::string("Z") : "Z/" + factors_[i].get_str();
        }
        return s;
    }

private:
    Lattice relations_;
    std::vector<Int> factors_;
};

inline FpAbGroup make_group(std::size_t n_gens, const IntMatrix& relation_columns) {
    detail::require(relation_columns.rows() == n_gens, "make_group: relation columns must have length n_gens");
    return FpAbGroup(Lattice::span(n_gens, relation_columns));
}

inline FpAbGroup make_group(std::size_t n_gens, const std::vector<Vector>& relation_columns) {
    for (const auto& c : relation_columns)
        detail::require(c.size() == n_gens, "make_group: relation columns must have length n_gens");
    return make_group(n_gens, IntMatrix::from_columns(n_gens, relation_columns));
}

inline bool isomorphic(const FpAbGroup& a, const FpAbGroup& b) {
    return a.invariant_factors() == b.invariant_factors();
}

inline FpAbGroup direct_sum(const FpAbGroup& a, const FpAbGroup& b) {
    return make_group(a.n_gens() + b.n_gens(), block_diag(a.relations().basis(), b.relations().basis()));
}

/// A homomorphism given by the images of the source generators (columns).
/// Construction checks that relations go to relations.
class Hom {
public:
    Hom(FpAbGroup source, FpAbGroup target, IntMatrix matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
        detail::require(matrix_.rows() == target_.n_gens() && matrix_.cols() == source_.n_gens(),
                        "Hom: matrix must be target.n_gens x source.n_gens");
        if (!target_.relations().contains_columns(matrix_ * source_.relations().basis()))
            throw IllDefined("Hom: a relation of the source maps outside the target relations");
    }

    const FpAbGroup& source() const noexcept { return source_; }
    const FpAbGroup& target() const noexcept { return target_; }
    const IntMatrix& matrix() const noexcept { return matrix_; }

    Vector operator()(const Vector& x) const { return matrix_ * x; }

    friend bool operator==(const Hom& a, const Hom& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ &&
               a.target_.relations().contains_columns(a.matrix_ - b.matrix_);
    }

private:
    FpAbGroup source_;
    FpAbGroup target_;
    IntMatrix matrix_;
};

inline Hom make_hom(const FpAbGroup& source, const FpAbGroup& target, const IntMatrix& matrix) {
    return Hom(source, target, matrix);
}

inline Hom identity_hom(const FpAbGroup& g) { return Hom(g, g, IntMatrix::identity(g.n_gens())); }

inline Hom zero_hom(const FpAbGroup& source, const FpAbGroup& target) {
    return Hom(source, target, IntMatrix(target.n_gens(), source.n_gens()));
}

/// h2 after h1.
inline Hom compose(const Hom& h2, const Hom& h1) {
    detail::require(h1.target() == h2.source(), "compose: h1.target must equal h2.source");
    return Hom(h1.source(), h2.target(), h2.matrix() * h1.matrix());
}

inline bool is_zero_hom(const Hom& h) { return h.target().relations().contains_columns(h.matrix()); }

/// A subgroup of `ambient`, stored as its full preimage lattice in Z^n
/// (always containing the ambient relations).
class Subgroup {
public:
    Subgroup(FpAbGroup ambient, const Lattice& lattice) : ambient_(std::move(ambient)) {
        detail::require(lattice.ambient_dim() == ambient_.n_gens(), "Subgroup: lattice ambient != n_gens");
        lattice_ = lattice_sum(lattice, ambient_.relations());
    }

    static Subgroup whole(const FpAbGroup& g) { return Subgroup(g, Lattice::full(g.n_gens())); }
    static Subgroup zero(const FpAbGroup& g) { return Subgroup(g, g.relations()); }

    const FpAbGroup& ambient() const noexcept { return ambient_; }
    const Lattice& lattice() const noexcept { return lattice_; }

    bool contains(const Vector& coords) const { return lattice_.contains(coords); }
    bool is_trivial() const { return lattice_ == ambient_.relations(); }
    bool is_whole() const { return lattice_.is_full(); }

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.ambient_ == b.ambient_ && a.lattice_ == b.lattice_;
    }

private:
    FpAbGroup ambient_;
    Lattice lattice_;
};

/// A subgroup together with a standalone presentation and its inclusion.
struct SubObject {
    Subgroup subgroup;
    FpAbGroup group;
    Hom inclusion; ///< group -> subgroup.ambient()
};

/// A quotient group together with the projection onto it.
struct QuotientObject {
    FpAbGroup group;
    Hom projection; ///< ambient -> group
};

/// Presents a subgroup on the basis columns of its lattice. The relations are
/// the (unique) coordinates of the ambient relations in that basis.
inline SubObject present(const Subgroup& s) {
    const IntMatrix& basis = s.lattice().basis();
    const IntMatrix& rel = s.ambient().relations().basis();
    const LinearSystem sys(basis);
    IntMatrix coords(basis.cols(), rel.cols());
    for (std::size_t j = 0; j < rel.cols(); ++j) {
        auto y = sys.solve(rel.column(j));
        detail::internal_assert(y.has_value(), "present: ambient relation outside subgroup lattice");
        coords.set_column(j, *y);
    }
    FpAbGroup g = make_group(basis.cols(), coords);
    Hom inc(g, s.ambient(), basis);
    return SubObject{s, std::move(g), std::move(inc)};
}

inline SubObject whole_object(const FpAbGroup& g) { return present(Subgroup::whole(g)); }

inline QuotientObject quotient(const FpAbGroup& g, const Subgroup& s) {
    detail::require(s.ambient() == g, "quotient: subgroup ambient mismatch");
    FpAbGroup q(s.lattice());
    Hom p(g, q, IntMatrix::identity(g.n_gens()));
    return QuotientObject{std::move(q), std::move(p)};
}

inline Subgroup image(const Hom& h) {
    return Subgroup(h.target(), Lattice::span(h.target().n_gens(), h.matrix()));
}

inline Subgroup preimage(const Hom& h, const Subgroup& s) {
    detail::require(s.ambient() == h.target(), "preimage: subgroup must live in h.target");
    return Subgroup(h.source(), lattice_preimage(h.matrix(), s.lattice()));
}

inline SubObject kernel(const Hom& h) { return present(preimage(h, Subgroup::zero(h.target()))); }

inline QuotientObject cokernel(const Hom& h) { return quotient(h.target(), image(h)); }

inline Subgroup sub_sum(const Subgroup& a, const Subgroup& b) {
    detail::require(a.ambient() == b.ambient(), "sub_sum: ambient mismatch");
    return Subgroup(a.ambient(), lattice_sum(a.lattice(), b.lattice()));
}

inline Subgroup sub_intersect(const Subgroup& a, const Subgroup& b) {
    detail::require(a.ambient() == b.ambient(), "sub_intersect: ambient mismatch");
    return Subgroup(a.ambient(), lattice_intersect(a.lattice(), b.lattice()));
}

/// Image of a subgroup under h, as a subgroup of h.target().
inline Subgroup image_of(const Hom& h, const Subgroup& s) {
    detail::require(s.ambient() == h.source(), "image_of: subgroup must live in h.source");
    return Subgroup(h.target(), Lattice::span(h.target().n_gens(), h.matrix() * s.lattice().basis()));
}

inline bool is_injective(const Hom& h) { return preimage(h, Subgroup::zero(h.target())).is_trivial(); }
inline bool is_surjective(const Hom& h) { return image(h).is_whole(); }
inline bool is_isomorphism(const Hom& h) { return is_injective(h) && is_surjective(h); }

namespace detail {

using Side = std::variant<const SubObject*, const QuotientObject*>;

inline const FpAbGroup& presented_group(const Side& s) {
    return std::visit([](auto* p) -> const FpAbGroup& { return p->group; }, s);
}

inline const FpAbGroup& ambient_group(const Side& s) {
    if (auto* sub = std::get_if<const SubObject*>(&s))
        return (*sub)->inclusion.target();
    return std::get<const QuotientObject*>(s)->projection.source();
}

/// Map from source-side ambient through h to target-side ambient, then
/// descend to the presented groups on both sides.
inline Hom induce(const Hom& h, const Side& src, const Side& tgt) {
    detail::require(ambient_group(src) == h.source() && ambient_group(tgt) == h.target(),
                    "induced_hom: presentations do not sit over h.source / h.target");
    const FpAbGroup& from = presented_group(src);
    const FpAbGroup& to = presented_group(tgt);

    std::optional<LinearSystem> src_lift;
    if (auto* q = std::get_if<const QuotientObject*>(&src))
        src_lift.emplace(hcat((*q)->projection.matrix(), (*q)->group.relations().basis()));
    std::optional<LinearSystem> tgt_lift;
    if (auto* s = std::get_if<const SubObject*>(&tgt))
        tgt_lift.emplace(hcat((*s)->inclusion.matrix(), h.target().relations().basis()));

    IntMatrix m(to.n_gens(), from.n_gens());
    for (std::size_t j = 0; j < from.n_gens(); ++j) {
        Vector x;
        if (auto* s = std::get_if<const SubObject*>(&src)) {
            x = (*s)->inclusion.matrix().column(j);
        } else {
            auto z = src_lift->solve(unit_vector(from.n_gens(), j));
            detail::internal_assert(z.has_value(), "induced_hom: quotient projection is not surjective");
            x = Vector(z->begin(), z->begin() + static_cast<std::ptrdiff_t>(h.source().n_gens()));
        }
        const Vector y = h.matrix() * x;
        if (auto* q = std::get_if<const QuotientObject*>(&tgt)) {
            m.set_column(j, (*q)->projection.matrix() * y);
        } else {
            auto z = tgt_lift->solve(y);
            if (!z)
                throw NotInduced("induced_hom: h does not map the source into the target subgroup");
            m.set_column(j, Vector(z->begin(), z->begin() + static_cast<std::ptrdiff_t>(to.n_gens())));
        }
    }

    std::optional<Hom> k;
    try {
        k.emplace(from, to, m);
    } catch (const IllDefined&) {
        throw NotInduced("induced_hom: h does not kill the kernel of the source projection");
    }

    // Check the square with the ambient maps commutes.
    const auto* ss = std::get_if<const SubObject*>(&src);
    const auto* ts = std::get_if<const SubObject*>(&tgt);
    bool commutes = true;
    if (ss && ts) {
        commutes = compose((*ts)->inclusion, *k) == compose(h, (*ss)->inclusion);
    } else if (!ss && !ts) {
        const auto* sq = std::get<const QuotientObject*>(src);
        const auto* tq = std::get<const QuotientObject*>(tgt);
        commutes = compose(*k, sq->projection) == compose(tq->projection, h);
    } else if (!ss && ts) {
        const auto* sq = std::get<const QuotientObject*>(src);
        commutes = compose((*ts)->inclusion, compose(*k, sq->projection)) == h;
    }
    if (!commutes)
        throw NotInduced("induced_hom: no hom makes the square commute");
    return *k;
}

} // namespace detail

/// The unique hom between presented sub/quotient objects compatible with h.
/// Throws NotInduced when h does not respect the structure.
inline Hom induced_hom(const Hom& h, const SubObject& src, const SubObject& tgt) {
    return detail::induce(h, &src, &tgt);
}
inline Hom induced_hom(const Hom& h, const QuotientObject& src, const QuotientObject& tgt) {
    return detail::induce(h, &src, &tgt);
}
inline Hom induced_hom(const Hom& h, const SubObject& src, const QuotientObject& tgt) {
    return detail::induce(h, &src, &tgt);
}
inline Hom induced_hom(const Hom& h, const QuotientObject& src, const SubObject& tgt) {
    return detail::induce(h, &src, &tgt);
}

inline std::ostream& operator<<(std::ostream& os, const FpAbGroup& g) {
    return os << g.describe() << " <" << g.n_gens() << " gens, relations " << g.relations().basis() << '>';
}

} // namespace snakelemma
