#pragma once

// Brute-force oracle over finite abelian groups. Elements are tuples of
// residues in a product of cyclic groups; homs are element tables. Nothing
// here trusts the lattice code: presented groups are translated to cyclic
// coordinates through a Smith form whose certificate is re-checked with an
// independent determinant, and every hom table is checked for consistency.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "snakelemma/snake.hpp"

namespace snakelemma {

inline constexpr std::size_t kDefaultEnumCap = 512;

class EnumGroup {
public:
    EnumGroup() = default;
    explicit EnumGroup(std::vector<std::int64_t> cyclic_orders, std::size_t cap = kDefaultEnumCap)
        : orders_(std::move(cyclic_orders)) {
        for (auto o : orders_) {
            detail::require(o >= 2, "EnumGroup: cyclic orders must be >= 2");
            if (size_ > cap / static_cast<std::size_t>(o))
                throw CapExceeded("EnumGroup: order exceeds enumeration cap " + std::to_string(cap));
            size_ *= static_cast<std::size_t>(o);
        }
        if (size_ > cap)
            throw CapExceeded("EnumGroup: order exceeds enumeration cap " + std::to_string(cap));
    }

    const std::vector<std::int64_t>& cyclic_orders() const noexcept { return orders_; }
    std::size_t order() const noexcept { return size_; }

    std::vector<std::int64_t> decode(std::size_t index) const {
        std::vector<std::int64_t> r(orders_.size());
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            r[i] = static_cast<std::int64_t>(index % static_cast<std::size_t>(orders_[i]));
            index /= static_cast<std::size_t>(orders_[i]);
        }
        return r;
    }

    std::size_t encode(const std::vector<std::int64_t>& residues) const {
        std::size_t index = 0;
        for (std::size_t i = orders_.size(); i-- > 0;) {
            auto r = residues[i] % orders_[i];
            if (r < 0)
                r += orders_[i];
            index = index * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(r);
        }
        return index;
    }

    std::size_t add(std::size_t a, std::size_t b) const {
        auto x = decode(a);
        const auto y = decode(b);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += y[i];
        return encode(x);
    }

private:
    std::vector<std::int64_t> orders_;
    std::size_t size_ = 1;
};

/// Element table of a map between EnumGroups.
struct EnumMap {
    std::vector<std::size_t> table;
};

struct EnumSequence {
    std::vector<EnumGroup> terms;
    std::vector<EnumMap> maps;
};

/// Exactness verdict at each interior position, by comparing element sets.
inline std::vector<bool> enum_exactness(const EnumSequence& seq) {
    detail::require(seq.maps.size() + 1 == seq.terms.size(), "enum_exactness: need one more term than maps");
    for (std::size_t i = 0; i < seq.maps.size(); ++i)
        detail::require(seq.maps[i].table.size() == seq.terms[i].order(), "enum_exactness: table size mismatch");
    std::vector<bool> out;
    for (std::size_t i = 1; i + 1 < seq.terms.size(); ++i) {
        std::vector<char> in_image(seq.terms[i].order(), 0), in_kernel(seq.terms[i].order(), 0);
        for (auto y : seq.maps[i - 1].table)
            in_image[y] = 1;
        for (std::size_t x = 0; x < seq.terms[i].order(); ++x)
            in_kernel[x] = seq.maps[i].table[x] == 0;
        out.push_back(in_image == in_kernel);
    }
    return out;
}

inline bool enum_check_exact(const EnumSequence& seq) {
    const auto v = enum_exactness(seq);
    return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

namespace detail {

inline Int bareiss_determinant(IntMatrix m) {
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

} // namespace detail

/// A finite presented group identified with a product of cyclic groups.
class EnumPresentation {
public:
    EnumPresentation(const FpAbGroup& g, std::size_t cap = kDefaultEnumCap) {
        const IntMatrix& rel = g.relations().basis();
        const std::size_t n = g.n_gens();
        if (rel.cols() != n)
            throw CapExceeded("EnumPresentation: group is infinite");
        const Int det = abs(detail::bareiss_determinant(rel));
        if (det > Int(static_cast<unsigned long>(cap)))
            throw CapExceeded("EnumPresentation: order " + det.get_str() + " exceeds cap " + std::to_string(cap));

        const SnfResult s = snf(rel);
        detail::internal_assert(s.u * rel * s.v == s.d, "oracle: Smith certificate failed");
        std::vector<std::int64_t> orders;
        for (std::size_t i = 0; i < n; ++i) {
            const Int& d = s.d(i, i);
            if (d == 1)
                continue;
            detail::internal_assert(d.fits_slong_p() && d > 1, "oracle: unexpected invariant factor");
            orders.push_back(d.get_si());
            rows_.push_back(i);
        }
        u_ = s.u;
        group_ = EnumGroup(orders, cap);
        detail::internal_assert(Int(static_cast<unsigned long>(group_.order())) == det,
                                "oracle: cyclic decomposition has the wrong order");
        for (std::size_t j = 0; j < rel.cols(); ++j)
            detail::internal_assert(element(rel.column(j)) == 0, "oracle: relation is not zero in cyclic coordinates");
        gens_.resize(n);
        for (std::size_t j = 0; j < n; ++j)
            gens_[j] = element(unit_vector(n, j));
        // Generator images must generate everything.
        std::vector<char> seen(group_.order(), 0);
        std::queue<std::size_t> todo;
        seen[0] = 1;
        todo.push(0);
        std::size_t reached = 1;
        while (!todo.empty()) {
            const auto x = todo.front();
            todo.pop();
            for (auto gj : gens_) {
                const auto y = group_.add(x, gj);
                if (!seen[y]) {
                    seen[y] = 1;
                    ++reached;
                    todo.push(y);
                }
            }
        }
        detail::internal_assert(reached == group_.order(), "oracle: generators do not cover the cyclic group");
    }

    const EnumGroup& group() const noexcept { return group_; }
    std::size_t generator(std::size_t j) const { return gens_[j]; }
    std::size_t n_gens() const noexcept { return gens_.size(); }

    /// Index of the class of a coordinate vector.
    std::size_t element(const Vector& coords) const {
        std::vector<std::int64_t> r(rows_.size());
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            Int acc = 0;
            for (std::size_t j = 0; j < coords.size(); ++j)
                acc += u_(rows_[k], j) * coords[j];
            Int m;
            mpz_fdiv_r_ui(m.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(group_.cyclic_orders()[k]));
            r[k] = m.get_si();
        }
        return group_.encode(r);
    }

private:
    IntMatrix u_;
    std::vector<std::size_t> rows_;
    EnumGroup group_;
    std::vector<std::size_t> gens_;
};

/// Element table of h, built by walking the source from 0 along generator
/// steps. Returns nullopt if two walks to the same element disagree, i.e. h
/// is not a well-defined map on the source group.
inline std::optional<EnumMap> enum_map(const Hom& h, const EnumPresentation& src, const EnumPresentation& tgt) {
    const std::size_t n = src.n_gens();
    std::vector<std::size_t> step(n);
    for (std::size_t j = 0; j < n; ++j)
        step[j] = tgt.element(h.matrix().column(j));
    const std::size_t none = static_cast<std::size_t>(-1);
    EnumMap m{std::vector<std::size_t>(src.group().order(), none)};
    m.table[0] = 0;
    std::queue<std::size_t> todo;
    todo.push(0);
    while (!todo.empty()) {
        const auto x = todo.front();
        todo.pop();
        for (std::size_t j = 0; j < n; ++j) {
            const auto y = src.group().add(x, src.generator(j));
            const auto val = tgt.group().add(m.table[x], step[j]);
            if (m.table[y] == none) {
                m.table[y] = val;
                todo.push(y);
            } else if (m.table[y] != val) {
                return std::nullopt;
            }
        }
    }
    return m;
}

/// Enumerated copy of a lattice-built sequence. Throws CapExceeded for
/// infinite or oversized terms.
inline EnumSequence to_enum(const ExactSequence& seq, std::size_t cap = kDefaultEnumCap) {
    std::vector<EnumPresentation> pres;
    for (const auto& t : seq.terms())
        pres.emplace_back(t, cap);
    EnumSequence out;
    for (const auto& p : pres)
        out.terms.push_back(p.group());
    for (std::size_t i = 0; i < seq.maps().size(); ++i) {
        auto m = enum_map(seq.maps()[i], pres[i], pres[i + 1]);
        detail::internal_assert(m.has_value(), "oracle: sequence map is not well defined");
        out.maps.push_back(std::move(*m));
    }
    return out;
}

struct EnumConnecting {
    /// C-element index -> canonical A1-element index of the class of delta(c),
    /// for every c in ker gamma & im g.
    std::map<std::size_t, std::size_t> table;
    bool lift_independent = true;  ///< every lift gave the same class
    bool matches_lattice = true;   ///< agrees with connecting_hom elementwise
    std::size_t lifts_checked = 0;
};

/// Exhaustive diagram chase: for every c in ker gamma & im g, every lift b of
/// c through g and every preimage a1 of beta(b) under f1 must land in one
/// class mod im alpha + ker f1. The result is compared with connecting_hom.
inline EnumConnecting enum_connecting(const ValidatedSnake& v, std::size_t cap = kDefaultEnumCap) {
    const SnakeDiagram& d = v.diagram();
    const EnumPresentation pa(d.a(), cap), pb(d.b(), cap), pc(d.c(), cap);
    const EnumPresentation pa1(d.a1(), cap), pb1(d.b1(), cap), pc1(d.c1(), cap);
    auto table = [](const Hom& h, const EnumPresentation& s, const EnumPresentation& t) {
        auto m = enum_map(h, s, t);
        detail::internal_assert(m.has_value(), "oracle: diagram map is not well defined");
        return m->table;
    };
    const auto g = table(d.g, pb, pc);
    const auto f1 = table(d.f1, pa1, pb1);
    const auto g1 = table(d.g1, pb1, pc1);
    const auto alpha = table(d.alpha, pa, pa1);
    const auto beta = table(d.beta, pb, pb1);
    const auto gamma = table(d.gamma, pc, pc1);
    const EnumGroup& A1 = pa1.group();

    // S = im alpha + ker f1, and the least element of each coset x + S.
    std::vector<char> in_s(A1.order(), 0);
    std::vector<std::size_t> ker_f1;
    for (std::size_t x = 0; x < A1.order(); ++x)
        if (f1[x] == 0)
            ker_f1.push_back(x);
    for (auto a : alpha)
        for (auto k : ker_f1)
            in_s[A1.add(a, k)] = 1;
    std::vector<std::size_t> s_elems;
    for (std::size_t x = 0; x < A1.order(); ++x)
        if (in_s[x])
            s_elems.push_back(x);
    std::vector<std::size_t> canon(A1.order());
    for (std::size_t x = 0; x < A1.order(); ++x) {
        std::size_t best = x;
        for (auto s : s_elems)
            best = std::min(best, A1.add(x, s));
        canon[x] = best;
    }

    std::vector<std::vector<std::size_t>> g_fibre(pc.group().order()), f1_fibre(pb1.group().order());
    for (std::size_t b = 0; b < g.size(); ++b)
        g_fibre[g[b]].push_back(b);
    for (std::size_t a = 0; a < f1.size(); ++a)
        f1_fibre[f1[a]].push_back(a);

    EnumConnecting r;
    for (std::size_t c = 0; c < pc.group().order(); ++c) {
        if (gamma[c] != 0 || g_fibre[c].empty())
            continue;
        std::optional<std::size_t> cls;
        for (auto b : g_fibre[c]) {
            const auto b1 = beta[b];
            if (g1[b1] != 0 || f1_fibre[b1].empty()) {
                r.lift_independent = false;
                continue;
            }
            for (auto a1 : f1_fibre[b1]) {
                ++r.lifts_checked;
                if (!cls)
                    cls = canon[a1];
                else if (*cls != canon[a1])
                    r.lift_independent = false;
            }
        }
        if (cls)
            r.table[c] = *cls;
    }

    // Compare with the lattice construction.
    const ConnectingHom conn = connecting_hom(v);
    const EnumPresentation pd(conn.domain.group, cap), pq(conn.codomain.group, cap);
    const auto incl = table(conn.domain.inclusion, pd, pc);
    const auto delta = table(conn.delta, pd, pq);
    const auto proj = table(conn.codomain.projection, pa1, pq);

    std::vector<std::size_t> incl_sorted(incl);
    std::sort(incl_sorted.begin(), incl_sorted.end());
    const bool injective = std::adjacent_find(incl_sorted.begin(), incl_sorted.end()) == incl_sorted.end();
    std::vector<std::size_t> domain;
    for (const auto& [c, cls] : r.table)
        domain.push_back(c);
    r.matches_lattice = injective && incl_sorted == domain;
    for (std::size_t x = 0; x < A1.order(); ++x)
        r.matches_lattice = r.matches_lattice && ((proj[x] == 0) == (in_s[x] != 0));
    for (std::size_t x = 0; r.matches_lattice && x < incl.size(); ++x) {
        const auto it = r.table.find(incl[x]);
        r.matches_lattice = it != r.table.end() && proj[it->second] == delta[x];
    }
    return r;
}

} // namespace snakelemma
