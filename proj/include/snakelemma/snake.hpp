#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "snakelemma/exact_sequence.hpp"
#include "snakelemma/random.hpp"

namespace snakelemma {

struct Check {
    std::string name;
    bool ok = false;
};

inline bool all_ok(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (!c.ok)
            return false;
    return true;
}

/// Two rows A -f-> B -g-> C and A1 -f1-> B1 -g1-> C1 joined by alpha, beta,
/// gamma. Groups are read off the homs.
struct SnakeDiagram {
    Hom f, g, f1, g1, alpha, beta, gamma;

    const FpAbGroup& a() const { return f.source(); }
    const FpAbGroup& b() const { return f.target(); }
    const FpAbGroup& c() const { return g.target(); }
    const FpAbGroup& a1() const { return f1.source(); }
    const FpAbGroup& b1() const { return f1.target(); }
    const FpAbGroup& c1() const { return g1.target(); }
};

class ValidatedSnake {
public:
    const SnakeDiagram& diagram() const noexcept { return d_; }

private:
    explicit ValidatedSnake(SnakeDiagram d) : d_(std::move(d)) {}
    friend ValidatedSnake validate(const SnakeDiagram& d);
    SnakeDiagram d_;
};

namespace detail {

inline void require_shape(const SnakeDiagram& d) {
    require(d.g.source() == d.b() && d.g1.source() == d.b1(), "SnakeDiagram: rows are not composable");
    require(d.alpha.source() == d.a() && d.alpha.target() == d.a1(), "SnakeDiagram: alpha must map A -> A1");
    require(d.beta.source() == d.b() && d.beta.target() == d.b1(), "SnakeDiagram: beta must map B -> B1");
    require(d.gamma.source() == d.c() && d.gamma.target() == d.c1(), "SnakeDiagram: gamma must map C -> C1");
}

inline bool row_exact(const Hom& in, const Hom& out) {
    return image(in) == preimage(out, Subgroup::zero(out.target()));
}

} // namespace detail

/// Checks commutativity ("square 1": f1 alpha = beta f, "square 2":
/// g1 beta = gamma g) and exactness of both rows at the middle term.
inline ValidatedSnake validate(const SnakeDiagram& d) {
    detail::require_shape(d);
    if (!(compose(d.f1, d.alpha) == compose(d.beta, d.f)))
        throw DiagramError(DiagramError::Kind::NotCommutative, "square 1", "f1 . alpha != beta . f");
    if (!(compose(d.g1, d.beta) == compose(d.gamma, d.g)))
        throw DiagramError(DiagramError::Kind::NotCommutative, "square 2", "g1 . beta != gamma . g");
    if (!detail::row_exact(d.f, d.g))
        throw DiagramError(DiagramError::Kind::RowNotExact, "top", "im f != ker g");
    if (!detail::row_exact(d.f1, d.g1))
        throw DiagramError(DiagramError::Kind::RowNotExact, "bottom", "im f1 != ker g1");
    return ValidatedSnake(d);
}

/// delta : ker gamma /\ im g  ->  A1 / (im alpha + ker f1).
struct ConnectingHom {
    SubObject domain;        ///< inclusion into C
    QuotientObject codomain; ///< projection out of A1
    Hom delta;
};

/// Lift each domain generator through g, push down with beta, pull back
/// through f1 and take the class. With an Rng both lifts pick random
/// witnesses; the result is the same hom regardless.
inline ConnectingHom connecting_hom(const ValidatedSnake& v, Rng* rng = nullptr) {
    const SnakeDiagram& d = v.diagram();
    SubObject domain = present(sub_intersect(preimage(d.gamma, Subgroup::zero(d.c1())), image(d.g)));
    QuotientObject codomain =
        quotient(d.a1(), sub_sum(image(d.alpha), preimage(d.f1, Subgroup::zero(d.b1()))));

    const LinearSystem lift_g(hcat(d.g.matrix(), d.c().relations().basis()));
    const LinearSystem lift_f1(hcat(d.f1.matrix(), d.b1().relations().basis()));
    const Subgroup ker_g1 = preimage(d.g1, Subgroup::zero(d.c1()));
    const std::size_t nb = d.b().n_gens();
    const std::size_t na1 = d.a1().n_gens();

    IntMatrix m(codomain.group.n_gens(), domain.group.n_gens());
    for (std::size_t j = 0; j < domain.group.n_gens(); ++j) {
        const Vector c = domain.inclusion.matrix().column(j);
        auto x = lift_g.solve(c, rng);
        detail::internal_assert(x.has_value(), "connecting_hom: element of im g has no lift through g");
        const Vector b(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(nb));
        const Vector b1 = d.beta.matrix() * b;
        detail::internal_assert(ker_g1.contains(b1), "connecting_hom: beta(b) not in ker g1");
        auto y = lift_f1.solve(b1, rng);
        detail::internal_assert(y.has_value(), "connecting_hom: beta(b) has no preimage under f1");
        m.set_column(j, codomain.projection.matrix() * Vector(y->begin(), y->begin() + static_cast<std::ptrdiff_t>(na1)));
    }
    try {
        Hom delta(domain.group, codomain.group, m);
        return ConnectingHom{std::move(domain), std::move(codomain), std::move(delta)};
    } catch (const IllDefined&) {
        throw InternalError("connecting_hom: assembled delta is not well defined");
    }
}

/// The ten-term sequence
///   0 -> ker f -> ker(f1 alpha) -> ker beta -> ker gamma /\ im g -delta->
///   A1/(im alpha + ker f1) -> coker beta -> coker(gamma g) -> coker g1 -> 0
struct SnakeSequence {
    SubObject ker_f, ker_f1_alpha, ker_beta;
    ConnectingHom connecting;
    QuotientObject coker_beta, coker_gamma_g, coker_g1;
    ExactSequence sequence;
};

inline SnakeSequence snake_sequence(const ValidatedSnake& v) {
    const SnakeDiagram& d = v.diagram();
    SubObject ker_f = kernel(d.f);
    SubObject ker_f1a = kernel(compose(d.f1, d.alpha));
    SubObject ker_beta = kernel(d.beta);
    ConnectingHom conn = connecting_hom(v);
    QuotientObject cok_beta = cokernel(d.beta);
    QuotientObject cok_gg = cokernel(compose(d.gamma, d.g));
    QuotientObject cok_g1 = cokernel(d.g1);
    const FpAbGroup zero = FpAbGroup::trivial();

    std::vector<FpAbGroup> terms{zero,
                                 ker_f.group,
                                 ker_f1a.group,
                                 ker_beta.group,
                                 conn.domain.group,
                                 conn.codomain.group,
                                 cok_beta.group,
                                 cok_gg.group,
                                 cok_g1.group,
                                 zero};
    std::vector<Hom> maps{zero_hom(zero, ker_f.group),
                          induced_hom(identity_hom(d.a()), ker_f, ker_f1a),
                          induced_hom(d.f, ker_f1a, ker_beta),
                          induced_hom(d.g, ker_beta, conn.domain),
                          conn.delta,
                          induced_hom(d.f1, conn.codomain, cok_beta),
                          induced_hom(d.g1, cok_beta, cok_gg),
                          induced_hom(identity_hom(d.c1()), cok_gg, cok_g1),
                          zero_hom(cok_g1.group, zero)};
    std::vector<std::string> labels{"0",
                                    "ker f",
                                    "ker f1.alpha",
                                    "ker beta",
                                    "ker gamma & im g",
                                    "A1/(im alpha + ker f1)",
                                    "coker beta",
                                    "coker gamma.g",
                                    "coker g1",
                                    "0"};
    ExactSequence seq(std::move(terms), std::move(maps), std::move(labels));
    return SnakeSequence{std::move(ker_f),    std::move(ker_f1a), std::move(ker_beta), std::move(conn),
                         std::move(cok_beta), std::move(cok_gg),  std::move(cok_g1),   std::move(seq)};
}

struct SpecializationReport {
    bool f1_injective = false;
    bool g_surjective = false;
    std::vector<Check> checks;
    /// Present only when f1 is injective and g is surjective.
    std::optional<ExactSequence> classical;

    bool ok() const { return all_ok(checks); }
};

inline SpecializationReport classical_specialization(const ValidatedSnake& v, const SnakeSequence& s) {
    const SnakeDiagram& d = v.diagram();
    SpecializationReport r;
    r.f1_injective = is_injective(d.f1);
    r.g_surjective = is_surjective(d.g);

    const SubObject ker_alpha = kernel(d.alpha);
    const QuotientObject cok_alpha = cokernel(d.alpha);
    const SubObject ker_gamma = kernel(d.gamma);
    const QuotientObject cok_gamma = cokernel(d.gamma);

    if (r.f1_injective) {
        r.checks.push_back({"ker(f1.alpha) == ker alpha", s.ker_f1_alpha.subgroup == ker_alpha.subgroup});
        r.checks.push_back({"A1/(im alpha + ker f1) == coker alpha",
                            s.connecting.codomain.group == cok_alpha.group &&
                                isomorphic(s.connecting.codomain.group, cok_alpha.group)});
    }
    if (r.g_surjective) {
        r.checks.push_back({"coker(gamma.g) == coker gamma",
                            s.coker_gamma_g.group == cok_gamma.group &&
                                isomorphic(s.coker_gamma_g.group, cok_gamma.group)});
        r.checks.push_back({"ker gamma & im g == ker gamma", s.connecting.domain.subgroup == ker_gamma.subgroup});
    }
    if (!(r.f1_injective && r.g_surjective))
        return r;

    const Hom id_a1 = identity_hom(d.a1());
    const Hom id_c = identity_hom(d.c());
    const Hom to_domain = induced_hom(id_c, ker_gamma, s.connecting.domain);
    const Hom to_coker_alpha = induced_hom(id_a1, s.connecting.codomain, cok_alpha);
    const Hom delta = compose(to_coker_alpha, compose(s.connecting.delta, to_domain));

    const FpAbGroup zero = FpAbGroup::trivial();
    std::vector<FpAbGroup> terms{zero,          s.ker_f.group,          ker_alpha.group,        s.ker_beta.group,
                                 ker_gamma.group, cok_alpha.group,      s.coker_beta.group,     cok_gamma.group,
                                 s.coker_g1.group, zero};
    std::vector<Hom> maps{zero_hom(zero, s.ker_f.group),
                          induced_hom(identity_hom(d.a()), s.ker_f, ker_alpha),
                          induced_hom(d.f, ker_alpha, s.ker_beta),
                          induced_hom(d.g, s.ker_beta, ker_gamma),
                          delta,
                          induced_hom(d.f1, cok_alpha, s.coker_beta),
                          induced_hom(d.g1, s.coker_beta, cok_gamma),
                          induced_hom(identity_hom(d.c1()), cok_gamma, s.coker_g1),
                          zero_hom(s.coker_g1.group, zero)};
    r.classical.emplace(std::move(terms), std::move(maps),
                        std::vector<std::string>{"0", "ker f", "ker alpha", "ker beta", "ker gamma", "coker alpha",
                                                 "coker beta", "coker gamma", "coker g1", "0"});
    r.checks.push_back({"classical sequence exact", r.classical->fully_exact()});

    // Comparison isomorphisms between the generalized and classical terms.
    const ExactSequence& gen = s.sequence;
    const ExactSequence& cls = *r.classical;
    std::vector<Hom> cmp{identity_hom(zero),
                         identity_hom(s.ker_f.group),
                         induced_hom(identity_hom(d.a()), s.ker_f1_alpha, ker_alpha),
                         identity_hom(s.ker_beta.group),
                         induced_hom(id_c, s.connecting.domain, ker_gamma),
                         to_coker_alpha,
                         identity_hom(s.coker_beta.group),
                         induced_hom(identity_hom(d.c1()), s.coker_gamma_g, cok_gamma),
                         identity_hom(s.coker_g1.group),
                         identity_hom(zero)};
    bool isos = true;
    bool factors = true;
    for (std::size_t i = 0; i < cmp.size(); ++i) {
        isos = isos && is_isomorphism(cmp[i]);
        factors = factors && isomorphic(gen.terms()[i], cls.terms()[i]);
    }
    bool squares = true;
    for (std::size_t i = 0; i < gen.maps().size(); ++i)
        squares = squares && compose(cls.maps()[i], cmp[i]) == compose(cmp[i + 1], gen.maps()[i]);
    r.checks.push_back({"termwise invariant factors agree", factors});
    r.checks.push_back({"comparison maps are isomorphisms", isos});
    r.checks.push_back({"comparison squares commute", squares});
    return r;
}

inline SpecializationReport classical_specialization(const ValidatedSnake& v) {
    return classical_specialization(v, snake_sequence(v));
}

/// 0 -> ker a -> ker ba -> ker b -> coker a -> coker ba -> coker b -> 0,
/// obtained from the snake sequence of
///   A  -alpha-> B -proj-> coker alpha
///   |ba         |beta     |0
///   C  --id---> C ------> 0
inline ExactSequence ring_lemma(const Hom& alpha, const Hom& beta) {
    detail::require(alpha.target() == beta.source(), "ring_lemma: alpha.target must equal beta.source");
    const FpAbGroup zero = FpAbGroup::trivial();
    const QuotientObject cok_alpha = cokernel(alpha);
    const FpAbGroup& c = beta.target();
    SnakeDiagram d{alpha,
                   cok_alpha.projection,
                   identity_hom(c),
                   zero_hom(c, zero),
                   compose(beta, alpha),
                   beta,
                   zero_hom(cok_alpha.group, zero)};
    std::optional<ValidatedSnake> v;
    try {
        v.emplace(validate(d));
    } catch (const DiagramError& e) {
        throw InternalError(std::string("ring_lemma: constructed diagram invalid: ") + e.what());
    }
    const SnakeSequence s = snake_sequence(*v);
    const auto& t = s.sequence.terms();
    const auto& m = s.sequence.maps();
    detail::internal_assert(t[7].is_trivial() && t[8].is_trivial(), "ring_lemma: trailing terms must vanish");
    std::vector<FpAbGroup> terms(t.begin(), t.begin() + 7);
    terms.push_back(zero);
    std::vector<Hom> maps(m.begin(), m.begin() + 6);
    maps.push_back(zero_hom(t[6], zero));
    return ExactSequence(std::move(terms), std::move(maps),
                         {"0", "ker alpha", "ker beta.alpha", "ker beta", "coker alpha", "coker beta.alpha",
                          "coker beta", "0"});
}

/// Ring sequence with its factorizations through A, B, C.
struct ExactRing {
    SubObject ker_alpha, ker_beta_alpha, ker_beta;
    QuotientObject coker_alpha, coker_beta_alpha, coker_beta;
    /// 0 -> ker a -> ker ba -> ker b -> coker a -> coker ba -> coker b -> 0,
    /// closed by 0 -> 0.
    ExactSequence ring;
    std::vector<Check> checks;

    bool ok() const { return all_ok(checks); }
};

inline ExactRing exact_ring(const Hom& alpha, const Hom& beta) {
    detail::require(alpha.target() == beta.source(), "exact_ring: alpha.target must equal beta.source");
    const Hom ba = compose(beta, alpha);
    const FpAbGroup zero = FpAbGroup::trivial();
    SubObject ka = kernel(alpha);
    SubObject kba = kernel(ba);
    SubObject kb = kernel(beta);
    QuotientObject ca = cokernel(alpha);
    QuotientObject cba = cokernel(ba);
    QuotientObject cb = cokernel(beta);

    const Hom r1 = induced_hom(identity_hom(alpha.source()), ka, kba);
    const Hom r2 = induced_hom(alpha, kba, kb);
    const Hom r3 = induced_hom(identity_hom(beta.source()), kb, ca);
    const Hom r4 = induced_hom(beta, ca, cba);
    const Hom r5 = induced_hom(identity_hom(beta.target()), cba, cb);

    ExactSequence ring({zero, ka.group, kba.group, kb.group, ca.group, cba.group, cb.group, zero},
                       {zero_hom(zero, ka.group), r1, r2, r3, r4, r5, zero_hom(cb.group, zero)},
                       {"0", "ker alpha", "ker beta.alpha", "ker beta", "coker alpha", "coker beta.alpha",
                        "coker beta", "0"});

    std::vector<Check> checks;
    checks.push_back({"ker alpha -> ker beta.alpha factors through A", compose(kba.inclusion, r1) == ka.inclusion});
    checks.push_back({"ker beta.alpha -> ker beta is alpha on A",
                      compose(kb.inclusion, r2) == compose(alpha, kba.inclusion)});
    checks.push_back({"ker beta -> coker alpha factors through B", r3 == compose(ca.projection, kb.inclusion)});
    checks.push_back({"coker alpha -> coker beta.alpha is beta on B",
                      compose(r4, ca.projection) == compose(cba.projection, beta)});
    checks.push_back({"coker beta.alpha -> coker beta factors through C",
                      compose(r5, cba.projection) == cb.projection});
    const char* node_names[] = {"ker alpha", "ker beta.alpha", "ker beta", "coker alpha", "coker beta.alpha",
                                "coker beta"};
    for (std::size_t i = 1; i <= 6; ++i)
        checks.push_back({std::string("exact at ") + node_names[i - 1], ring.exact_at(i)});

    const ExactSequence lemma = ring_lemma(alpha, beta);
    bool same = lemma.terms() == ring.terms();
    for (std::size_t i = 0; same && i < ring.maps().size(); ++i)
        same = lemma.maps()[i] == ring.maps()[i];
    checks.push_back({"ring agrees with ring lemma sequence", same});

    bool finite = true;
    for (std::size_t i = 1; i <= 6; ++i)
        finite = finite && ring.terms()[i].is_finite();
    if (finite) {
        const auto& t = ring.terms();
        const Int lhs = *t[2].order() * *t[4].order() * *t[6].order();
        const Int rhs = *t[1].order() * *t[3].order() * *t[5].order();
        checks.push_back({"alternating product of orders is 1", lhs == rhs});
    }
    return ExactRing{std::move(ka), std::move(kba),  std::move(kb),     std::move(ca),
                     std::move(cba), std::move(cb), std::move(ring), std::move(checks)};
}

} // namespace snakelemma
