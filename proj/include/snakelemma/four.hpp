#pragma once

#include <optional>
#include <string>
#include <vector>

#include "snakelemma/snake.hpp"

namespace snakelemma {

/// A -f-> B -g-> C -h-> D over A1 -f1-> B1 -g1-> C1 -h1-> D1 with verticals
/// alpha, beta, gamma, delta.
struct FourDiagram {
    Hom f, g, h, f1, g1, h1, alpha, beta, gamma, delta;

    const FpAbGroup& a() const { return f.source(); }
    const FpAbGroup& b() const { return f.target(); }
    const FpAbGroup& c() const { return g.target(); }
    const FpAbGroup& d() const { return h.target(); }
    const FpAbGroup& a1() const { return f1.source(); }
    const FpAbGroup& b1() const { return f1.target(); }
    const FpAbGroup& c1() const { return g1.target(); }
    const FpAbGroup& d1() const { return h1.target(); }
};

class ValidatedFour {
public:
    const FourDiagram& diagram() const noexcept { return d_; }

private:
    explicit ValidatedFour(FourDiagram d) : d_(std::move(d)) {}
    friend ValidatedFour validate_four(const FourDiagram& d);
    FourDiagram d_;
};

/// Throws DiagramError for the first failure. The hypotheses on alpha and
/// delta only involve single maps and are checked before squares and rows.
inline ValidatedFour validate_four(const FourDiagram& d) {
    using K = DiagramError::Kind;
    detail::require(d.g.source() == d.b() && d.h.source() == d.c(), "FourDiagram: top row is not composable");
    detail::require(d.g1.source() == d.b1() && d.h1.source() == d.c1(), "FourDiagram: bottom row is not composable");
    detail::require(d.alpha.source() == d.a() && d.alpha.target() == d.a1(), "FourDiagram: alpha must map A -> A1");
    detail::require(d.beta.source() == d.b() && d.beta.target() == d.b1(), "FourDiagram: beta must map B -> B1");
    detail::require(d.gamma.source() == d.c() && d.gamma.target() == d.c1(), "FourDiagram: gamma must map C -> C1");
    detail::require(d.delta.source() == d.d() && d.delta.target() == d.d1(), "FourDiagram: delta must map D -> D1");

    if (!is_surjective(d.alpha))
        throw DiagramError(K::HypothesisFailed, "alpha-not-surjective", "alpha is not surjective");
    if (!is_injective(d.delta))
        throw DiagramError(K::HypothesisFailed, "delta-not-injective", "delta is not injective");
    if (!(compose(d.f1, d.alpha) == compose(d.beta, d.f)))
        throw DiagramError(K::NotCommutative, "square 1", "f1 . alpha != beta . f");
    if (!(compose(d.g1, d.beta) == compose(d.gamma, d.g)))
        throw DiagramError(K::NotCommutative, "square 2", "g1 . beta != gamma . g");
    if (!(compose(d.h1, d.gamma) == compose(d.delta, d.h)))
        throw DiagramError(K::NotCommutative, "square 3", "h1 . gamma != delta . h");
    if (!detail::row_exact(d.f, d.g))
        throw DiagramError(K::RowNotExact, "top at B", "im f != ker g");
    if (!detail::row_exact(d.g, d.h))
        throw DiagramError(K::RowNotExact, "top at C", "im g != ker h");
    if (!detail::row_exact(d.f1, d.g1))
        throw DiagramError(K::RowNotExact, "bottom at B1", "im f1 != ker g1");
    if (!detail::row_exact(d.g1, d.h1))
        throw DiagramError(K::RowNotExact, "bottom at C1", "im g1 != ker h1");
    return ValidatedFour(d);
}

struct FourProofTrace {
    SubObject ker_g;       ///< in B
    SubObject ker_g1_beta; ///< in B
    SubObject ker_g1;      ///< in B1
    Hom iota;              ///< ker g -> ker(g1 beta)
    Hom g_hat;             ///< ker(g1 beta) -> ker gamma
    Hom beta_hat;          ///< ker(g1 beta) -> ker g1
    ExactSequence ring;    ///< ring lemma for (iota, beta_hat)
    ExactSequence short_sequence; ///< 0 -> ker(beta_hat iota) -> ker beta_hat -> coker iota -> 0
    std::vector<Check> checks;
};

struct FourLemmaResult {
    ExactSequence es1; ///< 0 -> ker beta & ker g -> ker beta -> ker gamma -> 0
    ExactSequence es2; ///< 0 -> coker beta -> coker gamma -> C1/(im gamma + im g1) -> 0
    ExactSequence esr; ///< 0 -> ker g -> ker(g1 beta) -> ker gamma -> 0
    FourProofTrace trace;
    std::vector<Check> checks;

    bool ok() const { return all_ok(checks) && all_ok(trace.checks); }
};

namespace detail {

inline ExactSequence short_exact(const Hom& left, const Hom& right, std::vector<std::string> labels) {
    const FpAbGroup zero = FpAbGroup::trivial();
    return ExactSequence({zero, left.source(), left.target(), right.target(), zero},
                         {zero_hom(zero, left.source()), left, right, zero_hom(right.target(), zero)},
                         std::move(labels));
}

/// Sub-object of `outer.group` viewed directly inside outer's ambient.
inline SubObject flatten(const SubObject& inner, const SubObject& outer) {
    const Hom inc = compose(outer.inclusion, inner.inclusion);
    return SubObject{image(inc), inner.group, inc};
}

} // namespace detail

inline FourLemmaResult four_lemma(const ValidatedFour& v) {
    const FourDiagram& d = v.diagram();
    const FpAbGroup zero = FpAbGroup::trivial();

    // Squares 2 and 3 form a snake diagram; ker delta = 0 closes the kernel row.
    const SnakeDiagram right{d.g, d.h, d.g1, d.h1, d.beta, d.gamma, d.delta};
    std::optional<ValidatedSnake> vr;
    try {
        vr.emplace(validate(right));
    } catch (const DiagramError& e) {
        throw InternalError(std::string("four_lemma: right half is not a snake diagram: ") + e.what());
    }
    const SnakeSequence s = snake_sequence(*vr);
    detail::internal_assert(s.connecting.domain.group.is_trivial(), "four_lemma: ker delta & im h must vanish");
    detail::internal_assert(s.sequence.exact_at(3), "four_lemma: snake sequence not exact at ker gamma");
    const Hom iota = s.sequence.maps()[1];
    const Hom g_hat = s.sequence.maps()[2];
    ExactSequence esr = detail::short_exact(iota, g_hat, {"0", "ker g", "ker g1.beta", "ker gamma", "0"});

    const SubObject& ker_g = s.ker_f;
    const SubObject& ker_g1b = s.ker_f1_alpha;
    const SubObject& ker_gamma = s.ker_beta;
    const SubObject ker_g1 = kernel(d.g1);
    const Hom beta_hat = induced_hom(d.beta, ker_g1b, ker_g1);

    std::vector<Check> tc;
    tc.push_back({"beta(ker g) == ker g1", image_of(d.beta, ker_g.subgroup) == ker_g1.subgroup});
    const Hom bi = compose(beta_hat, iota);
    tc.push_back({"coker(beta_hat.iota) == 0", cokernel(bi).group.is_trivial()});
    tc.push_back({"g_hat.iota == 0", is_zero_hom(compose(g_hat, iota))});
    tc.push_back({"beta_hat is beta restricted",
                  compose(ker_g1.inclusion, beta_hat) == compose(d.beta, ker_g1b.inclusion)});

    ExactSequence ring = ring_lemma(iota, beta_hat);
    tc.push_back({"ker iota == 0", ring.terms()[1].is_trivial()});
    tc.push_back({"ring lemma sequence exact", ring.fully_exact()});
    ExactSequence short_seq = detail::short_exact(ring.maps()[2], ring.maps()[3],
                                                  {"0", "ker beta_hat.iota", "ker beta_hat", "coker iota", "0"});
    tc.push_back({"short ring sequence exact", short_seq.fully_exact()});

    // es1 on the named subgroups of B and C.
    const SubObject ker_beta = kernel(d.beta);
    const SubObject ker_beta_g = present(sub_intersect(ker_beta.subgroup, ker_g.subgroup));
    const Hom es1_left = induced_hom(identity_hom(d.b()), ker_beta_g, ker_beta);
    const Hom g_star = induced_hom(d.g, ker_beta, ker_gamma);
    ExactSequence es1 =
        detail::short_exact(es1_left, g_star, {"0", "ker beta & ker g", "ker beta", "ker gamma", "0"});

    // Identify the short ring sequence with es1.
    const SubObject k_bi = detail::flatten(kernel(bi), ker_g);
    const SubObject k_bh = detail::flatten(kernel(beta_hat), ker_g1b);
    const QuotientObject cok_iota = cokernel(iota);
    detail::internal_assert(short_seq.terms()[1] == k_bi.group && short_seq.terms()[2] == k_bh.group &&
                                short_seq.terms()[3] == cok_iota.group,
                            "four_lemma: ring lemma terms are not the expected presentations");
    const Hom phi1 = induced_hom(identity_hom(d.b()), k_bi, ker_beta_g);
    const Hom phi2 = induced_hom(identity_hom(d.b()), k_bh, ker_beta);
    const Hom phi3 = induced_hom(g_hat, cok_iota, whole_object(ker_gamma.group));
    tc.push_back({"ker(beta_hat.iota) == ker beta & ker g", is_isomorphism(phi1) && k_bi.subgroup == ker_beta_g.subgroup});
    tc.push_back({"ker beta_hat == ker beta", is_isomorphism(phi2) && k_bh.subgroup == ker_beta.subgroup});
    tc.push_back({"coker iota == ker gamma", is_isomorphism(phi3)});
    tc.push_back({"identifications commute with es1",
                  compose(es1_left, phi1) == compose(phi2, short_seq.maps()[1]) &&
                      compose(g_star, phi2) == compose(phi3, short_seq.maps()[2])});

    const QuotientObject cok_beta = cokernel(d.beta);
    const QuotientObject cok_gamma = cokernel(d.gamma);
    const QuotientObject cq = quotient(d.c1(), sub_sum(image(d.gamma), image(d.g1)));
    ExactSequence es2 = detail::short_exact(induced_hom(d.g1, cok_beta, cok_gamma),
                                            induced_hom(identity_hom(d.c1()), cok_gamma, cq),
                                            {"0", "coker beta", "coker gamma", "C1/(im gamma + im g1)", "0"});

    std::vector<Check> checks;
    checks.push_back({"(1) exact", es1.fully_exact()});
    checks.push_back({"(2) exact", es2.fully_exact()});
    checks.push_back({"(3) exact", esr.fully_exact()});
    checks.push_back({"ker gamma == g(ker beta)", image_of(d.g, ker_beta.subgroup) == ker_gamma.subgroup});
    checks.push_back({"im beta == g1^-1(im gamma)", preimage(d.g1, image(d.gamma)) == image(d.beta)});

    FourProofTrace trace{ker_g,  ker_g1b,        ker_g1,          iota, g_hat, beta_hat, std::move(ring),
                         std::move(short_seq), std::move(tc)};
    return FourLemmaResult{std::move(es1), std::move(es2), std::move(esr), std::move(trace), std::move(checks)};
}

} // namespace snakelemma
