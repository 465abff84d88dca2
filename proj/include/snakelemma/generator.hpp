#pragma once

// Seeded random diagrams that satisfy their validators by construction.
// Rows are made exact as B -> coker(f) + E (padding E makes g generically
// non-surjective); verticals come from solving the lifting systems.

#include <cstdint>
#include <optional>
#include <utility>

#include "snakelemma/four.hpp"
#include "snakelemma/random.hpp"

namespace snakelemma {

struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t max_gens = 4;
    std::int64_t entry_bound = 5;
    std::int64_t relation_bound = 6;
    std::size_t resample_limit = 100;
    /// Only full-rank relation lattices, every group of order <= order_cap.
    bool finite = false;
    std::size_t order_cap = 512;
};

namespace gen_detail {

inline void check_config(const GenConfig& cfg) {
    detail::require(cfg.entry_bound > 0 && cfg.relation_bound > 0 && cfg.resample_limit > 0 && cfg.order_cap > 0,
                    "GenConfig: bounds must be positive");
}

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t bound) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = static_cast<long>(uniform_int(rng, -bound, bound));
    return m;
}

inline Lattice random_relations(Rng& rng, std::size_t n, const GenConfig& cfg) {
    if (cfg.finite) {
        IntMatrix r(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            r(j, j) = static_cast<long>(uniform_int(rng, 1, cfg.relation_bound));
            for (std::size_t i = 0; i < j; ++i)
                if (coin(rng, 40))
                    r(i, j) = static_cast<long>(uniform_int(rng, -cfg.relation_bound, cfg.relation_bound));
        }
        return Lattice::span(n, r);
    }
    const std::size_t k = uniform_int(rng, 0, static_cast<std::int64_t>(n));
    return Lattice::span(n, random_matrix(rng, n, k, cfg.relation_bound));
}

inline Lattice random_group(Rng& rng, const GenConfig& cfg) {
    return random_relations(rng, uniform_int(rng, 0, static_cast<std::int64_t>(cfg.max_gens)), cfg);
}

/// Relations of coker(m : Z^k -> Z^n / rel).
inline Lattice coker_relations(const IntMatrix& m, const Lattice& rel) {
    return Lattice::span(rel.ambient_dim(), hcat(m, rel.basis()));
}

inline Lattice direct_sum(const Lattice& a, const Lattice& b) {
    return Lattice::span(a.ambient_dim() + b.ambient_dim(), block_diag(a.basis(), b.basis()));
}

/// [I; 0] : Z^n -> Z^(n + pad)
inline IntMatrix first_summand(std::size_t n, std::size_t pad) {
    return vcat(IntMatrix::identity(n), IntMatrix(pad, n));
}

/// Shrinks `src` so that m maps it into `tgt`.
inline Lattice shrink_source(const Lattice& src, const IntMatrix& m, const Lattice& tgt) {
    return lattice_intersect(src, lattice_preimage(m, tgt));
}

/// Enlarges `tgt` so that m maps `src` into it.
inline Lattice enlarge_target(const Lattice& src, const IntMatrix& m, const Lattice& tgt) {
    return lattice_sum(tgt, Lattice::span(tgt.ambient_dim(), m * src.basis()));
}

/// Random sublattice of l: some basis columns multiplied by 2 or 3.
inline Lattice random_sublattice(Rng& rng, const Lattice& l) {
    IntMatrix b = l.basis();
    for (std::size_t j = 0; j < b.cols(); ++j)
        if (coin(rng, 50)) {
            const long k = static_cast<long>(uniform_int(rng, 2, 3));
            for (std::size_t i = 0; i < b.rows(); ++i)
                b(i, j) *= k;
        }
    return Lattice::span(l.ambient_dim(), b);
}

/// Random unimodular change of generators: relations become u * rel,
/// incoming matrices u * m, outgoing matrices m * u_inv.
struct Rebasis {
    IntMatrix u, u_inv;
};

inline Rebasis random_rebasis(Rng& rng, std::size_t n) {
    Rebasis r{IntMatrix::identity(n), IntMatrix::identity(n)};
    if (n < 2)
        return r;
    for (std::size_t step = 0; step < n; ++step) {
        const auto i = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1));
        auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 2));
        if (j >= i)
            ++j;
        const Int c = static_cast<long>(uniform_int(rng, -1, 1));
        r.u.add_row_multiple(j, i, c);        // u <- E u, E = I + c e_j e_i^T
        r.u_inv.add_column_multiple(i, j, -c); // u_inv <- u_inv E^-1
    }
    return r;
}

inline Lattice rebase(const Lattice& l, const Rebasis& r) { return Lattice::span(l.ambient_dim(), r.u * l.basis()); }

inline bool within_cap(const FpAbGroup& g, const GenConfig& cfg) {
    if (!cfg.finite)
        return true;
    const auto o = g.order();
    return o && *o <= Int(static_cast<unsigned long>(cfg.order_cap));
}

} // namespace gen_detail

/// Random snake diagram that passes validate(). Deterministic per seed.
inline SnakeDiagram gen_snake(const GenConfig& cfg) {
    using namespace gen_detail;
    check_config(cfg);
    Rng rng(cfg.seed);
    for (std::size_t attempt = 0; attempt < cfg.resample_limit; ++attempt) {
        const std::int64_t eb = cfg.entry_bound;
        // Top row, first half: f : A -> B.
        Lattice lb = random_group(rng, cfg);
        Lattice la = random_group(rng, cfg);
        const IntMatrix mf = random_matrix(rng, lb.ambient_dim(), la.ambient_dim(), eb);
        la = shrink_source(la, mf, lb);

        // beta : B -> B1.
        Lattice lb1 = random_group(rng, cfg);
        const IntMatrix mbeta = random_matrix(rng, lb1.ambient_dim(), lb.ambient_dim(), eb);
        lb1 = enlarge_target(lb, mbeta, lb1);

        // f1 : A1 = Z^(nA + nP) / L -> B1 with beta f as its first block, so
        // that f1 alpha = beta f is solvable.
        const std::size_t np = uniform_int(rng, 0, static_cast<std::int64_t>(cfg.max_gens));
        const IntMatrix mf1 = hcat(mbeta * mf, random_matrix(rng, lb1.ambient_dim(), np, eb));
        const Lattice pre = lattice_preimage(mf1, lb1);
        Lattice la1 = coin(rng, 60) ? random_sublattice(rng, pre) : pre;

        // alpha: random witness of f1 X = beta f (mod B1).
        const LinearSystem lift(hcat(mf1, lb1.basis()));
        IntMatrix malpha(mf1.cols(), la.ambient_dim());
        const IntMatrix target = mbeta * mf;
        for (std::size_t j = 0; j < target.cols(); ++j) {
            auto z = lift.solve(target.column(j), &rng);
            detail::internal_assert(z.has_value(), "gen_snake: lifting system unexpectedly unsolvable");
            malpha.set_column(j, Vector(z->begin(), z->begin() + static_cast<std::ptrdiff_t>(mf1.cols())));
        }
        la = shrink_source(la, malpha, la1);

        // Bottom row: C1 = coker f1 + E1, g1 = [I; 0].
        const Lattice le1 = random_group(rng, cfg);
        Lattice lc1 = direct_sum(coker_relations(mf1, lb1), le1);
        IntMatrix mg1 = first_summand(lb1.ambient_dim(), le1.ambient_dim());

        // Top row: C = coker f + E, g = [I; 0]; gamma = [g1 beta | R].
        Lattice le = random_group(rng, cfg);
        const IntMatrix mr = random_matrix(rng, lc1.ambient_dim(), le.ambient_dim(), eb);
        le = shrink_source(le, mr, lc1);
        Lattice lc = direct_sum(coker_relations(mf, lb), le);
        IntMatrix mg = first_summand(lb.ambient_dim(), le.ambient_dim());
        IntMatrix mgamma = hcat(mg1 * mbeta, mr);

        // Change generators of C and C1.
        const Rebasis rc = random_rebasis(rng, lc.ambient_dim());
        const Rebasis rc1 = random_rebasis(rng, lc1.ambient_dim());
        lc = rebase(lc, rc);
        lc1 = rebase(lc1, rc1);
        mg = rc.u * mg;
        mg1 = rc1.u * mg1;
        mgamma = rc1.u * mgamma * rc.u_inv;

        const FpAbGroup A(la), B(lb), C(lc), A1(la1), B1(lb1), C1(lc1);
        bool ok = true;
        for (const auto* grp : {&A, &B, &C, &A1, &B1, &C1})
            ok = ok && within_cap(*grp, cfg);
        if (!ok)
            continue;
        SnakeDiagram d{Hom(A, B, mf),       Hom(B, C, mg),         Hom(A1, B1, mf1),      Hom(B1, C1, mg1),
                       Hom(A, A1, malpha), Hom(B, B1, mbeta), Hom(C, C1, mgamma)};
        try {
            validate(d);
        } catch (const DiagramError& e) {
            throw InternalError(std::string("gen_snake: generated diagram invalid: ") + e.what());
        }
        return d;
    }
    throw GenerationExhausted("gen_snake: resample limit reached");
}

/// Random four-lemma diagram with alpha surjective and delta injective.
inline FourDiagram gen_four(const GenConfig& cfg) {
    using namespace gen_detail;
    check_config(cfg);
    Rng rng(cfg.seed);
    for (std::size_t attempt = 0; attempt < cfg.resample_limit; ++attempt) {
        const std::int64_t eb = cfg.entry_bound;
        Lattice lb = random_group(rng, cfg);
        Lattice la = random_group(rng, cfg);
        const IntMatrix mf = random_matrix(rng, lb.ambient_dim(), la.ambient_dim(), eb);
        la = shrink_source(la, mf, lb);

        Lattice lb1 = random_group(rng, cfg);
        const IntMatrix mbeta = random_matrix(rng, lb1.ambient_dim(), lb.ambient_dim(), eb);
        lb1 = enlarge_target(lb, mbeta, lb1);

        // A1 = A / K with K inside the preimage of B1's relations under beta f;
        // alpha is the projection, f1 = beta f.
        const IntMatrix mf1 = mbeta * mf;
        const Lattice pre = lattice_preimage(mf1, lb1);
        IntMatrix extra(la.ambient_dim(), 0);
        if (pre.rank() > 0)
            for (std::int64_t k = uniform_int(rng, 0, 2); k > 0; --k)
                extra = hcat(extra, pre.basis() * random_matrix(rng, pre.rank(), 1, 2));
        Lattice la1 = lattice_sum(la, Lattice::span(la.ambient_dim(), extra));
        IntMatrix malpha = IntMatrix::identity(la.ambient_dim());
        IntMatrix mf1r = mf1;

        // C = coker f + E, C1 = coker f1 + E, gamma = [[beta, R], [0, I]].
        const Lattice cok_f1 = coker_relations(mf1, lb1);
        Lattice le = random_group(rng, cfg);
        const IntMatrix mr = random_matrix(rng, lb1.ambient_dim(), le.ambient_dim(), eb);
        le = shrink_source(le, mr, cok_f1);
        Lattice lc = direct_sum(coker_relations(mf, lb), le);
        Lattice lc1 = direct_sum(cok_f1, le);
        const std::size_t nb = lb.ambient_dim(), nb1 = lb1.ambient_dim(), ne = le.ambient_dim();
        IntMatrix mg = first_summand(nb, ne);
        IntMatrix mg1 = first_summand(nb1, ne);
        IntMatrix mgamma =
            vcat(hcat(mbeta, mr), hcat(IntMatrix(ne, nb), IntMatrix::identity(ne)));

        // D = coker g + F, D1 = coker g1 + F, delta = [[gamma, S], [0, I]].
        const Lattice cok_g1 = coker_relations(mg1, lc1);
        Lattice lf = random_group(rng, cfg);
        const IntMatrix ms = random_matrix(rng, lc1.ambient_dim(), lf.ambient_dim(), eb);
        lf = shrink_source(lf, ms, cok_g1);
        const std::size_t nc = lc.ambient_dim(), nc1 = lc1.ambient_dim(), nf = lf.ambient_dim();
        Lattice ld = direct_sum(coker_relations(mg, lc), lf);
        Lattice ld1 = direct_sum(cok_g1, lf);
        IntMatrix mh = first_summand(nc, nf);
        IntMatrix mh1 = first_summand(nc1, nf);
        IntMatrix mdelta = vcat(hcat(mgamma, ms), hcat(IntMatrix(nf, nc), IntMatrix::identity(nf)));

        // Change generators of A1, C and D1.
        const Rebasis ra1 = random_rebasis(rng, la1.ambient_dim());
        la1 = rebase(la1, ra1);
        malpha = ra1.u * malpha;
        mf1r = mf1r * ra1.u_inv;
        const Rebasis rc = random_rebasis(rng, nc);
        lc = rebase(lc, rc);
        mg = rc.u * mg;
        mh = mh * rc.u_inv;
        mgamma = mgamma * rc.u_inv;
        const Rebasis rd1 = random_rebasis(rng, ld1.ambient_dim());
        ld1 = rebase(ld1, rd1);
        mh1 = rd1.u * mh1;
        mdelta = rd1.u * mdelta;

        const FpAbGroup A(la), B(lb), C(lc), D(ld), A1(la1), B1(lb1), C1(lc1), D1(ld1);
        bool ok = true;
        for (const auto* grp : {&A, &B, &C, &D, &A1, &B1, &C1, &D1})
            ok = ok && within_cap(*grp, cfg);
        if (!ok)
            continue;
        FourDiagram d{Hom(A, B, mf),        Hom(B, C, mg),        Hom(C, D, mh),         Hom(A1, B1, mf1r),
                      Hom(B1, C1, mg1),     Hom(C1, D1, mh1),     Hom(A, A1, malpha),    Hom(B, B1, mbeta),
                      Hom(C, C1, mgamma),   Hom(D, D1, mdelta)};
        try {
            validate_four(d);
        } catch (const DiagramError& e) {
            throw InternalError(std::string("gen_four: generated diagram invalid: ") + e.what());
        }
        return d;
    }
    throw GenerationExhausted("gen_four: resample limit reached");
}

/// Random composable pair alpha : A -> B, beta : B -> C.
inline std::pair<Hom, Hom> gen_ring(const GenConfig& cfg) {
    using namespace gen_detail;
    check_config(cfg);
    Rng rng(cfg.seed);
    for (std::size_t attempt = 0; attempt < cfg.resample_limit; ++attempt) {
        const Lattice lc = random_group(rng, cfg);
        Lattice lb = random_group(rng, cfg);
        Lattice la = random_group(rng, cfg);
        const IntMatrix mbeta = random_matrix(rng, lc.ambient_dim(), lb.ambient_dim(), cfg.entry_bound);
        lb = shrink_source(lb, mbeta, lc);
        const IntMatrix malpha = random_matrix(rng, lb.ambient_dim(), la.ambient_dim(), cfg.entry_bound);
        la = shrink_source(la, malpha, lb);
        const FpAbGroup A(la), B(lb), C(lc);
        if (!within_cap(A, cfg) || !within_cap(B, cfg) || !within_cap(C, cfg))
            continue;
        return {Hom(A, B, malpha), Hom(B, C, mbeta)};
    }
    throw GenerationExhausted("gen_ring: resample limit reached");
}

} // namespace snakelemma
