// Method I: ADEs for arithmetic combinations and compositions via truncated
// differential ideals.
//
// For a relation w = α(y, z) and input ADEs p(y) = 0, q(z) = 0, the level-j
// truncation adjoins the first j total derivatives of p, q, and the relation
// polynomial, then eliminates the y- and z-jets.  The loop over j stops at
// the first nontrivial elimination ideal; its minimal element is the answer.
#pragma once

#include <array>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffpoly.hpp"
#include "groebner.hpp"
#include "parser.hpp"

namespace dalg {

struct MethodOptions {
    int maxJ = 6;
    bool continuePastFirst = false;
    // After a model reduction, re-eliminate with the top output jets moved
    // into the elimination block, descending while a lower-order relation
    // exists in the same prolonged system (used by the unary operation).
    bool minimizeOrder = false;
    GBOptions gb{};
};

struct EliminationOutcome {
    Poly ade;                  // selected minimal element, primitive
    int level = -1;            // truncation level j at which it was found
    std::vector<Poly> subset;  // the full elimination subset at that level
    GBStats stats;             // Gröbner stats of the successful run
    Poly saturation;           // saturated product (zero polynomial if none)
};

class NoAdeFound : public std::runtime_error {
public:
    GBStats stats;
    explicit NoAdeFound(const std::string& what, GBStats s = {})
        : std::runtime_error(what), stats(std::move(s)) {}
};

// differential degree of the initial: the coefficient of the highest power of
// the top derivative of fn.  0 means the candidate is in solved form up to a
// constant factor, so it constrains the function on every solution branch.
inline int initialDegree(const Poly& c, int fn) {
    int ord = orderOf(c, fn);
    if (ord < 0) return 0;
    int vLead = c.ctx()->diffVar(fn, ord);
    int ldeg = c.maxExp(vLead);
    std::vector<Term> ts;
    for (const auto& t : c.terms()) {
        int e = 0;
        for (const auto& pr : t.m.e)
            if (pr.first == vLead) e = pr.second;
        if (e == ldeg) ts.push_back({t.m.div(Monomial::var(vLead, ldeg)), t.c});
    }
    return diffDegree(Poly::fromTerms(c.ctx(), std::move(ts)));
}

// smallest (order, degree of the initial, differential degree), ties broken
// by canonical comparison; primitive output.  Order comes first; among equal
// orders the candidate closest to solved form wins, and only then the total
// differential degree.
inline Poly selectMinimalAde(const std::vector<Poly>& cands, int fn) {
    if (cands.empty()) throw NoAdeFound("selectMinimalAde: empty candidate set");
    const Poly* best = nullptr;
    std::array<int, 3> bestKey{};
    for (const Poly& c : cands) {
        std::array<int, 3> key{orderOf(c, fn), initialDegree(c, fn), diffDegree(c)};
        if (!best || key < bestKey || (key == bestKey && cmpPolyCanonical(c, *best) < 0)) {
            best = &c;
            bestKey = key;
        }
    }
    return best->primitivePart();
}

namespace m1detail {

// candidate polynomials that survive elimination: free of all eliminated
// variables AND involving the output function.  A nonzero candidate free of
// the output function means the inputs force a relation on x/parameters
// alone, i.e. they are inconsistent.
inline std::vector<Poly> outputCandidates(const std::vector<Poly>& basis,
                                          const std::vector<int>& elimVars, int wFn) {
    std::vector<Poly> keep;
    for (const Poly& g : elimSubset(basis, elimVars)) {
        const Context& C = *g.ctx();
        bool hasW = g.involvesWhere([&](int v) {
            const VarInfo& vi = C.info(v);
            return vi.kind == VarKind::Diff && vi.fn == wFn;
        });
        if (hasW) keep.push_back(g);
        else if (!g.isZero() && !g.isConstant())
            throw NoAdeFound("inconsistent inputs: elimination produced a relation '" +
                             g.str() + "' free of the output function");
        else if (g.isConstant() && !g.isZero())
            throw NoAdeFound("inconsistent inputs: elimination ideal is the whole ring");
    }
    return keep;
}

// chain-rule derivative used by compositions w = f(g): jets of the outer
// function differentiate to the next jet times the inner function's first
// derivative, jets of everything else differentiate normally.
inline Poly chainRuleDerivative(const Poly& s, int outerFn, int innerFn) {
    CtxPtr ctx = s.ctx();
    Poly acc(ctx);
    Poly ider = Poly::variable(ctx, ctx->diffVar(innerFn, 1));
    std::vector<int> vars;
    for (const auto& t : s.terms())
        for (auto& [v, e] : t.m.e)
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    for (int v : vars) {
        const VarInfo& vi = ctx->info(v);
        if (vi.kind != VarKind::Diff) continue;
        Poly next = Poly::variable(ctx, ctx->diffVar(vi.fn, vi.deriv + 1));
        Poly contrib = s.partial(v) * next;
        if (vi.fn == outerFn) contrib = contrib * ider;
        acc = acc + contrib;
    }
    return acc;
}

inline std::vector<int> collectElimVars(const CtxPtr& ctx, const std::vector<Poly>& gens,
                                        const std::vector<int>& elimFns, bool withAux) {
    std::vector<char> seen((std::size_t)ctx->varCount(), 0);
    std::vector<int> out;
    for (const Poly& g : gens)
        for (const auto& t : g.terms())
            for (auto& [v, e] : t.m.e) {
                if (seen[(std::size_t)v]) continue;
                seen[(std::size_t)v] = 1;
                const VarInfo& vi = ctx->info(v);
                bool elim = false;
                if (vi.kind == VarKind::Aux && withAux) elim = true;
                if (vi.kind == VarKind::Diff)
                    for (int f : elimFns)
                        if (vi.fn == f) elim = true;
                if (elim) out.push_back(v);
            }
    return out;
}

}  // namespace m1detail

// ADE for w = rhs(y, z, x) given p(y) = 0 and q(z) = 0.  rhs may be rational;
// its denominator is saturated at every truncation level.
inline EliminationOutcome arithMethodI(const Poly& p, int fnY, const Poly& q, int fnZ,
                                       const RatExpr& rhsIn, int wFn,
                                       const MethodOptions& opts = {}) {
    CtxPtr ctx = p.ctx();
    RatExpr rhs = rhsIn.normalized();
    Poly w0 = Poly::variable(ctx, ctx->diffVar(wFn, 0));
    Poly R = (w0 * rhs.den - rhs.num).primitivePart();
    bool sat = !rhs.den.isConstant();
    Poly D = sat ? rhs.den.primitivePart() : Poly(ctx);

    std::vector<Poly> dp{p.primitivePart()}, dq{q.primitivePart()}, dR{R};
    std::optional<EliminationOutcome> best;
    for (int j = 0; j <= opts.maxJ; ++j) {
        if (j > 0) {
            dp.push_back(totalDerivative(dp.back()));
            dq.push_back(totalDerivative(dq.back()));
            dR.push_back(totalDerivative(dR.back()));
        }
        std::vector<Poly> gens;
        gens.insert(gens.end(), dp.begin(), dp.end());
        gens.insert(gens.end(), dq.begin(), dq.end());
        gens.insert(gens.end(), dR.begin(), dR.end());
        if (sat) {
            Poly t = Poly::variable(ctx, ctx->auxVar(0));
            gens.push_back(t * D - Poly::constant(ctx, Rat(1)));
        }
        std::vector<int> elimVars = m1detail::collectElimVars(ctx, gens, {fnY, fnZ}, sat);
        GBResult gb = groebnerEliminate(ctx, gens, elimVars, opts.gb);
        std::vector<Poly> cands = m1detail::outputCandidates(gb.basis, elimVars, wFn);
        if (cands.empty()) continue;
        EliminationOutcome out;
        out.ade = selectMinimalAde(cands, wFn);
        out.level = j;
        out.subset = std::move(cands);
        out.stats = gb.stats;
        out.saturation = D;
        if (!opts.continuePastFirst) return out;
        if (!best || orderOf(out.ade, wFn) < orderOf(best->ade, wFn) ||
            (orderOf(out.ade, wFn) == orderOf(best->ade, wFn) &&
             diffDegree(out.ade) < diffDegree(best->ade)))
            best = std::move(out);
    }
    if (best) return *best;
    throw NoAdeFound("no ADE found up to truncation level " + std::to_string(opts.maxJ) +
                     "; rerun with a larger --max-j");
}

// ADE for w = f(g(x)) given the outer ADE p(y) = 0 (order n) and the inner
// ADE q(z) = 0 (order m).  The level-j ideal uses p differentiated in its own
// ring with x renamed to z afterwards, q and its derivatives, and the chain
// rule relations w^(i) = S_i.
inline EliminationOutcome composeMethodI(const Poly& p, int fnY, const Poly& q, int fnZ,
                                         int wFn, const MethodOptions& opts = {}) {
    CtxPtr ctx = p.ctx();
    int n = orderOf(p, fnY);
    int m = orderOf(q, fnZ);
    if (n < 0 || m < 0)
        throw std::domain_error("composeMethodI: each ADE must involve its function");
    int xVar = ctx->indepVar();
    Poly z0 = Poly::variable(ctx, ctx->diffVar(fnZ, 0));
    std::vector<Poly> Hs{p.primitivePart().substVarPoly(xVar, z0)};
    std::vector<Poly> dq{q.primitivePart()};
    std::vector<Poly> S{Poly::variable(ctx, ctx->diffVar(fnY, 0))};
    std::vector<Poly> dpOwn{p.primitivePart()};  // p differentiated in its own ring

    std::optional<EliminationOutcome> best;
    int sTop = std::min(m, n);
    for (int j = 0; j <= opts.maxJ; ++j) {
        if (j > 0) {
            dpOwn.push_back(totalDerivative(dpOwn.back()));
            Hs.push_back(dpOwn.back().substVarPoly(xVar, z0));
            dq.push_back(totalDerivative(dq.back()));
        }
        while ((int)S.size() <= j + sTop)
            S.push_back(m1detail::chainRuleDerivative(S.back(), fnY, fnZ));
        std::vector<Poly> gens = Hs;
        gens.insert(gens.end(), dq.begin(), dq.end());
        for (int i = 0; i <= j + sTop; ++i) {
            Poly wi = Poly::variable(ctx, ctx->diffVar(wFn, i));
            gens.push_back(wi - S[(std::size_t)i]);
        }
        std::vector<int> elimVars = m1detail::collectElimVars(ctx, gens, {fnY, fnZ}, false);
        GBResult gb = groebnerEliminate(ctx, gens, elimVars, opts.gb);
        std::vector<Poly> cands = m1detail::outputCandidates(gb.basis, elimVars, wFn);
        if (cands.empty()) continue;
        EliminationOutcome out;
        out.ade = selectMinimalAde(cands, wFn);
        out.level = j;
        out.subset = std::move(cands);
        out.stats = gb.stats;
        out.saturation = Poly(ctx);
        if (!opts.continuePastFirst) return out;
        if (!best || orderOf(out.ade, wFn) < orderOf(best->ade, wFn) ||
            (orderOf(out.ade, wFn) == orderOf(best->ade, wFn) &&
             diffDegree(out.ade) < diffDegree(best->ade)))
            best = std::move(out);
    }
    if (best) return *best;
    throw NoAdeFound("no composition ADE found up to truncation level " +
                     std::to_string(opts.maxJ) + "; rerun with a larger --max-j");
}

}  // namespace dalg
