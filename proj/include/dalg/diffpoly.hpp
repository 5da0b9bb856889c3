// Differential-polynomial operations on top of Poly.
//
// A "differential polynomial" here is a Poly whose context declares function
// names; its differential variables are the jet variables y^(j) of those
// functions.  The total derivative δ acts by δ(x)=1, δ(y^(j))=y^(j+1),
// δ(parameter)=0.  Degree bookkeeping counts differential variables only
// (not x, not parameters) — the convention used for all reported degrees.
#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "parser.hpp"
#include "poly.hpp"

namespace dalg {

inline bool isDiffVar(const CtxPtr& ctx, int v) { return ctx->info(v).kind == VarKind::Diff; }

// Highest derivative order of function fn occurring in p; -1 if absent.
inline int orderOf(const Poly& p, int fn) {
    int n = -1;
    for (const auto& t : p.terms())
        for (const auto& pr : t.m.e) {
            const VarInfo& vi = p.ctx()->info(pr.first);
            if (vi.kind == VarKind::Diff && vi.fn == fn) n = std::max(n, (int)vi.deriv);
        }
    return n;
}

// Highest derivative order over all functions; -1 if p has no differential
// variable at all.
inline int orderOf(const Poly& p) {
    int n = -1;
    for (const auto& t : p.terms())
        for (const auto& pr : t.m.e) {
            const VarInfo& vi = p.ctx()->info(pr.first);
            if (vi.kind == VarKind::Diff) n = std::max(n, (int)vi.deriv);
        }
    return n;
}

// Total degree counting differential variables only.
inline int diffDegree(const Poly& p) {
    return p.degreeWhere([&](int v) { return isDiffVar(p.ctx(), v); });
}

inline Poly totalDerivative(const Poly& p) {
    CtxPtr ctx = p.ctx();
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        for (const auto& pr : t.m.e) {
            const VarInfo& vi = ctx->info(pr.first);
            if (vi.kind == VarKind::Param || vi.kind == VarKind::Aux) continue;
            Rat c = t.c * Rat(pr.second);
            Monomial m = t.m.div(Monomial::var(pr.first, 1));
            if (vi.kind == VarKind::Diff)
                m = m.mul(Monomial::var(ctx->diffVar(vi.fn, vi.deriv + 1), 1));
            // Indep: δ(x) = 1, no extra factor.
            out.push_back({std::move(m), std::move(c)});
        }
    }
    return Poly::fromTerms(ctx, std::move(out));
}

inline Poly totalDerivative(const Poly& p, int times) {
    Poly r = p;
    for (int i = 0; i < times; ++i) r = totalDerivative(r);
    return r;
}

// Linear in the highest-order term: the top derivative of fn appears with
// degree exactly 1.
inline bool isLho(const Poly& p, int fn) {
    int n = orderOf(p, fn);
    if (n < 1) return false;
    return p.maxExp(p.ctx()->diffVar(fn, n)) == 1;
}

// p if l.h.o., otherwise δ(p) (always l.h.o. when p genuinely involves its
// top derivative); the flag says whether a differentiation happened.
inline std::pair<Poly, bool> makeLho(const Poly& p, int fn) {
    if (isLho(p, fn)) return {p, false};
    int n = orderOf(p, fn);
    if (n < 0) throw std::domain_error("makeLho: polynomial does not involve the function");
    // order 0 (algebraic relation) also lands here: one differentiation makes
    // the first derivative appear linearly.
    return {totalDerivative(p), true};
}

// For l.h.o. p of order n in fn, write p = A·y^(n) − B with A, B free of
// y^(n); the top derivative solves as y^(n) = B/A.
struct SolvedHighest {
    Poly A, B;
    int fn, n;
    RatExpr expr() const { return RatExpr{B, A}; }
};

inline SolvedHighest solveHighest(const Poly& p, int fn) {
    int n = orderOf(p, fn);
    if (n < 1 || !isLho(p, fn)) throw std::domain_error("solveHighest: input is not l.h.o.");
    int v = p.ctx()->diffVar(fn, n);
    Poly A = p.coeffOf(v, 1);
    Poly B = A * Poly::variable(p.ctx(), v) - p;
    return {std::move(A), std::move(B), fn, n};
}

// Simultaneous substitution of ring variables by rational expressions;
// unbound variables map to themselves.  Exact; the denominator is a product
// of binding denominators.
inline RatExpr substituteAll(const Poly& p, const std::map<int, RatExpr>& bindings) {
    RatExpr r = RatExpr::of(Poly(p.ctx()));
    for (const auto& t : p.terms()) {
        RatExpr term = RatExpr::of(Poly::constant(p.ctx(), t.c));
        for (const auto& pr : t.m.e) {
            auto it = bindings.find(pr.first);
            RatExpr base = it != bindings.end()
                               ? it->second
                               : RatExpr::of(Poly::variable(p.ctx(), pr.first));
            term = term * base.pow((unsigned)pr.second);
        }
        r = r + term;
    }
    return r;
}

// Primitive numerator of a rational expression.
inline Poly clearDenominators(const RatExpr& r) {
    if (r.num.isZero()) return r.num;
    return r.num.primitivePart();
}

// Differential (Ritt) pseudo-reduction of r modulo q and its prolongations,
// with respect to the jets of fn.  Jets above the rewritable base are
// substituted via the chain built from q itself (when q is linear in its
// leader) or from δq (which is always linear in its top derivative, with the
// separant as coefficient); an equal-order tail is finished by an algebraic
// pseudo-division by q in its leader.  The result is 0 iff a product of
// powers of the initial/separant of q times r lies in the ideal generated by
// q and the prolongations used — i.e. r reduces to 0 modulo the differential
// ideal of q along this reduction path.
inline Poly diffReduce(Poly r, const Poly& q, int fn) {
    CtxPtr ctx = r.ctx();
    int n = orderOf(q, fn);
    if (n < 0) throw std::domain_error("diffReduce: divisor does not involve the function");
    int vLead = ctx->diffVar(fn, n);
    int dLead = q.maxExp(vLead);

    // First jet index replaceable by direct substitution.
    bool direct = (n >= 1 && dLead == 1);
    int base = direct ? n : n + 1;
    int topOrd = orderOf(r, fn);
    if (topOrd >= base) {
        SolvedHighest sh = solveHighest(direct ? q : totalDerivative(q), fn);
        // R[k] = rational expression for y^(base+k), with order < base
        // everywhere: R[0] = B/A; R[k+1] = δ(R[k]) with the reappearing
        // y^(base) re-substituted.
        std::vector<RatExpr> R;
        R.push_back(RatExpr{sh.B, sh.A});
        int vTop = ctx->diffVar(fn, base);
        for (int k = 1; k <= topOrd - base; ++k) {
            const RatExpr& prev = R.back();
            // δ(num/den) = (δ(num)·den − num·δ(den)) / den².
            Poly num = totalDerivative(prev.num) * prev.den - prev.num * totalDerivative(prev.den);
            Poly den = prev.den * prev.den;
            // re-substitute y^(base) -> B/A (δ can push A's top order back up
            // to base, so both parts are cleared over a common power of A).
            int pw = 0;
            Poly numS = num.substVarRational(vTop, sh.B, sh.A, &pw);
            int pw2 = 0;
            Poly denS = den.substVarRational(vTop, sh.B, sh.A, &pw2);
            if (pw2 > pw)
                numS = numS * sh.A.pow((unsigned)(pw2 - pw));
            else if (pw > pw2)
                denS = denS * sh.A.pow((unsigned)(pw - pw2));
            R.push_back(RatExpr{numS, denS});
        }
        // Replace from the top derivative down, clearing denominators each step.
        for (int j = topOrd; j >= base; --j) {
            const RatExpr& rep = R[j - base];
            int v = ctx->diffVar(fn, j);
            int pw = 0;
            r = r.substVarRational(v, rep.num, rep.den, &pw);
            if (r.isZero()) return r;
        }
    }
    // Equal-order algebraic step: pseudo-divide by q in its leader.  (For a
    // divisor handled by direct substitution this is already vacuous.)
    if (!direct && !r.isZero())
        r = prem(r, q, vLead);
    return r;
}

// ADE satisfied by f' when p is an ADE for f: the resultant of p and δ(p)
// with respect to the order-0 variable, with every y^(j) then shifted down
// to y^(j−1).  Requires p to involve y itself (not only derivatives) and the
// resultant to be nonzero (p, δp coprime as polynomials in y).
inline Poly derivativeAde(const Poly& p, int fn) {
    CtxPtr ctx = p.ctx();
    int v0 = ctx->diffVar(fn, 0);
    if (!p.involves(v0))
        throw std::domain_error("derivativeAde: input must involve the undifferentiated function");
    Poly dp = totalDerivative(p);
    Poly res = resultantVar(p, dp, v0);
    if (res.isZero())
        throw std::domain_error("derivativeAde: resultant vanished (input not squarefree/coprime with its derivative)");
    // shift y^(j) -> y^(j-1)
    Poly shifted = res.remapTo(ctx, [&](int v) {
        const VarInfo& vi = ctx->info(v);
        if (vi.kind == VarKind::Diff && vi.fn == fn) {
            if (vi.deriv == 0)
                throw std::domain_error("derivativeAde: internal shift error");
            return ctx->diffVar(fn, vi.deriv - 1);
        }
        return v;
    });
    return shifted.primitivePart();
}

// ADE satisfied by every antiderivative of f: shift y^(j) -> y^(j+1).
inline Poly antiderivativeAde(const Poly& p, int fn) {
    CtxPtr ctx = p.ctx();
    Poly shifted = p.remapTo(ctx, [&](int v) {
        const VarInfo& vi = ctx->info(v);
        if (vi.kind == VarKind::Diff && vi.fn == fn) return ctx->diffVar(fn, vi.deriv + 1);
        return v;
    });
    return shifted.primitivePart();
}

}  // namespace dalg
