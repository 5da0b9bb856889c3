// Method II: ADEs via reduction of rational dynamical models.
//
// Every input ADE is rewritten as a chain of first-order equations
//   state_k' = state_{k+1},  state_top' = rational(states, x, params),
// the chains plus an output relation form a dynamical model, and the model
// is reduced to a single ADE for the output: prolong the model equations,
// saturate at the common denominator, eliminate the state jets, and pick the
// minimal surviving relation.  The order of the result never exceeds the
// number of states.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diffpoly.hpp"
#include "method1.hpp"

namespace dalg {

// ---------------------------------------------------------------------------
// first-order chains

// A single ADE p(x, y, ..., y^(n)) = 0 as a first-order chain for states
// representing y^(0), ..., y^(len-1).  When p had to be differentiated to
// isolate its top derivative (the non-l.h.o. and order-0 cases), the original
// relation is kept as an algebraic constraint and dCount records the extra
// differentiation (the order bound grows by it).
struct Chain {
    int fn = -1;   // function index in the source context
    int len = 0;   // number of states
    RatExpr top;   // y^(len) as a rational function of y^(0..len-1), x, params
    std::vector<Poly> constraints;      // source-context, in y^(0..len-1), x, params
    std::vector<Poly> extraSaturation;  // factors the constraints were cleared by
    int dCount = 0;                     // 1 if the input was differentiated
};

inline Chain buildChain(const Poly& p, int fn) {
    auto [lho, differentiated] = makeLho(p, fn);
    SolvedHighest sh = solveHighest(lho, fn);
    Chain c;
    c.fn = fn;
    c.len = sh.n;
    c.top = sh.expr().reduced();
    c.dCount = differentiated ? 1 : 0;
    if (differentiated) c.constraints.push_back(p.primitivePart());
    return c;
}

// Rational expressions for the jets y^(len), ..., y^(upTo) of a chain, in the
// source context: index k holds y^(len+k), obtained by repeated total
// derivative of the top relation with the reappearing y^(len) re-substituted.
inline std::vector<RatExpr> chainReplacements(const Chain& c, const CtxPtr& ctx, int upTo) {
    std::vector<RatExpr> R;
    if (upTo < c.len) return R;
    R.push_back(c.top);
    int vTop = ctx->diffVar(c.fn, c.len);
    for (int j = c.len + 1; j <= upTo; ++j) {
        const RatExpr& prev = R.back();
        Poly num = totalDerivative(prev.num) * prev.den - prev.num * totalDerivative(prev.den);
        Poly den = prev.den * prev.den;
        std::map<int, RatExpr> bind{{vTop, R.front()}};
        R.push_back((substituteAll(num, bind) / substituteAll(den, bind)).reduced());
    }
    return R;
}

// Substitute every jet at or above each chain's length by its chain
// replacement, leaving an expression in the chain states (plus x, params).
inline RatExpr reduceByChains(const RatExpr& r, const std::vector<Chain>& chains,
                              const CtxPtr& ctx) {
    std::map<int, RatExpr> bind;
    for (const Chain& c : chains) {
        int hi = std::max(orderOf(r.num, c.fn), orderOf(r.den, c.fn));
        if (hi < c.len) continue;
        std::vector<RatExpr> R = chainReplacements(c, ctx, hi);
        for (int j = c.len; j <= hi; ++j)
            bind.emplace(ctx->diffVar(c.fn, j), R[(std::size_t)(j - c.len)]);
    }
    if (bind.empty()) return r;
    return (substituteAll(r.num, bind) / substituteAll(r.den, bind)).reduced();
}

// ---------------------------------------------------------------------------
// dynamical models

// First-order rational dynamical model: states u with u_i' = rhs_i(u, x),
// an observed output, optional algebraic constraints among the states, and
// optional extra factors known to be nonzero along solutions.
struct DynModel {
    CtxPtr ctx;                  // fns = state names and the output name
    std::vector<int> stateFns;   // function index of each state
    std::vector<RatExpr> rhs;    // rhs[i] = derivative of state stateFns[i]
    RatExpr output;
    std::vector<Poly> constraints;
    std::vector<Poly> extraSaturation;
    int outFn = -1;
    int nStates() const { return (int)stateFns.size(); }
};

// Well-formedness: rhs/output/constraints mention only order-0 jets of the
// declared states (never the output function), and the state list is sane.
inline void validateModel(const DynModel& m) {
    const CtxPtr& ctx = m.ctx;
    if (m.stateFns.empty()) throw std::domain_error("model: at least one state is required");
    if (m.stateFns.size() != m.rhs.size())
        throw std::domain_error("model: one right-hand side per state is required");
    std::vector<char> isState((std::size_t)ctx->fns().size(), 0);
    for (int f : m.stateFns) {
        if (f < 0 || f >= (int)ctx->fns().size() || f == m.outFn)
            throw std::domain_error("model: bad state function index");
        if (isState[(std::size_t)f]) throw std::domain_error("model: duplicate state");
        isState[(std::size_t)f] = 1;
    }
    if (m.outFn < 0 || m.outFn >= (int)ctx->fns().size())
        throw std::domain_error("model: bad output function index");
    auto checkPoly = [&](const Poly& p, const char* where) {
        for (const auto& t : p.terms())
            for (const auto& pr : t.m.e) {
                const VarInfo& vi = ctx->info(pr.first);
                if (vi.kind != VarKind::Diff) continue;
                if (vi.fn == m.outFn)
                    throw std::domain_error(std::string("model: the output function may not "
                                                        "appear in ") +
                                            where);
                if (!isState[(std::size_t)vi.fn])
                    throw std::domain_error(std::string("model: '") + ctx->fns()[(std::size_t)vi.fn] +
                                            "' is not a state but appears in " + where);
                if (vi.deriv != 0)
                    throw std::domain_error(std::string("model: derivatives of states may not "
                                                        "appear in ") +
                                            where + " (use an extra state instead)");
            }
    };
    for (const RatExpr& r : m.rhs) {
        checkPoly(r.num, "a right-hand side");
        checkPoly(r.den, "a right-hand side");
    }
    checkPoly(m.output.num, "the output");
    checkPoly(m.output.den, "the output");
    for (const Poly& c : m.constraints) checkPoly(c, "a constraint");
}

// Reduce a dynamical model to a single minimal ADE for its output.
//
// The output equation and the constraints are prolonged to order n by the Lie
// derivative along the vector field (d/dx + sum_i rhs_i d/du_i), cleared of
// denominators, the product of all distinct denominators is saturated through
// an auxiliary inverse variable, and the order-0 state variables are
// eliminated.  Prolonging by the Lie derivative instead of the formal total
// derivative substitutes the state equations away up front: the higher state
// jets are defined by equations linear in their leader, so on the locus where
// the saturated denominators are invertible the contracted ideal is the same,
// while the ring the basis runs in stays as small as possible.  With the
// saturation variable present, clearing each equation by its own denominator
// generates the same ideal as clearing everything by the common denominator
// (a known nonzero factor on a generator is absorbed by the inverse), so the
// cheaper per-equation form is used.
inline EliminationOutcome sysToMinDiffPoly(const DynModel& model, const MethodOptions& opts = {}) {
    validateModel(model);
    const CtxPtr& ctx = model.ctx;
    const int n = model.nStates();
    const int wFn = model.outFn;

    // common saturation product: distinct primitive non-constant denominators
    // plus any declared extra factors
    std::vector<Poly> dens;
    auto noteDen = [&](const Poly& d) {
        if (d.isConstant()) return;
        Poly pd = d.primitivePart();
        for (const Poly& e : dens)
            if (e == pd) return;
        dens.push_back(pd);
    };
    for (const RatExpr& r : model.rhs) noteDen(r.den);
    noteDen(model.output.den);
    for (const Poly& e : model.extraSaturation) noteDen(e);
    Poly sat = Poly::constant(ctx, Rat(1));
    for (const Poly& d : dens) sat = sat * d;
    const bool doSat = !sat.isConstant();

    auto clearEq = [](const Poly& lhs, const RatExpr& r) {
        return (lhs * r.den - r.num).primitivePart();
    };

    // Lie derivative of a polynomial / rational expression in (x, params,
    // order-0 states).  Denominators only ever pick up factors that are
    // already in the saturation product.
    auto lieDerivPoly = [&](const Poly& p) -> RatExpr {
        RatExpr acc = RatExpr::of(p.partial(ctx->indepVar()));
        for (int i = 0; i < n; ++i) {
            Poly pi = p.partial(ctx->diffVar(model.stateFns[(std::size_t)i], 0));
            if (pi.isZero()) continue;
            acc = acc + RatExpr::of(pi) * model.rhs[(std::size_t)i];
        }
        return acc.reduced();
    };
    auto lieDeriv = [&](const RatExpr& r) -> RatExpr {
        RatExpr dn = lieDerivPoly(r.num);
        if (r.denIsConstant()) return (dn / RatExpr::of(r.den)).reduced();
        RatExpr dd = lieDerivPoly(r.den);
        // (num/den)' = (num' den - num den') / den^2
        RatExpr res{dn.num * r.den * dd.den - r.num * dd.num * dn.den,
                    dn.den * dd.den * r.den * r.den};
        return res.reduced();
    };

    std::vector<Poly> gens;
    {
        RatExpr cur = model.output;
        for (int k = 0; k <= n; ++k) {
            if (k > 0) cur = lieDeriv(cur);
            gens.push_back(clearEq(Poly::variable(ctx, ctx->diffVar(wFn, k)), cur));
        }
    }
    for (const Poly& g : model.constraints) {
        RatExpr cur = RatExpr::of(g.primitivePart());
        for (int k = 0; k <= n; ++k) {
            if (k > 0) cur = lieDeriv(cur);
            gens.push_back(clearDenominators(cur));
        }
    }
    if (doSat) {
        Poly t = Poly::variable(ctx, ctx->auxVar(0));
        gens.push_back(t * sat - Poly::constant(ctx, Rat(1)));
    }

    std::vector<int> elimVars = m1detail::collectElimVars(ctx, gens, model.stateFns, doSat);
    GBResult gb = groebnerEliminate(ctx, gens, elimVars, opts.gb);
    std::vector<Poly> cands = m1detail::outputCandidates(gb.basis, elimVars, wFn);

    EliminationOutcome out;
    out.ade = selectMinimalAde(cands, wFn);
    out.level = n;
    out.subset = std::move(cands);
    out.stats = gb.stats;
    out.saturation = doSat ? sat : Poly(ctx);

    // Optional descent to a lower-order relation: re-eliminate with the top
    // output jets moved into the elimination block, repeating while the
    // contracted ideal stays nonzero.  Every pass is itself a block
    // elimination over the same prolonged system, so any result is still a
    // member of the level-n ideal; a resource-capped pass simply keeps the
    // best relation found so far.
    if (opts.minimizeOrder) {
        int best = orderOf(out.ade, wFn);
        while (best > 0) {
            std::vector<int> elim2 = elimVars;
            for (int j = best; j <= n; ++j)
                elim2.push_back(ctx->diffVar(wFn, j));
            std::vector<Poly> c2;
            try {
                GBResult gb2 = groebnerEliminate(ctx, gb.basis, elim2, opts.gb);
                out.stats.sPolys += gb2.stats.sPolys;
                out.stats.reductions += gb2.stats.reductions;
                out.stats.pairsDropped += gb2.stats.pairsDropped;
                c2 = m1detail::outputCandidates(gb2.basis, elim2, wFn);
            } catch (const GBLimitExceeded&) {
                break;
            }
            if (c2.empty()) break;
            out.ade = selectMinimalAde(c2, wFn);
            out.subset.insert(out.subset.end(), c2.begin(), c2.end());
            best = orderOf(out.ade, wFn);
        }
    }

    int got = orderOf(out.ade, wFn);
    if (got > n)
        throw std::logic_error("model reduction returned order " + std::to_string(got) +
                               ", above the state count " + std::to_string(n));
    return out;
}

// ---------------------------------------------------------------------------
// building models from chains

// Combine per-input chains and an output expression (source context, jets
// already reduced below each chain's length) into a model over a fresh
// context with one numbered state per chain slot plus the output function.
inline DynModel modelFromChains(const CtxPtr& src, const std::vector<Chain>& chains,
                                const RatExpr& outExpr, const std::string& outName) {
    int total = 0;
    for (const Chain& c : chains) total += c.len;

    // numbered state names, avoiding the output/parameter/independent names
    std::string prefix = "u";
    for (const char* cand : {"u", "v", "s", "st"}) {
        bool clash = false;
        for (int i = 1; i <= total && !clash; ++i) {
            std::string nm = cand + std::to_string(i);
            if (nm == outName || nm == src->indep()) clash = true;
            for (const auto& p : src->params())
                if (nm == p) clash = true;
        }
        if (!clash) {
            prefix = cand;
            break;
        }
    }
    std::vector<std::string> names;
    for (int i = 1; i <= total; ++i) names.push_back(prefix + std::to_string(i));
    names.push_back(outName);
    CtxPtr mctx = Context::make(names, src->indep(), src->params());

    std::map<int, int> vmap;
    vmap[src->indepVar()] = mctx->indepVar();
    for (std::size_t k = 0; k < src->params().size(); ++k)
        vmap[src->paramVar((int)k)] = mctx->paramVar((int)k);
    int off = 0;
    for (const Chain& c : chains) {
        for (int k = 0; k < c.len; ++k) vmap[src->diffVar(c.fn, k)] = mctx->diffVar(off + k, 0);
        off += c.len;
    }
    auto remap = [&](const Poly& p) {
        return p.remapTo(mctx, [&](int v) {
            auto it = vmap.find(v);
            if (it == vmap.end())
                throw std::domain_error("model construction: variable " + src->varName(v) +
                                        " has no state (is it below the chain length?)");
            return it->second;
        });
    };
    auto remapR = [&](const RatExpr& r) { return RatExpr{remap(r.num), remap(r.den)}; };

    DynModel m;
    m.ctx = mctx;
    m.outFn = total;
    off = 0;
    for (const Chain& c : chains) {
        for (int k = 0; k + 1 < c.len; ++k) {
            m.stateFns.push_back(off + k);
            m.rhs.push_back(RatExpr::of(Poly::variable(mctx, mctx->diffVar(off + k + 1, 0))));
        }
        m.stateFns.push_back(off + c.len - 1);
        m.rhs.push_back(remapR(c.top));
        for (const Poly& g : c.constraints) m.constraints.push_back(remap(g));
        for (const Poly& e : c.extraSaturation) m.extraSaturation.push_back(remap(e));
        off += c.len;
    }
    m.output = remapR(outExpr);
    return m;
}

// ---------------------------------------------------------------------------
// the model-reduction entry points

namespace m2detail {

// The reduction result lives in the model ring; its candidates involve only
// output jets, the independent variable, and parameters, so they transport
// verbatim into the caller's ring.
inline void remapOutcome(EliminationOutcome& out, const CtxPtr& mctx, int mOutFn,
                         const CtxPtr& src, int srcFn) {
    auto back = [&](const Poly& g) {
        return g.remapTo(src, [&](int v) {
            const VarInfo& vi = mctx->info(v);
            switch (vi.kind) {
                case VarKind::Diff:
                    if (vi.fn != mOutFn)
                        throw std::logic_error("remapOutcome: state variable survived");
                    return src->diffVar(srcFn, vi.deriv);
                case VarKind::Indep: return src->indepVar();
                case VarKind::Param: return src->paramVar(vi.fn);
                case VarKind::Aux: break;
            }
            throw std::logic_error("remapOutcome: unexpected variable kind");
        });
    };
    out.ade = back(out.ade);
    for (Poly& g : out.subset) g = back(g);
}

}  // namespace m2detail

// ADE for w = rel(f_1, ..., f_k, x) from input ADEs p_i(f_i) = 0: one chain
// per input, one joint model, one reduction.  The resulting order is at most
// the sum of the input orders plus the chain differentiations.
inline EliminationOutcome combineMethodII(const std::vector<Poly>& ps, const std::vector<int>& fns,
                                          const RatExpr& rel, int wFn,
                                          const MethodOptions& opts = {}) {
    if (ps.empty() || ps.size() != fns.size())
        throw std::domain_error("combineMethodII: one ADE per function is required");
    CtxPtr ctx = ps[0].ctx();
    std::vector<Chain> chains;
    chains.reserve(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) chains.push_back(buildChain(ps[i], fns[i]));
    RatExpr out = reduceByChains(rel, chains, ctx);
    DynModel m = modelFromChains(ctx, chains, out, ctx->fns().at((std::size_t)wFn));
    EliminationOutcome res = sysToMinDiffPoly(m, opts);
    m2detail::remapOutcome(res, m.ctx, m.outFn, ctx, wFn);
    return res;
}

inline EliminationOutcome arithMethodII(const Poly& p, int fnY, const Poly& q, int fnZ,
                                        const RatExpr& rel, int wFn,
                                        const MethodOptions& opts = {}) {
    return combineMethodII({p, q}, {fnY, fnZ}, rel, wFn, opts);
}

// ADE for w = rel(f, x) from a single input ADE.
// Unary rational operation w = rel(x, y) on the solutions of a single input
// ADE.  Unlike the n-ary combination, the reduction descends to the lowest
// output order reachable inside the prolonged system, so identities such as
// first-order equations hidden behind a constrained model are recovered.
inline EliminationOutcome unaryMethodII(const Poly& p, int fnY, const RatExpr& rel, int wFn,
                                        const MethodOptions& opts = {}) {
    MethodOptions o = opts;
    o.minimizeOrder = true;
    return combineMethodII({p}, {fnY}, rel, wFn, o);
}

// ADE for the composition w = f(g(x)), where p is the outer ADE (for f, order
// n) and q the inner one (for g, order m).  The inner function gets an
// ordinary chain; the outer states track w, w', ..., w^(N-1) directly, and
// the top derivative w^(N) is recovered by inverting the chain-rule triangle
//   w^(k) = (g')^k f^(k)(g) + (lower f-jets)
// for the f-jets and solving the (linear) top equation of p.
inline EliminationOutcome composeMethodII(const Poly& p, int fnY, const Poly& q, int fnZ,
                                          int wFn, const MethodOptions& opts = {}) {
    CtxPtr ctx = p.ctx();
    const int nOrig = orderOf(p, fnY);
    const int mOrig = orderOf(q, fnZ);
    if (nOrig < 0 || mOrig < 0)
        throw std::domain_error("compose: each ADE must involve its function");
    if (mOrig == 0 && q.partial(ctx->indepVar()).isZero())
        throw std::domain_error(
            "compose: the inner ADE does not involve the independent variable, so the inner "
            "function is constant and the composition degenerates");

    Chain cz = buildChain(q, fnZ);
    const int M = cz.len;
    const std::string outName = ctx->fns().at((std::size_t)wFn);
    Poly w0 = Poly::variable(ctx, ctx->diffVar(wFn, 0));

    if (nOrig == 0) {
        // the outer function is algebraic: p(g(x), w(x)) = 0; implicit
        // differentiation gives the single w-state's motion
        Poly z0 = Poly::variable(ctx, ctx->diffVar(fnZ, 0));
        std::map<int, RatExpr> bind{{ctx->indepVar(), RatExpr::of(z0)},
                                    {ctx->diffVar(fnY, 0), RatExpr::of(w0)}};
        RatExpr px = substituteAll(p.partial(ctx->indepVar()), bind);
        RatExpr py = substituteAll(p.partial(ctx->diffVar(fnY, 0)), bind);
        if (py.num.isZero())
            throw std::domain_error("compose: the outer ADE does not involve its function value");
        RatExpr zp = (M >= 2) ? RatExpr::of(Poly::variable(ctx, ctx->diffVar(fnZ, 1))) : cz.top;
        RatExpr vTop = reduceByChains(-(px * zp) / py, {cz}, ctx);
        Chain cw;
        cw.fn = wFn;
        cw.len = 1;
        cw.top = vTop;
        cw.dCount = 1;
        cw.constraints.push_back(clearDenominators(substituteAll(p, bind)));
        DynModel m = modelFromChains(ctx, {cz, cw}, RatExpr::of(w0), outName);
        EliminationOutcome res = sysToMinDiffPoly(m, opts);
        m2detail::remapOutcome(res, m.ctx, m.outFn, ctx, wFn);
        return res;
    }

    auto [p1, pDiff] = makeLho(p, fnY);
    const int N = orderOf(p1, fnY);

    // chain-rule images S_k of w^(k) in f-jets and g-jets, and their
    // triangular inversion a_k = f^(k)(g) in terms of w^(0..k), g-jets
    std::vector<Poly> S{Poly::variable(ctx, ctx->diffVar(fnY, 0))};
    for (int k = 1; k <= N; ++k)
        S.push_back(m1detail::chainRuleDerivative(S.back(), fnY, fnZ));
    std::map<int, RatExpr> aBind;
    aBind.emplace(ctx->diffVar(fnY, 0), RatExpr::of(w0));
    for (int k = 1; k <= N; ++k) {
        int yk = ctx->diffVar(fnY, k);
        Poly lead = S[(std::size_t)k].coeffOf(yk, 1);  // = (g')^k
        Poly rest = S[(std::size_t)k] - Poly::variable(ctx, yk) * lead;
        RatExpr ak = ((RatExpr::of(Poly::variable(ctx, ctx->diffVar(wFn, k))) -
                       substituteAll(rest, aBind)) /
                      RatExpr::of(lead))
                         .reduced();
        aBind.emplace(yk, ak);
    }

    // the outer equation transported to (w-jets, g-jets): linear in w^(N)
    std::map<int, RatExpr> pBind = aBind;
    pBind.emplace(ctx->indepVar(), RatExpr::of(Poly::variable(ctx, ctx->diffVar(fnZ, 0))));
    RatExpr Rp = reduceByChains(substituteAll(p1, pBind), {cz}, ctx);
    Poly core = Rp.num;
    if (orderOf(core, wFn) != N || !isLho(core, wFn))
        throw std::domain_error("compose: the outer equation degenerated under substitution");

    Chain cw;
    cw.fn = wFn;
    cw.len = N;
    cw.top = solveHighest(core, wFn).expr().reduced();
    cw.dCount = pDiff ? 1 : 0;
    if (pDiff) {
        RatExpr c0 = reduceByChains(substituteAll(p, pBind), {cz}, ctx);
        cw.constraints.push_back(clearDenominators(c0));
        if (!c0.den.isConstant()) cw.extraSaturation.push_back(c0.den.primitivePart());
    }
    DynModel m = modelFromChains(ctx, {cz, cw}, RatExpr::of(w0), outName);
    EliminationOutcome res = sysToMinDiffPoly(m, opts);
    m2detail::remapOutcome(res, m.ctx, m.outFn, ctx, wFn);
    return res;
}

// ---------------------------------------------------------------------------
// inverse functions

namespace m2detail {

// substituteAll with values living in a different ring; every variable of p
// must be bound
inline RatExpr crossSubstitute(const Poly& p, const CtxPtr& target,
                               const std::map<int, RatExpr>& bind) {
    RatExpr r = RatExpr::of(Poly(target));
    for (const auto& t : p.terms()) {
        RatExpr term = RatExpr::of(Poly::constant(target, t.c));
        for (const auto& pr : t.m.e) {
            auto it = bind.find(pr.first);
            if (it == bind.end())
                throw std::domain_error("crossSubstitute: unbound variable " +
                                        p.ctx()->varName(pr.first));
            term = term * it->second.pow((unsigned)pr.second);
        }
        r = r + term;
    }
    return r;
}

}  // namespace m2detail

// ADE for the inverse function g = f^(-1), written in the new independent
// variable (f's value): substitute x -> g, f -> the new variable, and
// f^(k) -> e_k with e_1 = 1/g' and e_(k+1) = (d/dy e_k)/g', then clear
// denominators.  Valid wherever the inverse exists (g' != 0).  This is a
// direct rewrite, not an elimination.
inline Poly inverseAde(const Poly& p, int fn, const std::string& outName = "g",
                       const std::string& indepName = "y") {
    CtxPtr ctx = p.ctx();
    int n = orderOf(p, fn);
    if (n < 0) throw std::domain_error("inverse: the ADE must involve its function");
    if (outName == indepName)
        throw std::domain_error("inverse: output and independent names must differ");
    for (const auto& pm : ctx->params())
        if (pm == outName || pm == indepName)
            throw std::domain_error("inverse: name collision with parameter '" + pm + "'");

    CtxPtr g = Context::make({outName}, indepName, ctx->params());
    Poly g1 = Poly::variable(g, g->diffVar(0, 1));
    std::vector<RatExpr> e;
    if (n >= 1) e.push_back(RatExpr{Poly::constant(g, Rat(1)), g1});
    for (int k = 2; k <= n; ++k) {
        const RatExpr& prev = e.back();
        Poly num = totalDerivative(prev.num) * prev.den - prev.num * totalDerivative(prev.den);
        e.push_back(RatExpr{num, prev.den * prev.den * g1});
    }

    std::map<int, RatExpr> bind;
    bind.emplace(ctx->indepVar(), RatExpr::of(Poly::variable(g, g->diffVar(0, 0))));
    bind.emplace(ctx->diffVar(fn, 0), RatExpr::of(Poly::variable(g, g->indepVar())));
    for (int k = 1; k <= n; ++k) bind.emplace(ctx->diffVar(fn, k), e[(std::size_t)(k - 1)]);
    for (std::size_t j = 0; j < ctx->params().size(); ++j)
        bind.emplace(ctx->paramVar((int)j), RatExpr::of(Poly::variable(g, g->paramVar((int)j))));

    RatExpr r = m2detail::crossSubstitute(p, g, bind);
    if (r.num.isZero())
        throw std::domain_error("inverse: the equation collapsed to zero under the rewrite");
    return r.num.primitivePart();
}

}  // namespace dalg
