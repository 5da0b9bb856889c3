// Power-series verification oracle.
//
// Pieces: deterministic search for generic rational jets of an ADE,
// progressive series solving (given a consistent jet, extend to any
// truncation), and vanishing checks of a differential polynomial on a
// candidate series.  Everything is exact rational arithmetic; a reported
// success is a proof that the first T coefficients vanish, not a numeric
// fuzz test.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffpoly.hpp"
#include "series.hpp"

namespace dalg {

// ---------------------------------------------------------------------------
// small deterministic rational candidates, ordered by height |num|+den:
// 0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 1/3, -1/3, 4, -4, 3/2, -3/2, 2/3, ...
inline const std::vector<Rat>& smallRationals() {
    static const std::vector<Rat> list = [] {
        std::vector<Rat> v;
        v.emplace_back(0);
        for (int h = 2; h <= 9; ++h)
            for (int den = 1; den < h; ++den) {
                int num = h - den;
                if (intGcd(Int(num), Int(den)) != 1) continue;
                v.emplace_back(Int(num), Int(den));
                v.emplace_back(Int(-num), Int(den));
            }
        return v;
    }();
    return list;
}

// all rational roots of sum coeffs[e] * Y^e, ascending, each root once.
inline std::vector<Rat> rationalRoots(std::vector<Rat> coeffs) {
    while (!coeffs.empty() && coeffs.back().isZero()) coeffs.pop_back();
    std::vector<Rat> roots;
    if (coeffs.size() <= 1) return roots;  // constant (or zero): no isolated roots
    // integer coefficients
    Int L(1);
    for (auto& q : coeffs) L = intLcm(L, q.den());
    std::vector<Int> ic;
    ic.reserve(coeffs.size());
    for (auto& q : coeffs) ic.push_back(q.num() * (L / q.den()));
    // factor out Y^k
    std::size_t shift = 0;
    while (shift < ic.size() && ic[shift] == 0) ++shift;
    if (shift > 0) {
        roots.emplace_back(0);
        ic.erase(ic.begin(), ic.begin() + (std::ptrdiff_t)shift);
    }
    if (ic.size() <= 1) return roots;
    auto divisorsOf = [](Int v) {
        std::vector<Int> d;
        v = intAbs(v);
        for (Int i = 1; i * i <= v && d.size() < 4096; ++i)
            if (v % i == 0) {
                d.push_back(i);
                if (i * i != v) d.push_back(v / i);
            }
        return d;
    };
    std::vector<Int> ps = divisorsOf(ic.front());
    std::vector<Int> qs = divisorsOf(ic.back());
    auto isRoot = [&](const Rat& r) {
        Rat acc(0);
        for (std::size_t e = ic.size(); e-- > 0;) acc = acc * r + Rat(ic[e]);
        return acc.isZero();
    };
    for (const Int& q : qs)
        for (const Int& p : ps) {
            if (intGcd(p, q) != 1) continue;
            for (int s : {1, -1}) {
                Rat cand(s > 0 ? p : -p, q);
                if (!isRoot(cand)) continue;
                if (std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
        }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---------------------------------------------------------------------------
// evaluate a differential polynomial on series: every derivative y^(k) of a
// function with a bound series is replaced by the k-th series derivative,
// the independent variable by a + s.  All series must share the expansion
// point; the result is computed at truncation Tw.
inline TruncSeries evalOnSeries(const Poly& p, const std::map<int, TruncSeries>& byFn, int Tw) {
    const Context& C = *p.ctx();
    Rat a = byFn.empty() ? Rat(0) : byFn.begin()->second.a;
    for (auto& [fn, s] : byFn)
        if (!(s.a == a)) throw std::domain_error("evalOnSeries: mixed expansion points");
    // derivative series cache per (fn, k), truncated to Tw
    std::map<std::pair<int, int>, TruncSeries> dcache;
    auto derivSeries = [&](int fn, int k) -> const TruncSeries& {
        auto key = std::make_pair(fn, k);
        auto it = dcache.find(key);
        if (it != dcache.end()) return it->second;
        const TruncSeries& base = byFn.at(fn);
        if (base.T() - k < Tw)
            throw std::domain_error("evalOnSeries: series truncation too small for order");
        TruncSeries d = base;
        for (int i = 0; i < k; ++i) d = d.derivative();
        return dcache.emplace(key, d.truncated(Tw)).first->second;
    };
    TruncSeries xSeries = TruncSeries::identity(a, Tw);
    TruncSeries acc(a, Tw);
    for (const auto& t : p.terms()) {
        TruncSeries prod = TruncSeries::constant(a, t.c, Tw);
        for (auto& [v, e] : t.m.e) {
            const VarInfo& vi = C.info(v);
            TruncSeries factor(a, 0);
            if (vi.kind == VarKind::Diff) {
                if (!byFn.count(vi.fn))
                    throw std::domain_error("evalOnSeries: no series bound for function '" +
                                            C.fns().at((std::size_t)vi.fn) + "'");
                factor = derivSeries(vi.fn, vi.deriv);
            } else if (vi.kind == VarKind::Indep) {
                factor = xSeries;
            } else {
                throw std::domain_error("evalOnSeries: unbound variable '" + C.varName(v) +
                                        "' (specialize parameters first)");
            }
            prod = prod * factor.pow((unsigned)e);
        }
        acc = acc + prod;
    }
    return acc;
}

struct VanishReport {
    bool ok = false;
    int checkedTo = -1;        // coefficients 0..checkedTo were tested
    int firstNonzero = -1;     // -1 when all vanish
    std::string detail;
};

// check that the ADE (a differential polynomial in one function) vanishes on
// the candidate series to the full usable truncation T - order.
inline VanishReport checkVanishing(const Poly& ade, int fnIdx, const TruncSeries& h) {
    VanishReport rep;
    int ord = std::max(orderOf(ade, fnIdx), 0);
    int Tw = h.T() - ord;
    if (Tw < 0) {
        rep.detail = "series too short for the ADE order";
        return rep;
    }
    std::map<int, TruncSeries> bind;
    bind.emplace(fnIdx, h);
    TruncSeries r = evalOnSeries(ade, bind, Tw);
    rep.checkedTo = Tw;
    rep.firstNonzero = r.firstNonzero(Tw);
    rep.ok = rep.firstNonzero < 0;
    if (!rep.ok)
        rep.detail = "coefficient " + std::to_string(rep.firstNonzero) +
                     " of s is " + r.c[(std::size_t)rep.firstNonzero].str();
    return rep;
}

// ---------------------------------------------------------------------------
// generic jets: rational tuples (y(a), y'(a), ..., y^(n)(a)) with p = 0 and
// all avoid-polynomials nonzero.  p must have no free parameters left.
struct JetSearch {
    Poly p;             // the ADE, parameters already specialized
    int fn = 0;         // function index
    Rat a;              // expansion point
    std::vector<Poly> avoid;
    int tupleBudget = 4000;  // lower-jet tuples to try before giving up

    std::vector<std::vector<Rat>> find(int howMany) const {
        const CtxPtr& ctx = p.ctx();
        int n = orderOf(p, fn);
        if (n < 0) throw std::domain_error("jet search: ADE does not involve the function");
        std::vector<std::vector<Rat>> found;
        // collect p by the top derivative so each tuple only needs coefficient
        // evaluations
        auto byTop = p.collect(ctx->diffVar(fn, n));
        const auto& cands = smallRationals();
        int xVar = ctx->indepVar();
        auto evalLower = [&](const Poly& q, const std::vector<Rat>& tuple) {
            std::map<int, Rat> assign;
            assign.emplace(xVar, a);
            for (int k = 0; k < (int)tuple.size(); ++k)
                assign.emplace(ctx->diffVar(fn, k), tuple[(std::size_t)k]);
            Poly r = q.evaluatePartial(assign);
            if (!r.isConstant())
                throw std::domain_error("jet search: unexpected free variable in coefficient");
            return r.constantValue();
        };
        auto acceptable = [&](const std::vector<Rat>& jet) {
            std::map<int, Rat> assign;
            assign.emplace(xVar, a);
            for (int k = 0; k < (int)jet.size(); ++k)
                assign.emplace(ctx->diffVar(fn, k), jet[(std::size_t)k]);
            for (const Poly& g : avoid) {
                Poly r = g.evaluatePartial(assign);
                if (!r.isConstant() || r.constantValue().isZero()) return false;
            }
            return true;
        };
        int tried = 0;
        // enumerate lower-jet tuples by total candidate-index budget
        std::vector<int> idx((std::size_t)std::max(n, 0), 0);
        auto tryTuple = [&](const std::vector<int>& ix) {
            std::vector<Rat> tuple;
            tuple.reserve(ix.size());
            for (int i : ix) tuple.push_back(cands[(std::size_t)i]);
            // univariate in the top derivative
            std::vector<Rat> coeffs;
            for (auto& [e, q] : byTop) {
                if ((int)coeffs.size() <= e) coeffs.resize((std::size_t)e + 1, Rat(0));
                coeffs[(std::size_t)e] = evalLower(q, tuple);
            }
            bool allzero = true;
            for (auto& c : coeffs)
                if (!c.isZero()) { allzero = false; break; }
            if (allzero) return;  // degenerate tuple
            for (const Rat& root : rationalRoots(coeffs)) {
                std::vector<Rat> jet = tuple;
                jet.push_back(root);
                if (!acceptable(jet)) continue;
                if (std::find(found.begin(), found.end(), jet) == found.end())
                    found.push_back(jet);
                if ((int)found.size() >= howMany) return;
            }
        };
        if (n == 0) {
            tryTuple({});
            return found;
        }
        int maxIdx = (int)cands.size() - 1;
        for (int budget = 0; budget <= maxIdx * n && (int)found.size() < howMany; ++budget) {
            // compositions of `budget` into n parts, each ≤ maxIdx, lexicographic
            std::fill(idx.begin(), idx.end(), 0);
            std::function<bool(int, int)> rec = [&](int pos, int left) -> bool {
                if ((int)found.size() >= howMany || tried > tupleBudget) return false;
                if (pos == n - 1) {
                    if (left > maxIdx) return true;
                    idx[(std::size_t)pos] = left;
                    ++tried;
                    tryTuple(idx);
                    return true;
                }
                for (int v = 0; v <= std::min(left, maxIdx); ++v) {
                    idx[(std::size_t)pos] = v;
                    if (!rec(pos + 1, left - v)) return false;
                }
                return true;
            };
            rec(0, budget);
            if (tried > tupleBudget) break;
        }
        return found;
    }
};

// convenience: jets for an ADE with the separant of its solvable form
// automatically excluded (so the progressive solver cannot stall).
inline std::vector<std::vector<Rat>> genericJets(const Poly& p, int fn, const Rat& a,
                                                 std::vector<Poly> extraAvoid, int howMany) {
    auto [q, differentiated] = makeLho(p, fn);
    SolvedHighest s = solveHighest(q, fn);
    std::vector<Poly> avoid = std::move(extraAvoid);
    // the separant involves derivatives of order ≤ n (≤ the jet length), so
    // it is evaluable on the jet
    avoid.push_back(s.A);
    JetSearch js{p, fn, a, std::move(avoid)};
    return js.find(howMany);
}

// ---------------------------------------------------------------------------
// progressive series solving: given the ADE p (parameters specialized), an
// expansion point a and a consistent jet (y(a), ..., y^(n)(a)), produce the
// unique series solution to truncation T.
//
// Mechanism: bring p to solvable form q (order N, linear in y^(N)); for each
// m > n the coefficient [s^(m-N)] of q evaluated on the partial series is an
// affine function of the unknown c_m, so two evaluations (c_m = 0 and
// c_m = 1) determine it.
inline TruncSeries seriesFromAde(const Poly& p, int fn, const Rat& a,
                                 const std::vector<Rat>& jet, int T) {
    const CtxPtr& ctx = p.ctx();
    int n = orderOf(p, fn);
    if (n < 0) throw std::domain_error("seriesFromAde: ADE does not involve the function");
    if ((int)jet.size() != n + 1)
        throw std::domain_error("seriesFromAde: jet must list y(a)..y^(" + std::to_string(n) +
                                ")(a), got " + std::to_string(jet.size()) + " values");
    // consistency: p vanishes on the jet
    {
        std::map<int, Rat> assign;
        assign.emplace(ctx->indepVar(), a);
        for (int k = 0; k <= n; ++k) assign.emplace(ctx->diffVar(fn, k), jet[(std::size_t)k]);
        Poly r = p.evaluatePartial(assign);
        if (!r.isConstant())
            throw std::domain_error("seriesFromAde: parameters must be specialized first");
        if (!r.constantValue().isZero())
            throw std::domain_error("seriesFromAde: jet does not satisfy the ADE");
    }
    auto [q, differentiated] = makeLho(p, fn);
    int N = n + (differentiated ? 1 : 0);
    TruncSeries h(a, T);
    Rat fact(1);
    for (int k = 0; k <= n && k <= T; ++k) {
        if (k > 0) fact *= Rat(k);
        h.c[(std::size_t)k] = jet[(std::size_t)k] / fact;
    }
    if (T <= n) return h;
    for (int m = n + 1; m <= T; ++m) {
        int Tw = m - N;  // the coefficient index of q that pins c_m
        auto evalAt = [&](const Rat& cm) {
            TruncSeries trial = h.truncated(m);
            trial.c[(std::size_t)m] = cm;
            std::map<int, TruncSeries> bind;
            bind.emplace(fn, std::move(trial));
            return evalOnSeries(q, bind, Tw).c[(std::size_t)Tw];
        };
        Rat e0 = evalAt(Rat(0));
        Rat e1 = evalAt(Rat(1));
        Rat lambda = e1 - e0;
        if (lambda.isZero())
            throw std::domain_error("seriesFromAde: singular jet (separant vanishes) at index " +
                                    std::to_string(m));
        h.c[(std::size_t)m] = -e0 / lambda;
    }
    return h;
}

}  // namespace dalg
