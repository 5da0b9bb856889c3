// Job orchestration: named operations over parsed inputs, method dispatch,
// power-series verification, and result records.  This is the layer the CLI
// and the high-level tests call.
#pragma once

#include <array>
#include <cctype>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "method1.hpp"
#include "method2.hpp"
#include "oracle.hpp"

namespace dalg {

// ---------------------------------------------------------------------------
// configuration and results

struct JobConfig {
    std::string method = "II";  // "I", "II", or "both"
    int maxJ = 6;               // truncation-level cap for Method I
    double timeoutSec = 120.0;
    bool continuePastFirst = false;
    bool verify = true;
    int oracleExtra = 10;  // vanishing checked to order + degree + this
    std::vector<Rat> jet;  // optional explicit jet for the first input
};

struct AdeResult {
    Poly ade;  // in `ctx`, a differential polynomial of function `outFn`
    CtxPtr ctx;
    int outFn = -1;
    int order = 0;
    int degree = 0;
    std::string method;  // "I" or "II"
    long long elapsedMs = 0;
    std::optional<int> bound;  // state-count order bound (Method II only)
    std::optional<bool> verified;
    std::optional<std::string> saturationDenominator;
    std::string oracleDetail;
};

class JobTimeout : public std::runtime_error {
public:
    explicit JobTimeout(const std::string& what) : std::runtime_error(what) {}
};

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// problem parsing: each input equation names its function implicitly

struct Problem {
    CtxPtr ctx;
    std::vector<Poly> inputs;  // one ADE per input function
    std::vector<int> fns;      // function index of inputs[i]
    RatExpr rel;               // output = rel(x, inputs...); only if hasRel
    bool hasRel = false;
    int outFn = -1;
    std::string outName;
};

namespace jobdetail {

inline std::vector<std::string> identifiersIn(const std::string& s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::size_t j = i + 1;
            while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
            out.push_back(s.substr(i, j - i));
            i = j;
        } else {
            ++i;
        }
    }
    return out;
}

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace jobdetail

// Split "w = expr" into (name, expr); a bare expression yields an empty name.
inline std::pair<std::string, std::string> splitRelation(const std::string& rel) {
    std::size_t eq = rel.find('=');
    if (eq == std::string::npos) return {"", jobdetail::trim(rel)};
    std::string lhs = jobdetail::trim(rel.substr(0, eq));
    std::string rhs = jobdetail::trim(rel.substr(eq + 1));
    if (lhs.empty()) throw UsageError("empty relation left-hand side");
    for (char c : lhs)
        if (!std::isalnum((unsigned char)c) && c != '_')
            throw UsageError("relation left-hand side must be a plain name: '" + lhs + "'");
    return {lhs, rhs};
}

// Build a Problem from CLI-style pieces.  Each equation introduces exactly
// one function (any identifier that is not the independent variable or a
// parameter); the relation's left-hand side names the output.
inline Problem parseProblem(const std::vector<std::string>& equations, const std::string& relation,
                            const std::string& indep = "x",
                            const std::vector<std::string>& params = {}) {
    if (equations.empty()) throw UsageError("at least one input equation is required");
    std::set<std::string> reserved(params.begin(), params.end());
    reserved.insert(indep);

    std::vector<std::string> fnNames;
    for (const std::string& eq : equations) {
        std::set<std::string> cand;
        for (const std::string& id : jobdetail::identifiersIn(eq))
            if (!reserved.count(id)) cand.insert(id);
        for (const std::string& seen : fnNames) cand.erase(seen);
        if (cand.size() != 1) {
            if (cand.empty())
                throw UsageError("equation '" + eq + "' introduces no new function name");
            std::string all;
            for (const std::string& c : cand) all += (all.empty() ? "" : ", ") + c;
            throw UsageError("equation '" + eq +
                             "' must introduce exactly one new function, found: " + all);
        }
        fnNames.push_back(*cand.begin());
    }

    std::string outName, relExpr;
    if (!relation.empty()) {
        auto [lhs, rhs] = splitRelation(relation);
        outName = lhs;
        relExpr = rhs;
        if (!outName.empty()) {
            if (reserved.count(outName))
                throw UsageError("output name '" + outName + "' is reserved");
            for (const std::string& f : fnNames)
                if (f == outName)
                    throw UsageError("output name '" + outName +
                                     "' collides with an input function");
        }
    }
    if (outName.empty()) {
        for (const std::string& c : {std::string("z"), std::string("w"), std::string("v"),
                                     std::string("h"), std::string("w1"), std::string("w2")}) {
            bool taken = reserved.count(c) > 0;
            for (const std::string& f : fnNames) taken = taken || f == c;
            if (!taken) {
                outName = c;
                break;
            }
        }
        if (outName.empty())
            throw UsageError("could not pick an output name; use --rel \"name = ...\"");
    }

    std::vector<std::string> fns = fnNames;
    fns.push_back(outName);
    Problem pr;
    pr.ctx = Context::make(fns, indep, params);
    pr.outFn = (int)fnNames.size();
    pr.outName = outName;
    ExprParser eqP(pr.ctx, /*allowDivision=*/false);
    for (std::size_t i = 0; i < equations.size(); ++i) {
        Poly p = eqP.parseEquation(equations[i]);
        if (orderOf(p, (int)i) < 0)
            throw UsageError("equation '" + equations[i] + "' does not involve its function '" +
                             fnNames[i] + "'");
        pr.inputs.push_back(p);
        pr.fns.push_back((int)i);
    }
    if (!relExpr.empty()) {
        ExprParser relP(pr.ctx, /*allowDivision=*/true);
        pr.rel = relP.parse(relExpr).reduced();
        if (pr.rel.num.involves(pr.ctx->diffVar(pr.outFn, 0)) ||
            pr.rel.den.involves(pr.ctx->diffVar(pr.outFn, 0)))
            throw UsageError("the relation may not reference the output function");
        pr.hasRel = true;
    }
    return pr;
}

// ---------------------------------------------------------------------------
// oracle: exact power-series verification of a result against its inputs

namespace jobdetail {

// deterministic nonzero parameter/initial values: 1, -1, 2, -2, 1/2, ...
inline Rat paramValue(int i) {
    const std::vector<Rat>& small = smallRationals();
    return small[(std::size_t)(1 + i % (int)(small.size() - 1))];
}

// specialize all parameters of p by tuple index `t`
inline Poly specialize(const Poly& p, int t) {
    const CtxPtr& ctx = p.ctx();
    if (ctx->params().empty()) return p;
    std::map<int, Rat> vals;
    for (int k = 0; k < (int)ctx->params().size(); ++k)
        vals.emplace(ctx->paramVar(k), paramValue(t + k));
    return p.evaluatePartial(vals);
}

inline RatExpr specialize(const RatExpr& r, int t) {
    return RatExpr{specialize(r.num, t), specialize(r.den, t)};
}

// Series for every input from jet variant `which`; each input clamps to its
// last available jet, and `exhausted` is set when no input offered a fresh
// jet at this index (the combination repeats the previous one).  Nullopt when
// some input has no generic jet at this expansion point at all.
inline std::optional<std::map<int, TruncSeries>> inputSeries(
    const std::vector<Poly>& ps, const std::vector<int>& fns, const Rat& a, int which, int T,
    const std::vector<Rat>& explicitJet, const std::vector<std::vector<Poly>>& avoidPer,
    bool& exhausted) {
    std::map<int, TruncSeries> out;
    exhausted = which > 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        std::vector<std::vector<Rat>> jets;
        if (i == 0 && !explicitJet.empty()) {
            jets.push_back(explicitJet);
        } else {
            jets = genericJets(ps[i], fns[i], a,
                               avoidPer.empty() ? std::vector<Poly>{} : avoidPer[i], 4);
            if (jets.empty()) return std::nullopt;
        }
        if (which < (int)jets.size()) exhausted = false;
        const std::vector<Rat>& jet =
            jets[std::min((std::size_t)which, jets.size() - 1)];
        out.emplace(fns[i], seriesFromAde(ps[i], fns[i], a, jet, T));
    }
    return out;
}

inline std::optional<TruncSeries> rationalOnSeries(const RatExpr& r,
                                                   const std::map<int, TruncSeries>& byFn, int T) {
    TruncSeries num = evalOnSeries(r.num, byFn, T);
    if (r.den.isConstant()) return num.scale(r.den.constantValue().inv());
    TruncSeries den = evalOnSeries(r.den, byFn, T);
    if (den.at(0).isZero()) return std::nullopt;  // relation singular on this jet
    return num / den;
}

}  // namespace jobdetail

// How the output series is produced from the input series.
enum class OutputRule {
    Rational,        // w = rel(x, inputs)       (arith, unary, verify)
    Composition,     // w = outer(inner(x))      (compose: inputs = {outer, inner})
    Inverse,         // w = compositional inverse of the single input
    Derivative,      // w = input'
    Antiderivative,  // w' = input
};

// Verify `ade` against the inputs: build exact series solutions of the input
// ADEs on two generic jets, produce the output series per `rule`, and check
// the candidate vanishes to truncation order + degree + oracleExtra.  First
// of the pair is nullopt when every attempt was skipped (no usable jet or
// parameter tuple), with the reason in the second.  An output series that is
// identically zero does not count as a check unless `allowZeroOutput` (its
// vanishing would be vacuous for most candidates).
inline std::pair<std::optional<bool>, std::string> oracleVerify(
    const std::vector<Poly>& inputs, const std::vector<int>& fns, const RatExpr& rel,
    OutputRule rule, const Poly& ade, int wFn, const JobConfig& cfg = {},
    bool allowZeroOutput = false) {
    const int ordC = std::max(orderOf(ade, wFn), 0);
    const int degC = std::max(diffDegree(ade), 1);
    const int T = ordC + degC + cfg.oracleExtra;
    int maxJetRef = 0;  // highest input derivative the relation mentions
    if (rule == OutputRule::Rational)
        for (std::size_t i = 0; i < fns.size(); ++i)
            maxJetRef = std::max({maxJetRef, orderOf(rel.num, fns[i]), orderOf(rel.den, fns[i])});
    const int Tw = T + ordC + 1;         // truncation of the output series
    const int Tin = Tw + maxJetRef + 2;  // truncation of the input series

    const bool hasParams = !inputs.empty() && !inputs[0].ctx()->params().empty();
    const std::vector<Rat> points = {Rat(0), Rat(1), Rat(-1), Rat(1, 2), Rat(2), Rat(-1, 2)};
    std::string skipReason = "no generic jet found";
    for (int pt = 0; pt < 4; ++pt) {  // parameter tuples
        if (pt > 0 && !hasParams) break;
        // specialize; the candidate must keep its leading jet so the check
        // is not vacuous
        Poly adeS = jobdetail::specialize(ade, pt);
        if (adeS.isZero() || orderOf(adeS, wFn) != orderOf(ade, wFn)) continue;
        std::vector<Poly> psS;
        bool badInput = false;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            Poly s = jobdetail::specialize(inputs[i], pt);
            if (s.isZero() || orderOf(s, fns[i]) != orderOf(inputs[i], fns[i])) badInput = true;
            psS.push_back(s);
        }
        if (badInput) continue;
        RatExpr relS = rule == OutputRule::Rational ? jobdetail::specialize(rel, pt) : rel;
        if (rule == OutputRule::Rational && relS.den.isZero()) continue;

        // steer the jet search away from zeros of relation parts that depend
        // on a single input (poles of the relation, trivial numerators)
        std::vector<std::vector<Poly>> avoidPer(psS.size());
        if (rule == OutputRule::Rational) {
            for (std::size_t i = 0; i < psS.size(); ++i)
                for (const Poly* part : {&relS.num, &relS.den}) {
                    if (part->isConstant()) continue;
                    // when a zero output is legitimate, jets zeroing the
                    // numerator are exactly the interesting ones
                    if (allowZeroOutput && part == &relS.num) continue;
                    bool onlyThis = true, any = false;
                    int maxDeriv = 0;
                    for (const auto& t : part->terms())
                        for (const auto& prv : t.m.e) {
                            const VarInfo& vi = part->ctx()->info(prv.first);
                            if (vi.kind != VarKind::Diff) continue;
                            if (vi.fn != fns[i]) {
                                onlyThis = false;
                            } else {
                                any = true;
                                maxDeriv = std::max(maxDeriv, (int)vi.deriv);
                            }
                        }
                    if (onlyThis && any && maxDeriv <= orderOf(psS[i], fns[i]))
                        avoidPer[i].push_back(*part);
                }
        }

        for (const Rat& a : points) {
            int checked = 0;
            for (int which = 0; which < 4 && checked < 2; ++which) {
                std::optional<TruncSeries> w;
                bool exhausted = which > 0;
                try {
                    switch (rule) {
                        case OutputRule::Rational: {
                            auto byFn = jobdetail::inputSeries(psS, fns, a, which, Tin, cfg.jet,
                                                               avoidPer, exhausted);
                            if (!byFn) break;
                            w = jobdetail::rationalOnSeries(relS, *byFn, Tw);
                            if (!w) skipReason = "relation denominator vanishes on the trial jets";
                            break;
                        }
                        case OutputRule::Composition: {
                            // inputs = {outer, inner}; the inner series runs
                            // at a, the outer at b = inner(a)
                            auto ijets = genericJets(psS[1], fns[1], a, {}, 4);
                            if (ijets.empty()) break;
                            const auto& ijet =
                                ijets[std::min((std::size_t)which, ijets.size() - 1)];
                            TruncSeries inner = seriesFromAde(psS[1], fns[1], a, ijet, Tin);
                            Rat b = inner.at(0);
                            auto ojets = genericJets(psS[0], fns[0], b, {}, 4);
                            if (ojets.empty()) break;
                            const auto& ojet =
                                ojets[std::min((std::size_t)which, ojets.size() - 1)];
                            TruncSeries outer = seriesFromAde(psS[0], fns[0], b, ojet, Tin);
                            w = outer.compose(inner.truncated(Tw));
                            exhausted = which >= (int)ijets.size() && which >= (int)ojets.size();
                            break;
                        }
                        case OutputRule::Inverse: {
                            CtxPtr ictx = psS[0].ctx();
                            Poly dvar = Poly::variable(ictx, ictx->diffVar(fns[0], 1));
                            auto jets = genericJets(psS[0], fns[0], a, {dvar}, 4);
                            if (jets.empty()) break;
                            const auto& jet = jets[std::min((std::size_t)which, jets.size() - 1)];
                            TruncSeries f = seriesFromAde(psS[0], fns[0], a, jet, Tw + 1);
                            w = f.reversion().truncated(Tw);
                            exhausted = which >= (int)jets.size();
                            break;
                        }
                        case OutputRule::Derivative:
                        case OutputRule::Antiderivative: {
                            auto byFn = jobdetail::inputSeries(psS, fns, a, which, Tin, cfg.jet,
                                                               {}, exhausted);
                            if (!byFn) break;
                            const TruncSeries& f = byFn->at(fns[0]);
                            w = rule == OutputRule::Derivative
                                    ? f.derivative().truncated(Tw)
                                    : f.integral(jobdetail::paramValue(3 + which)).truncated(Tw);
                            break;
                        }
                    }
                } catch (const std::domain_error& e) {
                    skipReason = e.what();
                    w.reset();
                }
                if (which > 0 && exhausted) break;  // no fresh jet combination
                if (!w) continue;
                if (!allowZeroOutput && w->firstNonzero(w->T()) < 0) {
                    skipReason = "output series identically zero on the trial jets";
                    continue;
                }
                VanishReport rep = checkVanishing(adeS, wFn, *w);
                if (rep.checkedTo < 0) continue;
                if (!rep.ok) return {false, "oracle: nonzero residual (" + rep.detail + ")"};
                ++checked;
            }
            if (checked >= 2)
                return {true, "oracle: residual vanishes to series order " + std::to_string(T) +
                                  " on " + std::to_string(checked) + " jets"};
        }
    }
    return {std::nullopt, "oracle skipped: " + skipReason};
}

// ---------------------------------------------------------------------------
// model oracle: propagate exact state series of u' = rhs(u, x) term by term

namespace jobdetail {

inline std::optional<TruncSeries> modelOutputSeries(const DynModel& model,
                                                    const std::vector<Rat>& init, const Rat& a,
                                                    int T) {
    int n = model.nStates();
    std::vector<TruncSeries> st((std::size_t)n, TruncSeries(a, T));
    for (int i = 0; i < n; ++i) st[(std::size_t)i].c[0] = init[(std::size_t)i];
    std::map<int, TruncSeries> byFn;
    auto rebuild = [&](int upto) {
        byFn.clear();
        for (int i = 0; i < n; ++i)
            byFn.emplace(model.stateFns[(std::size_t)i], st[(std::size_t)i].truncated(upto));
    };
    // coefficient m of rhs uses state coefficients up to m only (the model
    // references order-0 state jets only), so each pass extends every state
    // by one coefficient: c_{m+1} = rhs_m / (m+1)
    for (int m = 0; m < T; ++m) {
        rebuild(m);
        for (int i = 0; i < n; ++i) {
            auto rs = rationalOnSeries(model.rhs[(std::size_t)i], byFn, m);
            if (!rs) return std::nullopt;
            st[(std::size_t)i].c[(std::size_t)(m + 1)] = rs->at(m) / Rat(m + 1);
        }
    }
    rebuild(T);
    return rationalOnSeries(model.output, byFn, T);
}

}  // namespace jobdetail

inline std::pair<std::optional<bool>, std::string> verifyModelResult(const DynModel& model,
                                                                     const Poly& ade,
                                                                     const JobConfig& cfg = {}) {
    if (!model.constraints.empty())
        return {std::nullopt, "oracle skipped: constrained models need algebraic initial points"};
    const int wFn = model.outFn;
    const int ordC = std::max(orderOf(ade, wFn), 0);
    const int T = 2 * ordC + std::max(diffDegree(ade), 1) + cfg.oracleExtra;
    const bool hasParams = !model.ctx->params().empty();

    for (int pt = 0; pt < 4; ++pt) {
        if (pt > 0 && !hasParams) break;
        Poly adeS = jobdetail::specialize(ade, pt);
        if (adeS.isZero() || orderOf(adeS, wFn) != orderOf(ade, wFn)) continue;
        DynModel mS = model;
        bool bad = false;
        for (auto& rr : mS.rhs) {
            rr = jobdetail::specialize(rr, pt);
            if (rr.den.isZero()) bad = true;
        }
        mS.output = jobdetail::specialize(mS.output, pt);
        if (bad || mS.output.den.isZero()) continue;

        int got = 0;
        for (int trial = 0; trial < 24 && got < 2; ++trial) {
            std::vector<Rat> init;
            for (int i = 0; i < mS.nStates(); ++i)
                init.push_back(jobdetail::paramValue(1 + 2 * trial + 3 * i));
            auto w = jobdetail::modelOutputSeries(mS, init, Rat(0), T);
            if (!w) continue;
            VanishReport rep = checkVanishing(adeS, wFn, *w);
            if (rep.checkedTo < 0) continue;
            if (!rep.ok) return {false, "oracle: nonzero residual (" + rep.detail + ")"};
            ++got;
        }
        if (got >= 2)
            return {true, "oracle: residual vanishes to series order " + std::to_string(T) +
                              " on 2 initial points"};
    }
    return {std::nullopt, "oracle skipped: no usable initial point"};
}

// ---------------------------------------------------------------------------
// method dispatch

namespace jobdetail {

inline MethodOptions methodOptions(const JobConfig& cfg) {
    MethodOptions mo;
    mo.maxJ = cfg.maxJ;
    mo.continuePastFirst = cfg.continuePastFirst;
    mo.gb.timeLimitSec = cfg.timeoutSec;
    return mo;
}

inline long long msSince(const std::chrono::steady_clock::time_point& t0) {
    return (long long)std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

inline AdeResult packResult(const EliminationOutcome& out, const CtxPtr& ctx, int wFn,
                            const std::string& method, long long ms, std::optional<int> bound) {
    AdeResult r;
    r.ade = out.ade;
    r.ctx = ctx;
    r.outFn = wFn;
    r.order = orderOf(out.ade, wFn);
    r.degree = diffDegree(out.ade);
    r.method = method;
    r.elapsedMs = ms;
    r.bound = bound;
    if (!out.saturation.isZero() && !out.saturation.isConstant())
        r.saturationDenominator = out.saturation.str();
    return r;
}

// order bound contributed by one input: its order, plus one when the input
// has to be differentiated to reach a solvable top derivative
inline int stateCount(const Poly& p, int fn) {
    auto [lho, differentiated] = makeLho(p, fn);
    (void)lho;
    return std::max(orderOf(p, fn) + (differentiated ? 1 : 0), 1);
}

// Method I handles one or two inputs with an arbitrary rational relation.
// More inputs are folded left-associatively, which requires the relation to
// be a plain sum or product of the input functions.
inline EliminationOutcome arithMethodINary(const Problem& pr, const MethodOptions& mo) {
    const CtxPtr& ctx = pr.ctx;
    if (pr.inputs.size() <= 2) {
        // a single input is passed as both arguments: the duplicated
        // prolongations generate the same ideal, so this is the unary case
        const Poly& q = pr.inputs.size() == 2 ? pr.inputs[1] : pr.inputs[0];
        int fnZ = pr.inputs.size() == 2 ? pr.fns[1] : pr.fns[0];
        return arithMethodI(pr.inputs[0], pr.fns[0], q, fnZ, pr.rel, pr.outFn, mo);
    }

    // fold: the relation must be a sum or a product of the input functions
    char op = 0;
    if (pr.rel.den.isConstant()) {
        const Poly& num = pr.rel.num;
        bool sum = true;
        std::set<int> seen;
        for (const auto& t : num.terms()) {
            int nfn = 0, fnHere = -1;
            for (const auto& prm : t.m.e) {
                const VarInfo& vi = ctx->info(prm.first);
                if (vi.kind != VarKind::Diff || vi.deriv != 0 || prm.second != 1) sum = false;
                if (vi.kind == VarKind::Diff) {
                    ++nfn;
                    fnHere = vi.fn;
                }
            }
            if (nfn != 1) sum = false;
            if (fnHere >= 0 && !seen.insert(fnHere).second) sum = false;
        }
        if (sum && seen.size() == pr.inputs.size()) {
            op = '+';
        } else if (num.terms().size() == 1) {
            bool prod = true;
            for (const auto& prm : num.terms()[0].m.e) {
                const VarInfo& vi = ctx->info(prm.first);
                if (vi.kind != VarKind::Diff || vi.deriv != 0 || prm.second != 1) prod = false;
            }
            if (prod) op = '*';
        }
    }
    if (!op)
        throw UsageError("Method I with more than two inputs needs a plain sum or product "
                         "relation; use --method II");

    // working context with intermediate functions for the partial combinations
    std::vector<std::string> fns2 = pr.ctx->fns();
    int nIn = (int)pr.inputs.size();
    std::vector<int> mid;
    for (int i = 0; i + 2 < nIn; ++i) {
        fns2.push_back("_v" + std::to_string(i + 1));
        mid.push_back((int)fns2.size() - 1);
    }
    CtxPtr ctx2 = Context::make(fns2, ctx->indep(), ctx->params());
    auto mapBetween = [](const CtxPtr& from, const CtxPtr& to) {
        return [from, to](int v) {
            const VarInfo& vi = from->info(v);
            switch (vi.kind) {
                case VarKind::Diff: return to->diffVar(vi.fn, vi.deriv);
                case VarKind::Indep: return to->indepVar();
                case VarKind::Param: return to->paramVar(vi.fn);
                default: throw std::domain_error("unexpected auxiliary variable");
            }
        };
    };
    Poly acc = pr.inputs[0].remapTo(ctx2, mapBetween(ctx, ctx2));
    int accFn = pr.fns[0];
    EliminationOutcome out;
    for (int i = 1; i < nIn; ++i) {
        int stepOut = (i == nIn - 1) ? pr.outFn : mid[(std::size_t)(i - 1)];
        Poly a0 = Poly::variable(ctx2, ctx2->diffVar(accFn, 0));
        Poly b0 = Poly::variable(ctx2, ctx2->diffVar(pr.fns[(std::size_t)i], 0));
        RatExpr step = RatExpr::of(op == '+' ? a0 + b0 : a0 * b0);
        out = arithMethodI(acc, accFn,
                           pr.inputs[(std::size_t)i].remapTo(ctx2, mapBetween(ctx, ctx2)),
                           pr.fns[(std::size_t)i], step, stepOut, mo);
        acc = out.ade;
        accFn = stepOut;
    }
    out.ade = out.ade.remapTo(ctx, mapBetween(ctx2, ctx));
    out.subset = {out.ade};
    return out;
}

// cross-check two results and keep the better one (order, initial degree,
// total degree); used by --method both
inline AdeResult pickAgreed(AdeResult a, AdeResult b, int outFn, long long ms) {
    bool agree = proportional(a.ade, b.ade);
    if (!agree) {
        Poly ra = diffReduce(a.ade, b.ade, outFn);
        Poly rb = diffReduce(b.ade, a.ade, outFn);
        agree = ra.isZero() || rb.isZero();
    }
    std::array<int, 3> ka{a.order, initialDegree(a.ade, outFn), a.degree};
    std::array<int, 3> kb{b.order, initialDegree(b.ade, outFn), b.degree};
    AdeResult r = kb <= ka ? std::move(b) : std::move(a);
    r.elapsedMs = ms;
    r.oracleDetail = agree ? "methods agree (one result reduces to zero modulo the other)"
                           : "METHODS DISAGREE";
    if (!agree) r.verified = false;
    return r;
}

}  // namespace jobdetail

// ---------------------------------------------------------------------------
// operations

inline AdeResult runArith(const Problem& pr, const JobConfig& cfg = {}) {
    if (!pr.hasRel) throw UsageError("arith requires --rel \"name = expression\"");
    MethodOptions mo = jobdetail::methodOptions(cfg);
    auto t0 = std::chrono::steady_clock::now();

    auto runI = [&]() -> AdeResult {
        EliminationOutcome o = jobdetail::arithMethodINary(pr, mo);
        return jobdetail::packResult(o, pr.ctx, pr.outFn, "I", jobdetail::msSince(t0),
                                     std::nullopt);
    };
    auto runII = [&]() -> AdeResult {
        int bound = 0;
        for (std::size_t i = 0; i < pr.inputs.size(); ++i)
            bound += jobdetail::stateCount(pr.inputs[i], pr.fns[i]);
        EliminationOutcome o = pr.inputs.size() == 1
                                   ? unaryMethodII(pr.inputs[0], pr.fns[0], pr.rel, pr.outFn, mo)
                                   : combineMethodII(pr.inputs, pr.fns, pr.rel, pr.outFn, mo);
        return jobdetail::packResult(o, pr.ctx, pr.outFn, "II", jobdetail::msSince(t0), bound);
    };

    AdeResult r;
    try {
        if (cfg.method == "I") {
            r = runI();
        } else if (cfg.method == "II") {
            r = runII();
        } else {
            AdeResult b = runII();
            try {
                AdeResult a = runI();
                r = jobdetail::pickAgreed(std::move(a), std::move(b), pr.outFn,
                                          jobdetail::msSince(t0));
            } catch (const UsageError&) {
                r = std::move(b);  // Method I cannot express this combination
            }
        }
    } catch (const GBLimitExceeded& e) {
        throw JobTimeout(e.what());
    }

    if (cfg.verify && !r.verified.has_value()) {
        auto [ok, detail] =
            oracleVerify(pr.inputs, pr.fns, pr.rel, OutputRule::Rational, r.ade, pr.outFn, cfg);
        r.verified = ok;
        r.oracleDetail = r.oracleDetail.empty() ? detail : r.oracleDetail + "; " + detail;
    }
    return r;
}

inline AdeResult runUnary(const Problem& pr, const JobConfig& cfg = {}) {
    if (!pr.hasRel) throw UsageError("unary requires --rel \"name = expression\"");
    if (pr.inputs.size() != 1) throw UsageError("unary takes exactly one input equation");
    MethodOptions mo = jobdetail::methodOptions(cfg);
    auto t0 = std::chrono::steady_clock::now();
    AdeResult r;
    try {
        EliminationOutcome o = unaryMethodII(pr.inputs[0], pr.fns[0], pr.rel, pr.outFn, mo);
        r = jobdetail::packResult(o, pr.ctx, pr.outFn, "II", jobdetail::msSince(t0),
                                  jobdetail::stateCount(pr.inputs[0], pr.fns[0]));
    } catch (const GBLimitExceeded& e) {
        throw JobTimeout(e.what());
    }
    if (cfg.verify) {
        auto [ok, detail] =
            oracleVerify(pr.inputs, pr.fns, pr.rel, OutputRule::Rational, r.ade, pr.outFn, cfg);
        r.verified = ok;
        r.oracleDetail = detail;
    }
    return r;
}

// compose: inputs = {outer, inner}, output w = outer(inner(x))
inline AdeResult runCompose(const Problem& pr, const JobConfig& cfg = {}) {
    if (pr.inputs.size() != 2) throw UsageError("compose takes exactly two inputs, outer first");
    if (pr.hasRel) throw UsageError("compose does not take --rel");
    MethodOptions mo = jobdetail::methodOptions(cfg);
    auto t0 = std::chrono::steady_clock::now();
    auto runI = [&]() -> AdeResult {
        EliminationOutcome o =
            composeMethodI(pr.inputs[0], pr.fns[0], pr.inputs[1], pr.fns[1], pr.outFn, mo);
        return jobdetail::packResult(o, pr.ctx, pr.outFn, "I", jobdetail::msSince(t0),
                                     std::nullopt);
    };
    auto runII = [&]() -> AdeResult {
        int bound = jobdetail::stateCount(pr.inputs[0], pr.fns[0]) +
                    jobdetail::stateCount(pr.inputs[1], pr.fns[1]);
        EliminationOutcome o =
            composeMethodII(pr.inputs[0], pr.fns[0], pr.inputs[1], pr.fns[1], pr.outFn, mo);
        return jobdetail::packResult(o, pr.ctx, pr.outFn, "II", jobdetail::msSince(t0), bound);
    };
    AdeResult r;
    try {
        if (cfg.method == "I") {
            r = runI();
        } else if (cfg.method == "II") {
            r = runII();
        } else {
            AdeResult a = runI();
            AdeResult b = runII();
            r = jobdetail::pickAgreed(std::move(a), std::move(b), pr.outFn,
                                      jobdetail::msSince(t0));
        }
    } catch (const GBLimitExceeded& e) {
        throw JobTimeout(e.what());
    }
    if (cfg.verify && !r.verified.has_value()) {
        auto [ok, detail] = oracleVerify(pr.inputs, pr.fns, RatExpr::of(Poly(pr.ctx)),
                                         OutputRule::Composition, r.ade, pr.outFn, cfg);
        r.verified = ok;
        r.oracleDetail = r.oracleDetail.empty() ? detail : r.oracleDetail + "; " + detail;
    }
    return r;
}

inline AdeResult runInverse(const Problem& pr, const JobConfig& cfg = {},
                            const std::string& outName = "g", const std::string& indepName = "y") {
    if (pr.inputs.size() != 1) throw UsageError("inverse takes exactly one input equation");
    auto t0 = std::chrono::steady_clock::now();
    Poly inv = inverseAde(pr.inputs[0], pr.fns[0], outName, indepName);
    AdeResult r;
    r.ade = inv;
    r.ctx = inv.ctx();
    r.outFn = 0;  // the inverse lives in a fresh single-function context
    r.order = orderOf(inv, 0);
    r.degree = diffDegree(inv);
    r.method = "II";
    r.elapsedMs = jobdetail::msSince(t0);
    if (cfg.verify) {
        auto [ok, detail] = oracleVerify(pr.inputs, pr.fns, RatExpr::of(Poly(pr.ctx)),
                                         OutputRule::Inverse, r.ade, 0, cfg);
        r.verified = ok;
        r.oracleDetail = detail;
    }
    return r;
}

inline AdeResult runDerivative(const Problem& pr, const JobConfig& cfg = {}, bool anti = false) {
    if (pr.inputs.size() != 1)
        throw UsageError("derivative/antiderivative take exactly one input equation");
    auto t0 = std::chrono::steady_clock::now();
    Poly res = anti ? antiderivativeAde(pr.inputs[0], pr.fns[0])
                    : derivativeAde(pr.inputs[0], pr.fns[0]);
    // present the result under the output name
    CtxPtr rctx = Context::make({pr.outName}, pr.ctx->indep(), pr.ctx->params());
    Poly out = res.remapTo(rctx, [&](int v) {
        const VarInfo& vi = pr.ctx->info(v);
        switch (vi.kind) {
            case VarKind::Diff: return rctx->diffVar(0, vi.deriv);
            case VarKind::Indep: return rctx->indepVar();
            case VarKind::Param: return rctx->paramVar(vi.fn);
            default: throw std::domain_error("unexpected auxiliary variable in a result");
        }
    });
    AdeResult r;
    r.ade = out;
    r.ctx = rctx;
    r.outFn = 0;
    r.order = orderOf(out, 0);
    r.degree = diffDegree(out);
    r.method = "II";
    r.elapsedMs = jobdetail::msSince(t0);
    if (cfg.verify) {
        auto [ok, detail] =
            oracleVerify(pr.inputs, pr.fns, RatExpr::of(Poly(pr.ctx)),
                         anti ? OutputRule::Antiderivative : OutputRule::Derivative, r.ade, 0, cfg);
        r.verified = ok;
        r.oracleDetail = detail;
    }
    return r;
}

// model reduction (the model owns its context; output function = model.outFn)
inline AdeResult runSys2Min(const DynModel& model, const JobConfig& cfg = {}) {
    MethodOptions mo = jobdetail::methodOptions(cfg);
    auto t0 = std::chrono::steady_clock::now();
    AdeResult r;
    try {
        EliminationOutcome o = sysToMinDiffPoly(model, mo);
        r = jobdetail::packResult(o, model.ctx, model.outFn, "II", jobdetail::msSince(t0),
                                  model.nStates());
    } catch (const GBLimitExceeded& e) {
        throw JobTimeout(e.what());
    }
    if (cfg.verify) {
        auto [ok, detail] = verifyModelResult(model, r.ade, cfg);
        r.verified = ok;
        r.oracleDetail = detail;
    }
    return r;
}

// ---------------------------------------------------------------------------
// standalone verification and identity proving

// Check a user-supplied candidate ADE against inputs + relation.
inline AdeResult runVerifyCandidate(const Problem& pr, const std::string& candidate,
                                    const JobConfig& cfg = {}) {
    if (!pr.hasRel) throw UsageError("verify requires --rel \"name = expression\"");
    ExprParser P(pr.ctx, /*allowDivision=*/false);
    Poly ade = P.parseEquation(candidate);
    if (orderOf(ade, pr.outFn) < 0)
        throw UsageError("the candidate does not involve the output function '" + pr.outName +
                         "'");
    AdeResult r;
    r.ade = ade;
    r.ctx = pr.ctx;
    r.outFn = pr.outFn;
    r.order = orderOf(ade, pr.outFn);
    r.degree = diffDegree(ade);
    r.method = "II";
    auto t0 = std::chrono::steady_clock::now();
    auto [ok, detail] =
        oracleVerify(pr.inputs, pr.fns, pr.rel, OutputRule::Rational, ade, pr.outFn, cfg);
    r.elapsedMs = jobdetail::msSince(t0);
    r.verified = ok;
    r.oracleDetail = detail;
    return r;
}

struct ProveReport {
    bool proved = false;
    std::string level;  // "proportional" | "mutual-reduction" | "series" | "failed"
    std::string detail;
    AdeResult lhs, rhs;
};

// Identity proving: compute ADEs for two expressions of the same inputs and
// compare, strongest evidence first; a matched-jet series comparison of the
// difference settles the identity itself up to the checked truncation.
inline ProveReport runProve(const std::vector<std::string>& equations, const std::string& lhsExpr,
                            const std::string& rhsExpr, const std::string& indep = "x",
                            const std::vector<std::string>& params = {},
                            const JobConfig& cfg = {}) {
    ProveReport rep;
    Problem prL = parseProblem(equations, "_lhs = " + lhsExpr, indep, params);
    Problem prR = parseProblem(equations, "_rhs = " + rhsExpr, indep, params);
    JobConfig c2 = cfg;
    c2.verify = false;
    rep.lhs = runArith(prL, c2);
    rep.rhs = runArith(prR, c2);

    // bring the right result into the left context (same function layout)
    auto toL = [&](const Poly& p) {
        return p.remapTo(prL.ctx, [&](int v) {
            const VarInfo& vi = prR.ctx->info(v);
            switch (vi.kind) {
                case VarKind::Diff: return prL.ctx->diffVar(vi.fn, vi.deriv);
                case VarKind::Indep: return prL.ctx->indepVar();
                case VarKind::Param: return prL.ctx->paramVar(vi.fn);
                default: throw std::domain_error("unexpected auxiliary variable in a result");
            }
        });
    };
    Poly l = rep.lhs.ade;
    Poly rr = toL(rep.rhs.ade);
    if (proportional(l, rr)) {
        rep.proved = true;
        rep.level = "proportional";
        rep.detail = "both sides satisfy the same minimal ADE";
    } else {
        Poly a = diffReduce(l, rr, prL.outFn);
        Poly b = diffReduce(rr, l, prL.outFn);
        if (a.isZero() || b.isZero()) {
            rep.proved = true;
            rep.level = "mutual-reduction";
            rep.detail = "one side's ADE pseudo-reduces to zero modulo the other's";
        }
    }
    // difference series: verify the trivial candidate w = 0 against
    // rel = lhs - rhs, i.e. the combined series must be identically zero
    {
        RatExpr relR{toL(prR.rel.num), toL(prR.rel.den)};
        RatExpr dRel = (prL.rel - relR).reduced();
        Poly w0 = Poly::variable(prL.ctx, prL.ctx->diffVar(prL.outFn, 0));
        auto [ok, detail] = oracleVerify(prL.inputs, prL.fns, dRel, OutputRule::Rational, w0,
                                         prL.outFn, cfg, /*allowZeroOutput=*/true);
        if (ok.has_value() && *ok) {
            if (!rep.proved) {
                rep.proved = true;
                rep.level = "series";
            }
            rep.detail +=
                (rep.detail.empty() ? "" : "; ") + ("difference series vanishes (" + detail + ")");
        } else if (ok.has_value() && !*ok) {
            rep.proved = false;
            rep.level = "failed";
            rep.detail = "the sides differ: " + detail;
        } else if (!rep.proved) {
            rep.level = "failed";
            rep.detail = detail;
        }
    }
    return rep;
}

}  // namespace dalg
