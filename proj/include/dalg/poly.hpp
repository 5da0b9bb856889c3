// Sparse multivariate polynomials over exact rationals.
//
// Terms are kept merged (no duplicate monomials, no zero coefficients) and
// sorted descending under the context's canonical degrevlex order, so equal
// polynomials have identical term sequences and printing is deterministic.
// Adding variables to a context never reorders existing ones relative to
// each other (significance keys are absolute), so stored sort orders stay
// valid as rings grow.
#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "context.hpp"
#include "monomial.hpp"
#include "rational.hpp"

namespace dalg {

struct Term {
    Monomial m;
    Rat c;
};

class Poly {
public:
    Poly() = default;
    explicit Poly(CtxPtr ctx) : ctx_(std::move(ctx)) {}

    static Poly constant(CtxPtr ctx, Rat c) {
        Poly p(std::move(ctx));
        if (!c.isZero()) p.t_.push_back({Monomial::one(), std::move(c)});
        return p;
    }
    static Poly variable(CtxPtr ctx, int v, int exp = 1) {
        Poly p(std::move(ctx));
        if (exp == 0) return constant(p.ctx_, 1);
        p.t_.push_back({Monomial::var(v, exp), Rat(1)});
        return p;
    }
    static Poly fromTerms(CtxPtr ctx, std::vector<Term> terms) {
        Poly p(std::move(ctx));
        p.t_ = std::move(terms);
        p.normalize();
        return p;
    }

    const CtxPtr& ctx() const { return ctx_; }
    const std::vector<Term>& terms() const { return t_; }
    bool isZero() const { return t_.empty(); }
    bool isConstant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.isOne()); }
    Rat constantValue() const {
        if (t_.empty()) return Rat(0);
        if (!isConstant()) throw std::domain_error("Poly: not a constant");
        return t_[0].c;
    }
    std::size_t size() const { return t_.size(); }
    int totalDeg() const {
        int d = 0;
        for (const auto& t : t_) d = std::max(d, (int)t.m.deg);
        return d;
    }

    const Term& leading() const {
        if (t_.empty()) throw std::domain_error("Poly: leading term of zero");
        return t_[0];
    }

    // --- arithmetic -------------------------------------------------------

    Poly operator-() const {
        Poly r = *this;
        for (auto& t : r.t_) t.c = -t.c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.requireSameCtx(b);
        Poly r(a.ctx_);
        r.t_.reserve(a.t_.size() + b.t_.size());
        std::size_t i = 0, j = 0;
        while (i < a.t_.size() || j < b.t_.size()) {
            if (j == b.t_.size())
                r.t_.push_back(a.t_[i++]);
            else if (i == a.t_.size())
                r.t_.push_back(b.t_[j++]);
            else {
                int c = a.cmpCanonical(a.t_[i].m, b.t_[j].m);
                if (c > 0)
                    r.t_.push_back(a.t_[i++]);
                else if (c < 0)
                    r.t_.push_back(b.t_[j++]);
                else {
                    Rat s = a.t_[i].c + b.t_[j].c;
                    if (!s.isZero()) r.t_.push_back({a.t_[i].m, std::move(s)});
                    ++i, ++j;
                }
            }
        }
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }

    Poly scale(const Rat& c) const {
        if (c.isZero()) return Poly(ctx_);
        Poly r = *this;
        for (auto& t : r.t_) t.c *= c;
        return r;
    }

    Poly mulTerm(const Monomial& m, const Rat& c) const {
        if (c.isZero()) return Poly(ctx_);
        Poly r(ctx_);
        r.t_.reserve(t_.size());
        for (const auto& t : t_) r.t_.push_back({t.m.mul(m), t.c * c});
        // multiplying by a fixed monomial preserves the relative order
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.requireSameCtx(b);
        if (a.isZero() || b.isZero()) return Poly(a.ctx_);
        if (b.t_.size() == 1) return a.mulTerm(b.t_[0].m, b.t_[0].c);
        if (a.t_.size() == 1) return b.mulTerm(a.t_[0].m, a.t_[0].c);
        std::unordered_map<Monomial, Rat, MonoHash> acc;
        acc.reserve(a.t_.size() * b.t_.size());
        for (const auto& ta : a.t_)
            for (const auto& tb : b.t_) {
                Monomial m = ta.m.mul(tb.m);
                auto it = acc.find(m);
                if (it == acc.end())
                    acc.emplace(std::move(m), ta.c * tb.c);
                else
                    it->second += ta.c * tb.c;
            }
        std::vector<Term> terms;
        terms.reserve(acc.size());
        for (auto& kv : acc)
            if (!kv.second.isZero()) terms.push_back({kv.first, kv.second});
        return fromTerms(a.ctx_, std::move(terms));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(unsigned e) const {
        Poly r = constant(ctx_, 1), b = *this;
        for (; e; e >>= 1) {
            if (e & 1) r = r * b;
            if (e > 1) b = b * b;
        }
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.t_.size() != b.t_.size()) return false;
        for (std::size_t i = 0; i < a.t_.size(); ++i)
            if (!(a.t_[i].c == b.t_[i].c) || !(a.t_[i].m == b.t_[i].m)) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // --- normalization ----------------------------------------------------

    // Signed content: p = content() * primitivePart(), where the primitive
    // part has coprime integer coefficients and positive leading coefficient.
    Rat content() const {
        if (isZero()) throw std::domain_error("Poly: content of zero");
        Rat g(0);
        for (const auto& t : t_) g = ratGcd(g, t.c);
        if (t_[0].c.isNegative()) g = -g;
        return g;
    }
    Poly primitivePart() const {
        if (isZero()) throw std::domain_error("Poly: primitivePart of zero");
        return scale(content().inv());
    }

    // --- structure queries --------------------------------------------------

    Poly partial(int v) const {
        Poly r(ctx_);
        std::vector<Term> terms;
        for (const auto& t : t_) {
            int e = t.m.exponent(v);
            if (e == 0) continue;
            Monomial m = t.m.div(Monomial::var(v, 1));
            terms.push_back({std::move(m), t.c * Rat(e)});
        }
        return fromTerms(ctx_, std::move(terms));
    }

    int maxExp(int v) const {
        int d = 0;
        for (const auto& t : t_) d = std::max(d, t.m.exponent(v));
        return d;
    }
    bool involves(int v) const {
        for (const auto& t : t_)
            if (t.m.exponent(v) > 0) return true;
        return false;
    }
    template <class Pred>
    bool involvesWhere(Pred pred) const {
        for (const auto& t : t_)
            for (const auto& p : t.m.e)
                if (pred(p.first)) return true;
        return false;
    }
    template <class Pred>
    int degreeWhere(Pred pred) const {  // max over terms of exponent sum of selected vars
        int d = 0;
        for (const auto& t : t_) {
            int s = 0;
            for (const auto& p : t.m.e)
                if (pred(p.first)) s += p.second;
            d = std::max(d, s);
        }
        return d;
    }

    // exp -> coefficient polynomial (with v removed); view as univariate in v.
    std::map<int, Poly> collect(int v) const {
        std::map<int, std::vector<Term>> buckets;
        for (const auto& t : t_) {
            int e = t.m.exponent(v);
            Monomial m = e ? t.m.div(Monomial::var(v, e)) : t.m;
            buckets[e].push_back({std::move(m), t.c});
        }
        std::map<int, Poly> r;
        for (auto& kv : buckets) r.emplace(kv.first, fromTerms(ctx_, std::move(kv.second)));
        return r;
    }
    Poly coeffOf(int v, int e) const {
        std::vector<Term> terms;
        for (const auto& t : t_)
            if (t.m.exponent(v) == e) terms.push_back({t.m.div(Monomial::var(v, e)), t.c});
        return fromTerms(ctx_, std::move(terms));
    }

    // --- substitution / evaluation -----------------------------------------

    Poly substVarPoly(int v, const Poly& repl) const {
        if (!involves(v)) return *this;
        auto cs = collect(v);
        int dmax = cs.rbegin()->first;
        Poly r(ctx_);
        for (int e = dmax; e >= 0; --e) {
            r = r * repl;
            auto it = cs.find(e);
            if (it != cs.end()) r += it->second;
        }
        return r;
    }

    // v -> num/den; returns the numerator p * den^d with d = max exponent of v.
    Poly substVarRational(int v, const Poly& num, const Poly& den, int* usedPower = nullptr) const {
        if (!involves(v)) {
            if (usedPower) *usedPower = 0;
            return *this;
        }
        auto cs = collect(v);
        int dmax = cs.rbegin()->first;
        if (usedPower) *usedPower = dmax;
        Poly r(ctx_);
        Poly denPow = constant(ctx_, 1);
        // sum over e descending: coeff[e]*num^e*den^(dmax-e), Horner in num.
        for (int e = dmax; e >= 0; --e) {
            r = r * num;
            auto it = cs.find(e);
            if (it != cs.end()) r += it->second * denPow;
            if (e > 0) denPow = denPow * den;
        }
        return r;
    }

    Poly evaluatePartial(const std::map<int, Rat>& vals) const {
        std::vector<Term> terms;
        for (const auto& t : t_) {
            Rat c = t.c;
            Monomial m;
            for (const auto& p : t.m.e) {
                auto it = vals.find(p.first);
                if (it == vals.end()) {
                    m.e.push_back(p);
                    m.deg += p.second;
                } else {
                    c *= it->second.pow((unsigned)p.second);
                }
            }
            if (!c.isZero()) terms.push_back({std::move(m), std::move(c)});
        }
        return fromTerms(ctx_, std::move(terms));
    }

    Rat evaluateAll(const std::map<int, Rat>& vals) const {
        Rat r(0);
        for (const auto& t : t_) {
            Rat c = t.c;
            for (const auto& p : t.m.e) {
                auto it = vals.find(p.first);
                if (it == vals.end()) throw std::domain_error("Poly: unassigned variable in evaluateAll");
                c *= it->second.pow((unsigned)p.second);
            }
            r += c;
        }
        return r;
    }

    // --- exact division (throws if not exact) ------------------------------

    Poly divExact(const Poly& q) const {
        if (q.isZero()) throw std::domain_error("Poly: division by zero polynomial");
        Poly r = *this, quot(ctx_);
        const Term& lq = q.leading();
        while (!r.isZero()) {
            const Term& lr = r.leading();
            if (!lq.m.divides(lr.m)) throw std::domain_error("Poly: inexact division");
            Monomial m = lr.m.div(lq.m);
            Rat c = lr.c / lq.c;
            quot.t_.push_back({m, c});
            r -= q.mulTerm(m, c);
        }
        return fromTerms(ctx_, std::move(quot.t_));
    }

    // --- context moves -----------------------------------------------------

    Poly remapTo(const CtxPtr& nctx, const std::function<int(int)>& varMap) const {
        std::vector<Term> terms;
        terms.reserve(t_.size());
        for (const auto& t : t_) {
            Monomial m;
            for (const auto& p : t.m.e) m = m.mul(Monomial::var(varMap(p.first), p.second));
            terms.push_back({std::move(m), t.c});
        }
        return fromTerms(nctx, std::move(terms));
    }

    // --- printing -----------------------------------------------------------

    std::string str() const {
        if (t_.empty()) return "0";
        const auto& pos = ctx_->rankPositions();
        std::string out;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            const Term& t = t_[i];
            bool neg = t.c.isNegative();
            if (i == 0)
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            Rat mag = t.c.abs();
            std::vector<std::pair<int, int>> vs(t.m.e.begin(), t.m.e.end());
            std::sort(vs.begin(), vs.end(),
                      [&](const auto& a, const auto& b) { return pos[a.first] < pos[b.first]; });
            bool needCoeff = !mag.isOne() || vs.empty();
            if (needCoeff) out += mag.str();
            for (std::size_t k = 0; k < vs.size(); ++k) {
                if (needCoeff || k > 0) out += "*";
                out += ctx_->varName(vs[k].first);
                if (vs[k].second > 1) out += "^" + std::to_string(vs[k].second);
            }
        }
        return out;
    }

    std::size_t hash() const {
        std::size_t h = 14695981039346656037ULL;
        for (const auto& t : t_) {
            h = (h ^ t.m.hash()) * 1099511628211ULL;
            h = (h ^ t.c.hash()) * 1099511628211ULL;
        }
        return h;
    }

    struct MonoHash {
        std::size_t operator()(const Monomial& m) const { return m.hash(); }
    };

    int cmpCanonical(const Monomial& a, const Monomial& b) const {
        return cmpDegRevLexRanked(a, b, ctx_->rankPositions());
    }

private:
    CtxPtr ctx_;
    std::vector<Term> t_;

    void requireSameCtx(const Poly& o) const {
        if (ctx_.get() != o.ctx_.get())
            throw std::domain_error("Poly: operands from different ring contexts");
    }

    void normalize() {
        std::sort(t_.begin(), t_.end(),
                  [this](const Term& a, const Term& b) { return cmpCanonical(a.m, b.m) > 0; });
        std::vector<Term> merged;
        merged.reserve(t_.size());
        for (auto& t : t_) {
            if (!merged.empty() && merged.back().m == t.m)
                merged.back().c += t.c;
            else
                merged.push_back(std::move(t));
        }
        t_.clear();
        for (auto& t : merged)
            if (!t.c.isZero()) t_.push_back(std::move(t));
    }
};

// "Equal up to a nonzero rational scalar": primitive parts coincide.
inline bool proportional(const Poly& a, const Poly& b) {
    if (a.isZero() || b.isZero()) return a.isZero() && b.isZero();
    return a.primitivePart() == b.primitivePart();
}

// deterministic total order on polynomials of one context: term count, then
// the canonical term sequence (monomials, then coefficients)
inline int cmpPolyCanonical(const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t i = 0; i < ta.size(); ++i) {
        int c = a.cmpCanonical(ta[i].m, tb[i].m);
        if (c != 0) return c;
        if (ta[i].c != tb[i].c) return ta[i].c < tb[i].c ? -1 : 1;
    }
    return 0;
}

// Classical pseudo-remainder of p by q in the variable v.
inline Poly prem(Poly p, const Poly& q, int v) {
    int dq = q.maxExp(v);
    if (dq == 0) throw std::domain_error("prem: divisor free of the variable");
    Poly lq = q.coeffOf(v, dq);
    while (!p.isZero()) {
        int dp = p.maxExp(v);
        if (dp < dq) break;
        Poly lp = p.coeffOf(v, dp);
        p = p * lq - lp * Poly::variable(p.ctx(), v, dp - dq) * q;
    }
    return p;
}

// Resultant of p and q with respect to v: Sylvester determinant via Bareiss
// fraction-free elimination (exact divisions stay polynomial).
inline Poly resultantVar(const Poly& p, const Poly& q, int v) {
    int m = p.maxExp(v), n = q.maxExp(v);
    if (m == 0 && n == 0) throw std::domain_error("resultant: both inputs free of the variable");
    auto ctx = p.ctx();
    auto coeff = [&](const Poly& f, int e) { return f.coeffOf(v, e); };
    int N = m + n;
    std::vector<std::vector<Poly>> a(N, std::vector<Poly>(N, Poly(ctx)));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c <= m; ++c) a[r][r + c] = coeff(p, m - c);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c <= n; ++c) a[n + r][r + c] = coeff(q, n - c);
    Poly prev = Poly::constant(ctx, 1);
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (a[k][k].isZero()) {
            int s = -1;
            for (int r = k + 1; r < N; ++r)
                if (!a[r][k].isZero()) {
                    s = r;
                    break;
                }
            if (s < 0) return Poly(ctx);  // resultant is zero
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (int r = k + 1; r < N; ++r)
            for (int c = k + 1; c < N; ++c)
                a[r][c] = (a[r][c] * a[k][k] - a[r][k] * a[k][c]).divExact(prev);
        for (int r = k + 1; r < N; ++r) a[r][k] = Poly(ctx);
        prev = a[k][k];
    }
    Poly res = a[N - 1][N - 1];
    return sign < 0 ? -res : res;
}

}  // namespace dalg
