// Sparse monomials and monomial orders.
//
// A monomial stores (variable id, exponent) pairs sorted by id, plus its
// cached total degree.  Order comparisons come in two flavors:
//   * generic: driven by a significance array pos[id] (0 = most significant),
//     used for canonical printing order on arbitrary contexts;
//   * identity: assumes ids already equal significance positions, used by the
//     Gröbner kernel after it renumbers variables for a run (hot path).
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace dalg {

struct Monomial {
    std::vector<std::pair<std::int32_t, std::int32_t>> e;  // sorted by var id, exponents > 0
    std::int32_t deg = 0;

    static Monomial one() { return {}; }
    static Monomial var(int v, int exp = 1) {
        Monomial m;
        if (exp > 0) {
            m.e.emplace_back(v, exp);
            m.deg = exp;
        }
        return m;
    }

    bool isOne() const { return e.empty(); }

    int exponent(int v) const {
        for (const auto& p : e)
            if (p.first == v) return p.second;
        return 0;
    }

    Monomial mul(const Monomial& o) const {
        Monomial r;
        r.e.reserve(e.size() + o.e.size());
        std::size_t i = 0, j = 0;
        while (i < e.size() || j < o.e.size()) {
            if (j == o.e.size() || (i < e.size() && e[i].first < o.e[j].first))
                r.e.push_back(e[i++]);
            else if (i == e.size() || o.e[j].first < e[i].first)
                r.e.push_back(o.e[j++]);
            else {
                r.e.emplace_back(e[i].first, e[i].second + o.e[j].second);
                ++i, ++j;
            }
        }
        r.deg = deg + o.deg;
        return r;
    }

    // Does this divide m?
    bool divides(const Monomial& m) const {
        std::size_t j = 0;
        for (const auto& p : e) {
            while (j < m.e.size() && m.e[j].first < p.first) ++j;
            if (j == m.e.size() || m.e[j].first != p.first || m.e[j].second < p.second) return false;
        }
        return true;
    }

    // this / o, assuming o divides this.
    Monomial div(const Monomial& o) const {
        Monomial r;
        std::size_t j = 0;
        for (const auto& p : e) {
            int sub = 0;
            while (j < o.e.size() && o.e[j].first < p.first) ++j;
            if (j < o.e.size() && o.e[j].first == p.first) sub = o.e[j].second;
            if (p.second - sub > 0) r.e.emplace_back(p.first, p.second - sub);
        }
        r.deg = deg - o.deg;
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r;
        std::size_t i = 0, j = 0;
        while (i < a.e.size() || j < b.e.size()) {
            if (j == b.e.size() || (i < a.e.size() && a.e[i].first < b.e[j].first))
                r.e.push_back(a.e[i++]);
            else if (i == a.e.size() || b.e[j].first < a.e[i].first)
                r.e.push_back(b.e[j++]);
            else {
                r.e.emplace_back(a.e[i].first, std::max(a.e[i].second, b.e[j].second));
                ++i, ++j;
            }
        }
        for (const auto& p : r.e) r.deg += p.second;
        return r;
    }

    static Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial r;
        std::size_t i = 0, j = 0;
        while (i < a.e.size() && j < b.e.size()) {
            if (a.e[i].first < b.e[j].first)
                ++i;
            else if (b.e[j].first < a.e[i].first)
                ++j;
            else {
                r.e.emplace_back(a.e[i].first, std::min(a.e[i].second, b.e[j].second));
                ++i, ++j;
            }
        }
        for (const auto& p : r.e) r.deg += p.second;
        return r;
    }

    static bool coprime(const Monomial& a, const Monomial& b) {
        std::size_t i = 0, j = 0;
        while (i < a.e.size() && j < b.e.size()) {
            if (a.e[i].first < b.e[j].first) ++i;
            else if (b.e[j].first < a.e[i].first) ++j;
            else return false;
        }
        return true;
    }

    bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }

    std::size_t hash() const {
        std::size_t h = 1469598103934665603ULL;
        for (const auto& p : e) {
            h = (h ^ (std::size_t)p.first) * 1099511628211ULL;
            h = (h ^ (std::size_t)p.second) * 1099511628211ULL;
        }
        return h;
    }
};

// --- identity-significance comparisons (var id == significance position) ---

// Degree-reverse-lexicographic; returns >0 if a > b.  Tie-break: scanning
// from the least significant variable (largest id), the monomial with the
// smaller exponent at the first difference is the larger one.
inline int cmpDegRevLexIdentity(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    std::size_t i = a.e.size(), j = b.e.size();
    while (i > 0 || j > 0) {
        if (j == 0 || (i > 0 && a.e[i - 1].first > b.e[j - 1].first))
            return -1;  // a has the less significant extra variable -> a smaller
        if (i == 0 || (j > 0 && b.e[j - 1].first > a.e[i - 1].first))
            return 1;
        if (a.e[i - 1].second != b.e[j - 1].second)
            return a.e[i - 1].second > b.e[j - 1].second ? -1 : 1;
        --i, --j;
    }
    return 0;
}

// Pure lexicographic with var id 0 most significant; returns >0 if a > b.
inline int cmpLexIdentity(const Monomial& a, const Monomial& b) {
    std::size_t i = 0, j = 0;
    while (i < a.e.size() || j < b.e.size()) {
        if (j == b.e.size() || (i < a.e.size() && a.e[i].first < b.e[j].first)) return 1;
        if (i == a.e.size() || b.e[j].first < a.e[i].first) return -1;
        if (a.e[i].second != b.e[j].second) return a.e[i].second > b.e[j].second ? 1 : -1;
        ++i, ++j;
    }
    return 0;
}

// Block elimination order with a lexicographic tail: the elimination block
// (ids < nElim) compares degree-first as in cmpBlockIdentity, but the kept
// variables compare purely lexicographically.  In the resulting Gröbner
// basis, the kept-block part has the full elimination-tower property: for
// every prefix of the kept variables, the basis elements free of the later
// ones generate the ideal's contraction — which is what exposes minimal-order
// relations among the kept jets.
inline int cmpBlockKeepLexIdentity(const Monomial& a, const Monomial& b, int nElim) {
    int da = 0, db = 0;
    for (const auto& p : a.e)
        if (p.first < nElim) da += p.second;
    for (const auto& p : b.e)
        if (p.first < nElim) db += p.second;
    if (da != db) return da < db ? -1 : 1;
    // revlex within the block (scan block vars from least significant)
    {
        std::size_t i = a.e.size(), j = b.e.size();
        while (i > 0 && a.e[i - 1].first >= nElim) --i;
        while (j > 0 && b.e[j - 1].first >= nElim) --j;
        while (i > 0 || j > 0) {
            if (j == 0 || (i > 0 && a.e[i - 1].first > b.e[j - 1].first)) return -1;
            if (i == 0 || (j > 0 && b.e[j - 1].first > a.e[i - 1].first)) return 1;
            if (a.e[i - 1].second != b.e[j - 1].second)
                return a.e[i - 1].second > b.e[j - 1].second ? -1 : 1;
            --i, --j;
        }
    }
    // rest: lex on variables >= nElim, most significant (smallest id) first
    {
        std::size_t i = 0, j = 0;
        while (i < a.e.size() && a.e[i].first < nElim) ++i;
        while (j < b.e.size() && b.e[j].first < nElim) ++j;
        while (i < a.e.size() || j < b.e.size()) {
            if (j == b.e.size() || (i < a.e.size() && a.e[i].first < b.e[j].first)) return 1;
            if (i == a.e.size() || b.e[j].first < a.e[i].first) return -1;
            if (a.e[i].second != b.e[j].second) return a.e[i].second > b.e[j].second ? 1 : -1;
            ++i, ++j;
        }
    }
    return 0;
}

// Block elimination order: variables with id < nElim form the elimination
// block; compare the block parts by degrevlex first, then the remaining parts
// by degrevlex.  Any monomial containing a block variable exceeds any
// monomial free of them (degree-first within the block).
inline int cmpBlockIdentity(const Monomial& a, const Monomial& b, int nElim) {
    int da = 0, db = 0;
    for (const auto& p : a.e)
        if (p.first < nElim) da += p.second;
    for (const auto& p : b.e)
        if (p.first < nElim) db += p.second;
    if (da != db) return da < db ? -1 : 1;
    // revlex within the block (scan block vars from least significant).
    {
        std::size_t i = a.e.size(), j = b.e.size();
        while (i > 0 && a.e[i - 1].first >= nElim) --i;
        while (j > 0 && b.e[j - 1].first >= nElim) --j;
        while (i > 0 || j > 0) {
            if (j == 0 || (i > 0 && a.e[i - 1].first > b.e[j - 1].first)) return -1;
            if (i == 0 || (j > 0 && b.e[j - 1].first > a.e[i - 1].first)) return 1;
            if (a.e[i - 1].second != b.e[j - 1].second)
                return a.e[i - 1].second > b.e[j - 1].second ? -1 : 1;
            --i, --j;
        }
    }
    // rest: degrevlex on variables >= nElim.
    if (a.deg - da != b.deg - db) return (a.deg - da) < (b.deg - db) ? -1 : 1;
    {
        std::size_t i = a.e.size(), j = b.e.size();
        while (i > 0 || j > 0) {
            bool ai = i > 0 && a.e[i - 1].first >= nElim;
            bool bj = j > 0 && b.e[j - 1].first >= nElim;
            if (!ai && !bj) return 0;
            if (!bj || (ai && a.e[i - 1].first > b.e[j - 1].first)) return -1;
            if (!ai || (bj && b.e[j - 1].first > a.e[i - 1].first)) return 1;
            if (a.e[i - 1].second != b.e[j - 1].second)
                return a.e[i - 1].second > b.e[j - 1].second ? -1 : 1;
            --i, --j;
        }
    }
    return 0;
}

// --- generic comparison driven by a significance array -------------------

// pos[id] = significance position, 0 = most significant.  Slower than the
// identity variants (materializes position/exponent pairs); used outside the
// Gröbner kernel only.
inline int cmpDegRevLexRanked(const Monomial& a, const Monomial& b, const std::vector<int>& pos) {
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    thread_local std::vector<std::pair<int, int>> ta, tb;
    ta.clear();
    tb.clear();
    for (const auto& p : a.e) ta.emplace_back(pos[p.first], p.second);
    for (const auto& p : b.e) tb.emplace_back(pos[p.first], p.second);
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    std::size_t i = ta.size(), j = tb.size();
    while (i > 0 || j > 0) {
        if (j == 0 || (i > 0 && ta[i - 1].first > tb[j - 1].first)) return -1;
        if (i == 0 || (j > 0 && tb[j - 1].first > ta[i - 1].first)) return 1;
        if (ta[i - 1].second != tb[j - 1].second) return ta[i - 1].second > tb[j - 1].second ? -1 : 1;
        --i, --j;
    }
    return 0;
}

}  // namespace dalg
