// Exact truncated power series over Q: f(a+s) = sum c_k s^k + O(s^{T+1}).
// The verification oracle is built entirely on these.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace dalg {

struct TruncSeries {
    Rat a;                // expansion point
    std::vector<Rat> c;   // c[0..T]

    TruncSeries() = default;
    TruncSeries(Rat point, int T) : a(std::move(point)), c((std::size_t)T + 1, Rat(0)) {}

    int T() const { return (int)c.size() - 1; }
    const Rat& at(int k) const { return c[(std::size_t)k]; }

    static TruncSeries constant(Rat point, Rat value, int T) {
        TruncSeries s(std::move(point), T);
        s.c[0] = std::move(value);
        return s;
    }
    // the identity function x, expanded at a: a + s.
    static TruncSeries identity(Rat point, int T) {
        TruncSeries s(point, T);
        s.c[0] = point;
        if (T >= 1) s.c[1] = Rat(1);
        return s;
    }

    TruncSeries truncated(int T) const {
        if (T >= this->T()) return *this;
        TruncSeries r(a, T);
        for (int k = 0; k <= T; ++k) r.c[k] = c[k];
        return r;
    }

    bool sameGrid(const TruncSeries& o) const { return a == o.a && T() == o.T(); }

    friend TruncSeries operator+(const TruncSeries& f, const TruncSeries& g) {
        f.require(g);
        TruncSeries r = f;
        for (int k = 0; k <= r.T(); ++k) r.c[k] += g.c[k];
        return r;
    }
    friend TruncSeries operator-(const TruncSeries& f, const TruncSeries& g) {
        f.require(g);
        TruncSeries r = f;
        for (int k = 0; k <= r.T(); ++k) r.c[k] -= g.c[k];
        return r;
    }
    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend TruncSeries operator*(const TruncSeries& f, const TruncSeries& g) {
        f.require(g);
        TruncSeries r(f.a, f.T());
        for (int i = 0; i <= f.T(); ++i) {
            if (f.c[i].isZero()) continue;
            for (int j = 0; i + j <= f.T(); ++j) {
                if (g.c[j].isZero()) continue;
                r.c[i + j] += f.c[i] * g.c[j];
            }
        }
        return r;
    }
    TruncSeries scale(const Rat& q) const {
        TruncSeries r = *this;
        for (auto& x : r.c) x *= q;
        return r;
    }

    TruncSeries pow(unsigned e) const {
        TruncSeries r = constant(a, Rat(1), T()), b = *this;
        for (; e; e >>= 1) {
            if (e & 1) r = r * b;
            if (e > 1) b = b * b;
        }
        return r;
    }

    // 1/f, requires c0 != 0.
    TruncSeries reciprocal() const {
        if (c[0].isZero()) throw std::domain_error("series reciprocal: zero constant term");
        TruncSeries r(a, T());
        r.c[0] = c[0].inv();
        for (int k = 1; k <= T(); ++k) {
            Rat s(0);
            for (int i = 1; i <= k; ++i) s += c[i] * r.c[k - i];
            r.c[k] = -s * r.c[0];
        }
        return r;
    }
    friend TruncSeries operator/(const TruncSeries& f, const TruncSeries& g) {
        return f * g.reciprocal();
    }

    // termwise derivative: d/dx f(a+s); one coefficient of precision is lost.
    TruncSeries derivative() const {
        if (T() < 1) throw std::domain_error("series derivative: truncation too small");
        TruncSeries r(a, T() - 1);
        for (int k = 0; k < T(); ++k) r.c[k] = c[k + 1] * Rat(k + 1);
        return r;
    }
    // antiderivative with chosen constant term.
    TruncSeries integral(Rat c0) const {
        TruncSeries r(a, T() + 1);
        r.c[0] = std::move(c0);
        for (int k = 0; k <= T(); ++k) r.c[k + 1] = c[k] / Rat(k + 1);
        return r;
    }

    // f ∘ g: requires f expanded at the inner value, f.a == g.c[0]; the
    // result is expanded at g.a.
    TruncSeries compose(const TruncSeries& g) const {
        if (!(a == g.c[0]))
            throw std::domain_error("series compose: outer expansion point must equal inner value");
        int T = std::min(this->T(), g.T());
        TruncSeries h = g.truncated(T);
        h.c[0] = Rat(0);  // h = g - g(0), h has no constant term
        TruncSeries r(g.a, T);
        // Horner: r = (((c_T) * h + c_{T-1}) * h + ...) + c_0
        for (int k = T; k >= 0; --k) {
            r = r * h;
            r.c[0] += c[k];
        }
        return r;
    }

    // Compositional inverse: for f with f'(a) != 0, returns the series of
    // f^(-1) at b = f(a), so that f^(-1)(f(x)) = x to truncation.
    TruncSeries reversion() const {
        if (T() < 1 || c[1].isZero())
            throw std::domain_error("series reversion: first-order coefficient must be nonzero");
        int T = this->T();
        // h = f - f(a) has h_0 = 0, h_1 != 0.  Solve sum_j d_j h^j = s.
        TruncSeries h = *this;
        h.c[0] = Rat(0);
        std::vector<TruncSeries> hpow;  // h^1..h^T
        hpow.push_back(h);
        for (int j = 2; j <= T; ++j) hpow.push_back(hpow.back() * h);
        TruncSeries r(c[0], T);  // expanded at b = f(a)
        r.c[0] = a;              // value of the inverse at b
        std::vector<Rat> d((std::size_t)T + 1, Rat(0));
        for (int m = 1; m <= T; ++m) {
            Rat s(0);
            for (int j = 1; j < m; ++j) s += d[j] * hpow[(std::size_t)j - 1].c[m];
            Rat target = m == 1 ? Rat(1) : Rat(0);
            d[(std::size_t)m] = (target - s) / hpow[(std::size_t)m - 1].c[m];
            r.c[(std::size_t)m] = d[(std::size_t)m];
        }
        return r;
    }

    // Square root with chosen branch: w0 * w0 must equal c0; progressive
    // solving of w*w = f.
    TruncSeries sqrtWith(const Rat& w0) const {
        if (!(w0 * w0 == c[0])) throw std::domain_error("series sqrt: branch value mismatch");
        if (w0.isZero()) throw std::domain_error("series sqrt: zero constant term unsupported");
        TruncSeries r(a, T());
        r.c[0] = w0;
        for (int k = 1; k <= T(); ++k) {
            Rat s(0);
            for (int i = 1; i < k; ++i) s += r.c[i] * r.c[k - i];
            r.c[k] = (c[k] - s) / (Rat(2) * w0);
        }
        return r;
    }

    bool allZero(int upto) const {
        for (int k = 0; k <= upto && k <= T(); ++k)
            if (!c[k].isZero()) return false;
        return true;
    }
    // index of the first nonzero coefficient ≤ upto, or -1.
    int firstNonzero(int upto) const {
        for (int k = 0; k <= upto && k <= T(); ++k)
            if (!c[k].isZero()) return k;
        return -1;
    }

    std::string str() const {
        std::string s = "[";
        for (int k = 0; k <= T(); ++k) {
            if (k) s += ", ";
            s += c[k].str();
        }
        return s + "]";
    }

private:
    void require(const TruncSeries& o) const {
        if (!sameGrid(o))
            throw std::domain_error("series: mismatched expansion point or truncation");
    }
};

}  // namespace dalg
