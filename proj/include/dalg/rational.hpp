// Exact arbitrary-precision rational numbers: the coefficient field of the
// whole engine.  Thin wrapper over GMP (through Boost.Multiprecision) that
// guarantees the canonical-form invariants (denominator > 0, gcd(|num|, den)
// = 1, zero stored as 0/1) at every construction boundary; GMP's arithmetic
// preserves canonical form between canonical operands.
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace dalg {

using Int = boost::multiprecision::mpz_int;

inline Int intGcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int intLcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int intAbs(const Int& a) { return a < 0 ? Int(-a) : a; }

class Rat {
public:
    Rat() : v_(0) {}
    Rat(long long n) : v_(n) {}                     // NOLINT: implicit by design
    Rat(const Int& n) : v_(n) {}                    // NOLINT: implicit by design
    Rat(const Int& n, const Int& d) : v_(n) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        v_ /= boost::multiprecision::mpq_rational(d);
        canonicalize();
    }
    explicit Rat(const std::string& s) : v_(s) { canonicalize(); }

    static Rat fromRaw(boost::multiprecision::mpq_rational q) {
        Rat r;
        r.v_ = std::move(q);
        r.canonicalize();
        return r;
    }

    Int num() const { return Int(boost::multiprecision::numerator(v_)); }
    Int den() const { return Int(boost::multiprecision::denominator(v_)); }

    bool isZero() const { return v_ == 0; }
    bool isOne() const { return v_ == 1; }
    bool isInteger() const { return den() == 1; }
    bool isNegative() const { return v_ < 0; }
    // bits of the larger of |numerator| and denominator (0 for 0 and ±1)
    std::size_t bitLength() const {
        Int n = num(), d = den();
        if (n < 0) n = -n;
        std::size_t bn = (n == 0) ? 0 : (std::size_t)boost::multiprecision::msb(n) + 1;
        std::size_t bd = (d == 1) ? 0 : (std::size_t)boost::multiprecision::msb(d) + 1;
        return std::max(bn, bd);
    }
    int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

    Rat operator-() const { return fromCanonical(-v_); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.isZero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat abs() const { return v_ < 0 ? fromCanonical(-v_) : *this; }
    Rat inv() const {
        if (isZero()) throw std::domain_error("Rat: inverse of zero");
        return fromCanonical(1 / v_);
    }
    Rat pow(unsigned e) const {
        Rat r = 1, b = *this;
        for (; e; e >>= 1, b *= b)
            if (e & 1) r *= b;
        return r;
    }

    std::string str() const {
        std::string s = num().str();
        if (!isInteger()) s += "/" + den().str();
        return s;
    }

    std::size_t hash() const {
        std::size_t h = std::hash<std::string>{}(num().str());
        return h ^ (std::hash<std::string>{}(den().str()) + 0x9e3779b97f4a7c15ULL + (h << 6));
    }

private:
    boost::multiprecision::mpq_rational v_;

    static Rat fromCanonical(boost::multiprecision::mpq_rational q) {
        Rat r;
        r.v_ = std::move(q);
        return r;
    }
    void canonicalize() { mpq_canonicalize(v_.backend().data()); }
};

// gcd on rationals (used for polynomial content): gcd(a/b, c/d) =
// gcd(a,c)/lcm(b,d).  Nonnegative; gcd(0, q) = |q|.
inline Rat ratGcd(const Rat& a, const Rat& b) {
    if (a.isZero()) return b.abs();
    if (b.isZero()) return a.abs();
    return Rat(intGcd(a.num(), b.num()), intLcm(a.den(), b.den()));
}

}  // namespace dalg
