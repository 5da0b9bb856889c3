// Expression grammar for equations, relations, and model fields.
//
//   expr     := ('+'|'-')? term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := base ('^' uint)?
//   base     := rational | name | deriv | '(' expr ')'
//   deriv    := name '\''+ | name '^(' uint ')'
//   rational := int ('/' uint)?
//   name     := [A-Za-z][A-Za-z0-9_]*
//
// The optional leading sign is a deliberate superset of the core grammar so
// that inputs like "-(z')^2+z+x+1" parse.  `y^(3)` is the third derivative,
// `y^3` the third power.  Division is parsed uniformly; equation sources
// reject division by non-constant expressions, relation/model sources accept
// it (rational expressions).
#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "context.hpp"
#include "poly.hpp"

namespace dalg {

struct ParseError : std::runtime_error {
    int column;
    ParseError(const std::string& msg, int col)
        : std::runtime_error(msg + " (column " + std::to_string(col + 1) + ")"), column(col) {}
};

// A rational expression num/den with polynomial parts.  No gcd cancellation
// (downstream saturation makes it unnecessary), but constant denominators are
// folded into the numerator.
struct RatExpr {
    Poly num, den;

    static RatExpr of(Poly p) {
        Poly one = Poly::constant(p.ctx(), 1);
        return {std::move(p), std::move(one)};
    }
    bool denIsConstant() const { return den.isConstant(); }

    RatExpr normalized() const {
        if (den.isConstant()) {
            Rat c = den.constantValue();
            if (c.isZero()) throw std::domain_error("RatExpr: zero denominator");
            return {num.scale(c.inv()), Poly::constant(num.ctx(), 1)};
        }
        return *this;
    }

    // Cancel the common monomial factor of numerator and denominator and make
    // the denominator primitive.  Not a full gcd, but it removes the growth
    // that repeated un-cancelled arithmetic otherwise piles up.
    RatExpr reduced() const {
        if (num.isZero()) return {num, Poly::constant(den.ctx(), Rat(1))};
        if (den.isZero()) throw std::domain_error("RatExpr: zero denominator");
        Monomial g = num.terms()[0].m;
        for (const auto& t : num.terms()) {
            if (g.isOne()) break;
            g = Monomial::gcd(g, t.m);
        }
        for (const auto& t : den.terms()) {
            if (g.isOne()) break;
            g = Monomial::gcd(g, t.m);
        }
        Poly n2 = num, d2 = den;
        if (!g.isOne()) {
            auto strip = [&](const Poly& p) {
                std::vector<Term> ts;
                ts.reserve(p.terms().size());
                for (const auto& t : p.terms()) ts.push_back({t.m.div(g), t.c});
                return Poly::fromTerms(p.ctx(), std::move(ts));
            };
            n2 = strip(num);
            d2 = strip(den);
        }
        Rat dc = d2.content();
        return RatExpr{n2.scale(dc.inv()), d2.scale(dc.inv())}.normalized();
    }
    RatExpr operator-() const { return {-num, den}; }
    friend RatExpr operator+(const RatExpr& a, const RatExpr& b) {
        return RatExpr{a.num * b.den + b.num * a.den, a.den * b.den}.normalized();
    }
    friend RatExpr operator-(const RatExpr& a, const RatExpr& b) { return a + (-b); }
    friend RatExpr operator*(const RatExpr& a, const RatExpr& b) {
        return RatExpr{a.num * b.num, a.den * b.den}.normalized();
    }
    friend RatExpr operator/(const RatExpr& a, const RatExpr& b) {
        if (b.num.isZero()) throw std::domain_error("RatExpr: division by zero");
        return RatExpr{a.num * b.den, a.den * b.num}.normalized();
    }
    RatExpr pow(unsigned e) const {
        RatExpr r = of(Poly::constant(num.ctx(), 1)), b = *this;
        for (; e; e >>= 1) {
            if (e & 1) r = r * b;
            if (e > 1) b = b * b;
        }
        return r;
    }
};

namespace detail {

enum class Tok { Int, Name, Prime, Pow, LParen, RParen, Plus, Minus, Star, Slash, Eq, End };

struct Token {
    Tok kind;
    std::string text;
    int col;
};

inline std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace((unsigned char)c)) {
            ++i;
            continue;
        }
        int col = (int)i;
        if (std::isdigit((unsigned char)c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            out.push_back({Tok::Int, s.substr(i, j - i), col});
            i = j;
        } else if (std::isalpha((unsigned char)c)) {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum((unsigned char)s[j]) || s[j] == '_'))
                ++j;
            out.push_back({Tok::Name, s.substr(i, j - i), col});
            i = j;
        } else {
            switch (c) {
                case '\'': out.push_back({Tok::Prime, "'", col}); break;
                case '^': out.push_back({Tok::Pow, "^", col}); break;
                case '(': out.push_back({Tok::LParen, "(", col}); break;
                case ')': out.push_back({Tok::RParen, ")", col}); break;
                case '+': out.push_back({Tok::Plus, "+", col}); break;
                case '-': out.push_back({Tok::Minus, "-", col}); break;
                case '*': out.push_back({Tok::Star, "*", col}); break;
                case '/': out.push_back({Tok::Slash, "/", col}); break;
                case '=': out.push_back({Tok::Eq, "=", col}); break;
                default:
                    throw ParseError(std::string("unexpected character '") + c + "'", col);
            }
            ++i;
        }
    }
    out.push_back({Tok::End, "", (int)s.size()});
    return out;
}

}  // namespace detail

class ExprParser {
public:
    // allowRationalDivision: division by non-constant expressions permitted
    // (relations, model fields); equation sources pass false.
    ExprParser(CtxPtr ctx, bool allowRationalDivision)
        : ctx_(std::move(ctx)), allowRational_(allowRationalDivision) {}

    RatExpr parse(const std::string& s) {
        toks_ = detail::lex(s);
        pos_ = 0;
        RatExpr e = parseExpr();
        expect(detail::Tok::End, "end of input");
        return e.normalized();
    }

    // Equation source "p" or "lhs = rhs" (converted to lhs - rhs); the result
    // must clear to a polynomial (constant denominators only).
    Poly parseEquation(const std::string& s) {
        toks_ = detail::lex(s);
        pos_ = 0;
        RatExpr lhs = parseExpr();
        if (cur().kind == detail::Tok::Eq) {
            ++pos_;
            RatExpr rhs = parseExpr();
            lhs = lhs - rhs;
        }
        expect(detail::Tok::End, "end of input");
        lhs = lhs.normalized();
        if (!lhs.denIsConstant())
            throw ParseError(
                "division by a non-constant expression is not allowed in an equation "
                "(rational expressions belong in relations/model fields)",
                0);
        return lhs.num;
    }

    // Relation "w = <expr>"; returns the output name and the expression.
    static std::pair<std::string, std::string> splitRelation(const std::string& s) {
        auto toks = detail::lex(s);
        if (toks.size() < 3 || toks[0].kind != detail::Tok::Name || toks[1].kind != detail::Tok::Eq)
            throw ParseError("relation must have the form \"name = expression\"", 0);
        std::size_t eq = s.find('=');
        std::string name = toks[0].text;
        return {name, s.substr(eq + 1)};
    }

    // All names that must be treated as differential functions: every name
    // that is not the independent variable and not a declared parameter, in
    // order of first occurrence.
    static std::vector<std::string> scanFunctionNames(const std::string& s, const std::string& indep,
                                                      const std::vector<std::string>& params) {
        std::vector<std::string> fns;
        for (const auto& tk : detail::lex(s)) {
            if (tk.kind != detail::Tok::Name) continue;
            if (tk.text == indep) continue;
            bool isParam = false;
            for (const auto& p : params)
                if (p == tk.text) isParam = true;
            if (isParam) continue;
            bool seen = false;
            for (const auto& f : fns)
                if (f == tk.text) seen = true;
            if (!seen) fns.push_back(tk.text);
        }
        return fns;
    }

private:
    CtxPtr ctx_;
    bool allowRational_;
    std::vector<detail::Token> toks_;
    std::size_t pos_ = 0;

    const detail::Token& cur() const { return toks_[pos_]; }
    void expect(detail::Tok k, const std::string& what) {
        if (cur().kind != k) throw ParseError("expected " + what, cur().col);
        if (k != detail::Tok::End) ++pos_;
    }

    RatExpr parseExpr() {
        bool neg = false;
        if (cur().kind == detail::Tok::Plus || cur().kind == detail::Tok::Minus) {
            neg = cur().kind == detail::Tok::Minus;
            ++pos_;
        }
        RatExpr e = parseTerm();
        if (neg) e = -e;
        while (cur().kind == detail::Tok::Plus || cur().kind == detail::Tok::Minus) {
            bool minus = cur().kind == detail::Tok::Minus;
            ++pos_;
            RatExpr t = parseTerm();
            e = minus ? e - t : e + t;
        }
        return e;
    }

    RatExpr parseTerm() {
        RatExpr e = parseFactor();
        while (cur().kind == detail::Tok::Star || cur().kind == detail::Tok::Slash) {
            bool div = cur().kind == detail::Tok::Slash;
            int col = cur().col;
            ++pos_;
            RatExpr f = parseFactor();
            if (div) {
                if (f.num.isZero()) throw ParseError("division by zero", col);
                RatExpr q = e / f;
                if (!allowRational_ && !q.denIsConstant())
                    throw ParseError("division by a non-constant expression is not allowed here", col);
                e = q;
            } else {
                e = e * f;
            }
        }
        return e;
    }

    RatExpr parseFactor() {
        RatExpr b = parseBase();
        if (cur().kind == detail::Tok::Pow) {
            // '^' uint — a parenthesized exponent would be a derivative marker,
            // which parseBase already consumed for names; here only powers remain.
            ++pos_;
            if (cur().kind != detail::Tok::Int)
                throw ParseError("expected an integer exponent after '^'", cur().col);
            unsigned e = parseUint(cur().text, cur().col);
            ++pos_;
            b = b.pow(e);
        }
        return b;
    }

    RatExpr parseBase() {
        const detail::Token& tk = cur();
        switch (tk.kind) {
            case detail::Tok::Int: {
                ++pos_;
                return RatExpr::of(Poly::constant(ctx_, Rat(Int(tk.text))));
            }
            case detail::Tok::LParen: {
                ++pos_;
                RatExpr e = parseExpr();
                expect(detail::Tok::RParen, "')'");
                return e;
            }
            case detail::Tok::Name: {
                ++pos_;
                return parseNameSuffix(tk);
            }
            default:
                throw ParseError("expected a number, name, or '('", tk.col);
        }
    }

    // name, name'..., name^(k) — resolves to a ring variable.
    RatExpr parseNameSuffix(const detail::Token& nameTok) {
        const std::string& name = nameTok.text;
        int deriv = 0;
        bool derivMarked = false;
        while (cur().kind == detail::Tok::Prime) {
            ++deriv;
            derivMarked = true;
            ++pos_;
        }
        if (!derivMarked && cur().kind == detail::Tok::Pow &&
            toks_[pos_ + 1].kind == detail::Tok::LParen) {
            // '^(' uint ')' — derivative marker.
            pos_ += 2;
            if (cur().kind != detail::Tok::Int)
                throw ParseError("expected a derivative order after '^('", cur().col);
            deriv = (int)parseUint(cur().text, cur().col);
            ++pos_;
            expect(detail::Tok::RParen, "')' closing the derivative marker");
            derivMarked = true;
        }

        int fn = ctx_->fnIndex(name);
        if (fn >= 0)
            return RatExpr::of(Poly::variable(ctx_, ctx_->diffVar(fn, deriv)));
        if (derivMarked) {
            if (name == ctx_->indep() || ctx_->paramIndex(name) >= 0)
                throw ParseError("'" + name + "' is not a function; it cannot be differentiated",
                                 nameTok.col);
            throw ParseError("unknown function '" + name + "'" + candidates(), nameTok.col);
        }
        if (name == ctx_->indep())
            return RatExpr::of(Poly::variable(ctx_, ctx_->indepVar()));
        int pi = ctx_->paramIndex(name);
        if (pi >= 0) return RatExpr::of(Poly::variable(ctx_, ctx_->paramVar(pi)));
        throw ParseError("unknown name '" + name + "'" + candidates(), nameTok.col);
    }

    std::string candidates() const {
        std::string s = "; declared:";
        for (const auto& f : ctx_->fns()) s += " " + f;
        s += " " + ctx_->indep();
        for (const auto& p : ctx_->params()) s += " " + p;
        return s;
    }

    static unsigned parseUint(const std::string& t, int col) {
        if (t.size() > 4) throw ParseError("exponent too large", col);
        return (unsigned)std::stoul(t);
    }
};

}  // namespace dalg
