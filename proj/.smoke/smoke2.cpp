#include <cassert>
#include <iostream>

#include "dalg/groebner.hpp"
#include "dalg/parser.hpp"

using namespace dalg;

static void show(const char* label, const std::vector<Poly>& B) {
    std::cout << label << " {\n";
    for (auto& g : B) std::cout << "  " << g.str() << "\n";
    std::cout << "}\n";
}

int main() {
    // plain degrevlex: <x^2+y^2-1, x-y> with y,z as "functions" of order 0?
    // Use function jet vars as ring vars: f, g order-0 diff vars.
    {
        auto ctx = Context::make({"f", "g"}, "x", {});
        ExprParser P(ctx, false);
        Poly a = P.parse("f^2 + g^2 - 1").num;
        Poly b = P.parse("f - g").num;
        auto res = groebnerBasis(ctx, {a, b});
        show("GB<f^2+g^2-1, f-g>", res.basis);
        assert(res.basis.size() == 2);
        // expect f - g and 2g^2 - 1
        Poly expect = P.parse("2*g^2 - 1").num;
        bool found = false;
        for (auto& q : res.basis) found = found || q == expect;
        assert(found);
    }
    // saturation <f*g> : f^inf = <g> via Rabinowitsch
    {
        auto ctx = Context::make({"f", "g"}, "x", {});
        int t = ctx->auxVar(0);
        Poly fg = Poly::variable(ctx, ctx->diffVar(0, 0)) * Poly::variable(ctx, ctx->diffVar(1, 0));
        Poly rab = Poly::variable(ctx, t) * Poly::variable(ctx, ctx->diffVar(0, 0)) -
                   Poly::constant(ctx, Rat(1));
        auto res = groebnerEliminate(ctx, {fg, rab}, {t});
        auto sub = elimSubset(res.basis, {t});
        show("sat(<fg>, f)", sub);
        assert(sub.size() == 1);
        assert(sub[0] == Poly::variable(ctx, ctx->diffVar(1, 0)));
    }
    // saturation <f^2> : f^inf = <1>
    {
        auto ctx = Context::make({"f"}, "x", {});
        int t = ctx->auxVar(0);
        Poly f2 = Poly::variable(ctx, ctx->diffVar(0, 0)).pow(2);
        Poly rab = Poly::variable(ctx, t) * Poly::variable(ctx, ctx->diffVar(0, 0)) -
                   Poly::constant(ctx, Rat(1));
        auto res = groebnerEliminate(ctx, {f2, rab}, {t});
        auto sub = elimSubset(res.basis, {t});
        show("sat(<f^2>, f)", sub);
        assert(sub.size() == 1 && sub[0].isConstant());
    }
    // elimination soundness on a tiny parametric curve: w = f + g, f^2 = 2,
    // g^2 = 3  ->  eliminate f, g: minimal poly of sqrt2+sqrt3: w^4-10w^2+1
    {
        auto ctx = Context::make({"f", "g", "w"}, "x", {});
        ExprParser P(ctx, false);
        Poly a = P.parse("f^2 - 2").num;
        Poly b = P.parse("g^2 - 3").num;
        Poly r = P.parse("w - f - g").num;
        auto res = groebnerEliminate(ctx, {a, b, r},
                                     {ctx->diffVar(0, 0), ctx->diffVar(1, 0)});
        auto sub = elimSubset(res.basis, {ctx->diffVar(0, 0), ctx->diffVar(1, 0)});
        show("minpoly(sqrt2+sqrt3)", sub);
        assert(sub.size() == 1);
        Poly expect = P.parse("w^4 - 10*w^2 + 1").num;
        assert(sub[0] == expect);
        std::cout << "stats: spolys=" << res.stats.sPolys
                  << " reductions=" << res.stats.reductions
                  << " dropped=" << res.stats.pairsDropped << "\n";
    }
    // determinism: run twice, compare string dumps
    {
        auto mk = [] {
            auto ctx = Context::make({"u", "v", "w"}, "x", {});
            ExprParser P(ctx, false);
            std::vector<Poly> gens = {P.parse("u^2 + v^2 + w^2 - 1").num,
                                      P.parse("u*v - w").num,
                                      P.parse("u - v^2").num};
            auto res = groebnerBasis(ctx, gens);
            std::string s;
            for (auto& g : res.basis) s += g.str() + ";";
            return s;
        };
        std::string s1 = mk(), s2 = mk();
        assert(s1 == s2);
        std::cout << "determinism OK: " << s1 << "\n";
    }
    std::cout << "smoke2 OK\n";
    return 0;
}
