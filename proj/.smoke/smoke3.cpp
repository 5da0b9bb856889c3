#include <cassert>
#include <chrono>
#include <iostream>

#include "dalg/method1.hpp"

using namespace dalg;

int main() {
    // composition (Method I): p = y'-y (exp), q = z^2+2z' ; expect at j=1:
    // (w')^4 - 2w(w')^2 w'' + w^2 (w'')^2 + 2w(w')^3
    {
        auto ctx = Context::make({"y", "z", "w"}, "x", {});
        ExprParser P(ctx, false);
        Poly p = P.parseEquation("y' - y");
        Poly q = P.parseEquation("z^2 + 2*z'");
        auto t0 = std::chrono::steady_clock::now();
        auto out = composeMethodI(p, 0, q, 1, 2, {});
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "compose exp o (2/(x+c)) at j=" << out.level << ": " << out.ade.str()
                  << "  [" << ms << " ms]\n";
        Poly expect = P.parseEquation("(w')^4 - 2*w*(w')^2*w'' + w^2*(w'')^2 + 2*w*(w')^3");
        assert(proportional(out.ade, expect));
    }
    // arith sum (Method I): y'-y plus z'-2z -> exp(x)+exp(2x):
    // w'' - 3w' + 2w
    {
        auto ctx = Context::make({"y", "z", "w"}, "x", {});
        ExprParser P(ctx, true);
        Poly p = P.parseEquation("y' - y");
        Poly q = P.parseEquation("z' - 2*z");
        RatExpr rel = P.parse("y + z");
        auto out = arithMethodI(p, 0, q, 1, rel, 2, {});
        std::cout << "sum at j=" << out.level << ": " << out.ade.str() << "\n";
        Poly expect = P.parseEquation("w'' - 3*w' + 2*w");
        assert(proportional(out.ade, expect));
    }
    // division with saturation: w = y/z for y'-y, z'-z  ->  constants: w'=0
    {
        auto ctx = Context::make({"y", "z", "w"}, "x", {});
        ExprParser P(ctx, true);
        Poly p = P.parseEquation("y' - y");
        Poly q = P.parseEquation("z' - z");
        RatExpr rel = P.parse("y / z");
        auto out = arithMethodI(p, 0, q, 1, rel, 2, {});
        std::cout << "quotient at j=" << out.level << ": " << out.ade.str()
                  << " sat=" << out.saturation.str() << "\n";
        Poly expect = P.parseEquation("w'");
        assert(proportional(out.ade, expect));
    }
    // non-autonomous composition, criterion-4 shape: p = y''+y, q = z'-x*z
    {
        auto ctx = Context::make({"y", "z", "w"}, "x", {});
        ExprParser P(ctx, false);
        Poly p = P.parseEquation("y'' + y");
        Poly q = P.parseEquation("z' - x*z");
        auto t0 = std::chrono::steady_clock::now();
        auto out = composeMethodI(p, 0, q, 1, 2, {});
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "compose sin o gauss at j=" << out.level << ": " << out.ade.str()
                  << "  [" << ms << " ms]\n";
        Poly expect = P.parseEquation(
            "(2*x^4+3*x^2+3)*w*w' + (x^3+x)*(w')^2 - 3*(x^3+x)*w*w'' - x^2*w'*w'' + x^2*w*w^(3)");
        assert(proportional(out.ade, expect));
    }
    std::cout << "smoke3 OK\n";
    return 0;
}
