#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace besseldrift {

/// Adaptive Simpson integration of f over [a,b] to absolute tolerance tol.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 40) {
    struct Rec {
        static double simpson(const std::function<double(double)>& f, double a, double fa,
                              double b, double fb, double& fm) {
            const double m = 0.5 * (a + b);
            fm = f(m);
            return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        }
        static double go(const std::function<double(double)>& f, double a, double fa, double b,
                         double fb, double m, double fm, double whole, double tol, int depth) {
            double fl, fr;
            const double lm = 0.5 * (a + m);
            const double rm = 0.5 * (m + b);
            fl = f(lm);
            fr = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
            const double delta = left + right - whole;
            if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
                return left + right + delta / 15.0;
            return go(f, a, fa, m, fm, lm, fl, left, 0.5 * tol, depth - 1) +
                   go(f, m, fm, b, fb, rm, fr, right, 0.5 * tol, depth - 1);
        }
    };
    if (!(b >= a)) throw std::invalid_argument("integrate: empty or inverted interval");
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    double fm;
    const double m = 0.5 * (a + b);
    fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Rec::go(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace besseldrift
