#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "resetldp/quadrature.hpp"

namespace resetldp {

// Bisection with a regula-falsi step when it helps; unconditionally safe for
// monotone functions on a sign-changing bracket [a,b].
template <typename F>
double solve_bracketed(F&& f, double a, double b, double fa, double fb,
                       double x_tol = 1e-14, double f_tol = 0.0, int max_iter = 200) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) throw NumericError("solve_bracketed: no sign change in bracket");
    for (int i = 0; i < max_iter; ++i) {
        double m = 0.5 * (a + b);
        if (std::isfinite(fa) && std::isfinite(fb)) {
            const double sec = (a * fb - b * fa) / (fb - fa);
            // accept the secant point only if it lands well inside the bracket
            const double lo = a + 0.25 * (b - a), hi = b - 0.25 * (b - a);
            if (sec > lo && sec < hi && (i % 2 == 0)) m = sec;
        }
        const double fm = f(m);
        if (fm == 0.0 || (f_tol > 0.0 && std::abs(fm) < f_tol) || (b - a) < x_tol * (1.0 + std::abs(m))) {
            return m;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    return 0.5 * (a + b);
}

template <typename F>
double solve_bracketed(F&& f, double a, double b,
                       double x_tol = 1e-14, double f_tol = 0.0, int max_iter = 200) {
    return solve_bracketed(f, a, b, f(a), f(b), x_tol, f_tol, max_iter);
}

// Golden-section maximization of a unimodal function on [a,b].
template <typename F>
double golden_section_max(F&& f, double a, double b, double x_tol = 1e-10, int max_iter = 400) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < max_iter && (b - a) > x_tol * (1.0 + std::abs(a) + std::abs(b)); ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace resetldp
