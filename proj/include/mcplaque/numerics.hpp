#pragma once

#include <cmath>
#include <utility>

namespace mcplaque {

// Adaptive Simpson quadrature with Richardson correction.  rel_tol is applied
// against the running whole-interval estimate; recursion depth is capped so
// integrable kinks terminate.
namespace detail {

template <typename F>
double simpson(F& f, double a, double fa, double b, double fb, double* fm_out) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    *fm_out = fm;
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adapt(F& f, double a, double fa, double m, double fm, double b, double fb,
             double whole, double tol, int depth) {
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
    return adapt(f, a, fa, lm, fl, m, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, rm, fr, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <typename F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-11,
                          int max_depth = 40) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    double fm;
    const double whole = detail::simpson(f, a, fa, b, fb, &fm);
    const double scale = std::abs(whole) > 1e-300 ? std::abs(whole) : 1.0;
    return detail::adapt(f, a, fa, 0.5 * (a + b), fm, b, fb, whole,
                         rel_tol * scale, max_depth);
}

}  // namespace mcplaque
