#pragma once

#include <cmath>

namespace qhgeo {

struct QuadratureResult {
    double value = 0.0;
    long evaluations = 0;
};

namespace detail {

template <class F>
double simpson_step(F& f, double a, double fa, double m, double fm, double b, double fb, double whole,
                    double tol, int depth, int forced, long& evals) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    evals += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || (forced <= 0 && std::abs(delta) <= 15.0 * tol)) return left + right + delta / 15.0;
    return simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1, forced - 1, evals) +
           simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1, forced - 1, evals);
}

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b] with absolute tolerance tol,
// bisecting intervals and halving the tolerance per level. Each accepted panel
// carries the Richardson correction. The first `min_levels` bisections are
// always taken, which guards against accidental agreement on the coarsest
// panel.
template <class F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 40,
                                  int min_levels = 2) {
    QuadratureResult out;
    if (a == b) return out;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    out.evaluations = 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    out.value = detail::simpson_step(f, a, fa, m, fm, b, fb, whole, tol, max_depth, min_levels,
                                       out.evaluations);
    return out;
}

}  // namespace qhgeo
