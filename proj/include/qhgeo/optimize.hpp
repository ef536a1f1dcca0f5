#pragma once

#include <cmath>
#include <utility>

namespace qhgeo {

struct ScalarMin {
    double arg;
    double value;
};

// Golden-section search for the minimum of a unimodal f on [a, b]. The
// endpoints are compared against the interior result so that monotone
// functions report the correct boundary minimum.
template <class F>
ScalarMin golden_section_min(F&& f, double a, double b, double tol = 1e-12,
                             int max_iter = 200) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    ScalarMin best = f1 <= f2 ? ScalarMin{x1, f1} : ScalarMin{x2, f2};
    const double fa = f(a);
    const double fb = f(b);
    if (fa < best.value) best = {a, fa};
    if (fb < best.value) best = {b, fb};
    return best;
}

// Bisection for g(t) = target on [lo, hi] given g(lo) < target <= g(hi).
// Returns the upper end of the final bracket.
template <class G>
double bisect_crossing(G&& g, double lo, double hi, double target, double tol = 1e-14,
                       int max_iter = 200) {
    for (int it = 0; it < max_iter && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

}  // namespace qhgeo
