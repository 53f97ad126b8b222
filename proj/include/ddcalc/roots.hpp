#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ddcalc/error.hpp"

namespace ddcalc {

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    int iterations = 0;
};

/// Brent's bracketed root finder. Throws NumericalError if [a, b] does not
/// bracket a sign change or the iteration cap is hit.
template <class F>
RootResult brent(F&& f, double a, double b, double xtol = 1e-12, int max_iter = 200) {
    RootResult res;
    res.lo = std::min(a, b);
    res.hi = std::max(a, b);
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return {a, fa, res.lo, res.hi, 0};
    if (fb == 0.0) return {b, fb, res.lo, res.hi, 0};
    if ((fa > 0.0) == (fb > 0.0))
        throw NumericalError("root not bracketed on [" + std::to_string(a) + ", " + std::to_string(b) + "]",
                             std::min(std::fabs(fa), std::fabs(fb)));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 1; it <= max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return {b, fb, res.lo, res.hi, it};
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
            const double min2 = std::fabs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::fabs(d) > tol1 ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    throw NumericalError("Brent iteration cap reached", std::fabs(fb));
}

}  // namespace ddcalc
