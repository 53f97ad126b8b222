#pragma once

#include <cmath>
#include <string>
#include <type_traits>

#include "ddcalc/error.hpp"

namespace ddcalc {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
};

void check_config(const QuadratureConfig& cfg);

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    int subdivisions = 0;
};

namespace detail {

template <class F>
struct Simpson {
    F& f;
    const QuadratureConfig& cfg;
    QuadResult out;
    static constexpr int kMaxDepth = 50;

    double refine(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        out.evaluations += 2;
        if (++out.subdivisions > cfg.max_subdivisions)
            throw NumericalError("adaptive Simpson exceeded " + std::to_string(cfg.max_subdivisions) +
                                     " subdivisions",
                                 out.error_estimate + std::fabs(tol));
        const double h = (b - a) / 12.0;
        const double left = h * (fa + 4.0 * flm + fm);
        const double right = h * (fm + 4.0 * frm + fb);
        const double diff = left + right - whole;
        if (depth >= kMaxDepth || std::fabs(diff) <= 15.0 * tol || lm <= a || rm >= b) {
            out.error_estimate += std::fabs(diff) / 15.0;
            return left + right + diff / 15.0;
        }
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace detail

/// Adaptive Simpson on [a, b]. Accepts a panel once |S_2 - S_1| <= 15 tol, with
/// tol = max(abs_tol, rel_tol |S|) halved at each bisection.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
    check_config(cfg);
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integration limits must be finite");
    if (a == b) return {};
    if (a > b) {
        QuadResult r = integrate(f, b, a, cfg);
        r.value = -r.value;
        return r;
    }
    detail::Simpson<std::remove_reference_t<F>> s{f, cfg, {}};
    const double fa = f(a);
    const double fm = f(0.5 * (a + b));
    const double fb = f(b);
    s.out.evaluations = 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = std::fmax(cfg.abs_tol, cfg.rel_tol * std::fabs(whole));
    s.out.value = s.refine(a, b, fa, fm, fb, whole, tol, 0);
    return s.out;
}

/// Integral over [lo, hi] clipped to [a, b]; zero when the clip is empty.
template <class F>
double integrate_clipped(F&& f, double lo, double hi, double a, double b, const QuadratureConfig& cfg) {
    const double l = std::fmax(lo, a);
    const double h = std::fmin(hi, b);
    if (!(h > l)) return 0.0;
    return integrate(f, l, h, cfg).value;
}

}  // namespace ddcalc
