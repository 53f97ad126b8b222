#include "ddcalc/calculus.hpp"

#include <algorithm>
#include <cmath>

#include "ddcalc/error.hpp"

namespace ddcalc {

Clamped lambda_win_checked(double r_eff, double mu) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mu must lie in (0,1)");
    if (!std::isfinite(r_eff)) throw DomainError("vote share must be finite");
    const double raw = 0.5 + mu / (1.0 - mu) * (r_eff - 0.5);
    const double v = std::clamp(raw, 0.0, 1.0);
    return {v, v != raw};
}

double lambda_win(double r_eff, double mu) {
    return lambda_win_checked(r_eff, mu).value;
}

double right_share_multi(double r, double b_L, double b_R, double p, const DistributionSpec& taste, double gamma) {
    return r * cdf(taste, gamma + b_R + p) + (1.0 - r) * cdf(taste, gamma + b_L - p);
}

double right_share_multi(const Electorate& e, double gamma) {
    return right_share_multi(e.r(), e.b_L(), e.b_R(), e.p(), e.taste(), gamma);
}

namespace {

struct Kernel {
    const Electorate& e;
    bool clamped = false;

    double lambda_s(double gamma) {
        const auto l = lambda_win_checked(right_share_multi(e, gamma), e.mu());
        clamped = clamped || l.clamped;
        return l.value;
    }
};

ProbEstimate no_referendum(const Electorate& e, const QuadratureConfig& cfg) {
    if (e.b_R() < 0.0) {
        const auto l = lambda_win_checked(e.r(), e.mu());
        return {l.value, 0.0, l.clamped};
    }
    Kernel k{e};
    const auto [lo, hi] = effective_support(e.shock());
    const auto q = integrate([&](double g) { return k.lambda_s(g) * pdf(e.shock(), g); }, lo, hi, cfg);
    return {q.value, q.error_estimate, k.clamped};
}

}  // namespace

ProbEstimate win_prob(const Electorate& e, Regime regime, bool held, const QuadratureConfig& cfg) {
    if (regime == Regime::NoReferendum && held) throw UsageError("no referendum can be held in the NoReferendum regime");
    if (!held) return no_referendum(e, cfg);
    const auto lr = lambda_win_checked(e.r(), e.mu());
    if (regime == Regime::Binding) return {lr.value, 0.0, lr.clamped};

    Kernel k{e};
    const auto [lo, hi] = effective_support(e.shock());
    const auto& G = e.shock();
    const double split = integrate_clipped([&](double g) { return k.lambda_s(g) * pdf(G, g); }, -e.b_R(), -e.b_L(),
                                           lo, hi, cfg);
    const double value = lr.value * cdf(G, -e.b_R()) + split + lr.value * survival(G, -e.b_L());
    return {value, cfg.abs_tol, lr.clamped || k.clamped};
}

ProbEstimate net_benefit(const Electorate& e, Regime regime, const QuadratureConfig& cfg) {
    if (regime == Regime::NoReferendum) throw UsageError("net benefit needs a referendum regime");
    const auto lr = lambda_win_checked(e.r(), e.mu());
    Kernel k{e};
    const auto& G = e.shock();
    const auto [lo, hi] = effective_support(G);
    auto gain = [&](double g) { return (lr.value - k.lambda_s(g)) * pdf(G, g); };

    if (regime == Regime::Binding) {
        if (e.b_R() < 0.0) return {0.0, 0.0, lr.clamped};
        const auto q = integrate(gain, lo, hi, cfg);
        return {q.value, q.error_estimate, lr.clamped || k.clamped};
    }
    if (e.b_R() < 0.0) {
        const double v = -integrate_clipped(gain, -e.b_R(), -e.b_L(), lo, hi, cfg);
        return {v, cfg.abs_tol, lr.clamped || k.clamped};
    }
    const double v = integrate_clipped(gain, lo, -e.b_R(), lo, hi, cfg) +
                     integrate_clipped(gain, -e.b_L(), hi, lo, hi, cfg);
    return {v, 2.0 * cfg.abs_tol, lr.clamped || k.clamped};
}

}  // namespace ddcalc
