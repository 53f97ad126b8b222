#include "ddcalc/thresholds.hpp"

#include <cmath>

#include "ddcalc/error.hpp"
#include "ddcalc/roots.hpp"

namespace ddcalc {

std::string_view to_string(ThresholdName n) {
    switch (n) {
        case ThresholdName::GammaStar: return "gamma_star";
        case ThresholdName::RBind: return "r_bind";
        case ThresholdName::RStar: return "r_star";
        case ThresholdName::RStarStar: return "r_star_star";
        case ThresholdName::BRdagger: return "b_R_dagger";
        case ThresholdName::BRddagger: return "b_R_ddagger";
        case ThresholdName::BLstar: return "b_L_star";
        case ThresholdName::BRstar: return "b_R_star";
        case ThresholdName::RT: return "r_T";
    }
    return "unknown";
}

Primitives Primitives::of(const Electorate& e) {
    return {e.b_L(), e.b_R(), e.p(), e.taste(), e.shock()};
}

namespace {

void require_finite(const Primitives& pr) {
    if (!std::isfinite(pr.b_L) || !std::isfinite(pr.b_R) || !std::isfinite(pr.p))
        throw DomainError("threshold inputs must be finite");
    if (!(pr.p > 0.0)) throw DomainError("p must be positive");
}

// Integral of f(g) * pdf(shock, g) over (-inf, a] and [b, inf) on the truncated support.
template <class F>
double outer_integral(F&& f, const DistributionSpec& shock, double a, double b, const QuadratureConfig& cfg) {
    const auto [lo, hi] = effective_support(shock);
    auto w = [&](double g) { return f(g) * pdf(shock, g); };
    return integrate_clipped(w, lo, a, lo, hi, cfg) + integrate_clipped(w, b, hi, lo, hi, cfg);
}

}  // namespace

ThresholdReport gamma_star(double r, double b_L, double b_R, const DistributionSpec& taste) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("r must lie in (0,1)");
    if (!(b_L < b_R)) throw UsageError("gamma_star needs b_L < b_R");
    auto f = [&](double g) { return r * cdf(taste, g + b_R) + (1.0 - r) * cdf(taste, g + b_L) - 0.5; };
    const auto root = brent(f, -b_R, -b_L);
    ThresholdReport rep;
    rep.name = ThresholdName::GammaStar;
    rep.value = root.x;
    rep.residual = f(root.x);
    rep.bracket_lo = -b_R;
    rep.bracket_hi = -b_L;
    rep.iterations = root.iterations;
    return rep;
}

ThresholdReport gamma_star(const Electorate& e) {
    return gamma_star(e.r(), e.b_L(), e.b_R(), e.taste());
}

ThresholdReport r_bind(const Primitives& pr, const QuadratureConfig& cfg) {
    require_finite(pr);
    if (pr.b_R < 0.0) throw UsageError("r_bind is defined for b_R >= 0");
    const auto [lo, hi] = effective_support(pr.shock);
    const auto& B = pr.taste;
    const auto& G = pr.shock;
    const double left_keep =
        integrate([&](double g) { return cdf(B, g + pr.b_L - pr.p) * pdf(G, g); }, lo, hi, cfg).value;
    const double right_keep =
        integrate([&](double g) { return cdf(B, -pr.p - g - pr.b_R) * pdf(G, g); }, lo, hi, cfg).value;
    const double den = left_keep + right_keep;
    ThresholdReport rep;
    rep.name = ThresholdName::RBind;
    rep.value = left_keep / den;
    rep.residual = rep.value * den - left_keep;
    rep.bracket_lo = 0.0;
    rep.bracket_hi = 1.0;
    rep.note = "closed integral ratio";
    return rep;
}

ThresholdReport r_star(const Primitives& pr, const QuadratureConfig& cfg) {
    require_finite(pr);
    if (!(pr.b_L <= pr.b_R && pr.b_R < 0.0)) throw UsageError("r_star is defined for b_L <= b_R < 0");
    ThresholdReport rep;
    rep.name = ThresholdName::RStar;
    rep.bracket_lo = 0.0;
    rep.bracket_hi = 0.5;
    if (pr.b_R == pr.b_L) {
        rep.value = 0.5;
        rep.note = "degenerate b_R = b_L: limit value";
        return rep;
    }
    const auto& B = pr.taste;
    const auto& G = pr.shock;
    const double right_loss =
        integrate([&](double g) { return cdf(B, -pr.p - g - pr.b_R) * pdf(G, g); }, -pr.b_R, -pr.b_L, cfg).value;
    const double left_loss =
        integrate([&](double g) { return cdf(B, -pr.p + g + pr.b_L) * pdf(G, g); }, -pr.b_R, -pr.b_L, cfg).value;
    rep.value = left_loss / (left_loss + right_loss);
    rep.residual = rep.value * (left_loss + right_loss) - left_loss;
    rep.note = "tau = " + std::to_string(right_loss / left_loss);
    return rep;
}

ThresholdReport r_star_star(const Primitives& pr, const QuadratureConfig& cfg) {
    require_finite(pr);
    if (pr.b_R < 0.0) throw UsageError("r_star_star is defined for b_R >= 0");
    const auto& B = pr.taste;
    const double right_loss =
        outer_integral([&](double g) { return cdf(B, -pr.p - g - pr.b_R); }, pr.shock, -pr.b_R, -pr.b_L, cfg);
    const double left_loss =
        outer_integral([&](double g) { return cdf(B, -pr.p + g + pr.b_L); }, pr.shock, -pr.b_R, -pr.b_L, cfg);
    auto condition = [&](double r) { return r * right_loss - (1.0 - r) * left_loss; };
    const auto root = brent(condition, 0.0, 1.0);
    ThresholdReport rep;
    rep.name = ThresholdName::RStarStar;
    rep.value = root.x;
    rep.residual = condition(root.x);
    rep.bracket_lo = 0.0;
    rep.bracket_hi = 1.0;
    rep.iterations = root.iterations;
    return rep;
}

double delta_at_rbind(const Primitives& pr, const QuadratureConfig& cfg) {
    const double r = r_bind(pr, cfg).value;
    const auto& B = pr.taste;
    const auto& G = pr.shock;
    return integrate(
               [&](double g) {
                   return ((1.0 - r) * cdf(B, -pr.p + g + pr.b_L) - r * cdf(B, -pr.p - g - pr.b_R)) * pdf(G, g);
               },
               -pr.b_R, -pr.b_L, cfg)
        .value;
}

namespace {

ThresholdReport scan_sign_change(const Primitives& base, ThresholdName name, double start, double edge,
                                 const QuadratureConfig& cfg) {
    ThresholdReport rep;
    rep.name = name;
    auto delta = [&](double b_R) {
        Primitives pr = base;
        pr.b_R = b_R;
        return delta_at_rbind(pr, cfg);
    };
    const double dir = edge > start ? 1.0 : -1.0;
    const double step = 0.01 * base.shock.scale;
    double prev_x = start + dir * 0.1 * step;
    if ((edge - prev_x) * dir <= 0.0) {
        rep.value = edge;
        rep.found = false;
        rep.note = "empty search window";
        return rep;
    }
    double prev_f = delta(prev_x);
    for (;;) {
        double x = prev_x + dir * step;
        if ((x - edge) * dir > 0.0) x = edge;
        const double fx = delta(x);
        if ((fx > 0.0) != (prev_f > 0.0) || fx == 0.0) {
            const auto root = brent(delta, prev_x, x);
            rep.value = root.x;
            rep.residual = delta(root.x);
            rep.bracket_lo = std::fmin(prev_x, x);
            rep.bracket_hi = std::fmax(prev_x, x);
            rep.iterations = root.iterations;
            return rep;
        }
        if (x == edge) break;
        prev_x = x;
        prev_f = fx;
    }
    rep.value = edge;
    rep.residual = delta(edge);
    rep.bracket_lo = std::fmin(start, edge);
    rep.bracket_hi = std::fmax(start, edge);
    rep.found = false;
    rep.note = "not found in window";
    return rep;
}

}  // namespace

DaggerPair br_dagger_ddagger(const Primitives& pr, const QuadratureConfig& cfg) {
    require_finite(pr);
    if (!(pr.b_L < 0.0)) throw UsageError("b_L must be negative");
    const double mid = -pr.b_L;
    DaggerPair out;
    out.ddagger = scan_sign_change(pr, ThresholdName::BRddagger, mid, 0.0, cfg);
    out.dagger = scan_sign_change(pr, ThresholdName::BRdagger, mid, mid + 4.0 * pr.shock.scale, cfg);
    return out;
}

}  // namespace ddcalc
