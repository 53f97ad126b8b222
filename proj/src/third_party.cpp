#include "ddcalc/third_party.hpp"

#include <algorithm>
#include <cmath>

#include "ddcalc/error.hpp"
#include "ddcalc/roots.hpp"

namespace ddcalc {

namespace {

ElectorateParams scaled(const ThirdPartyParams& tp) {
    ElectorateParams p = tp.base;
    p.taste.scale = tp.base.taste.scale * tp.sigma;
    return p;
}

}  // namespace

ValidationReport validate(const ThirdPartyParams& tp) {
    ValidationReport rep = validate(scaled(tp));
    if (!(tp.sigma > 0.0) || !std::isfinite(tp.sigma))
        rep.violations.push_back({ViolationCode::Range, "sigma must be positive and finite"});
    if (!(tp.v < 0.0) || !std::isfinite(tp.v))
        rep.violations.push_back({ViolationCode::ThirdParty, "valence v must be negative"});
    if (!(tp.base.b_R < 0.0))
        rep.violations.push_back({ViolationCode::ThirdParty, "third-party analysis needs b_L < b_R < 0"});
    return rep;
}

ThirdPartyModel::ThirdPartyModel(const ThirdPartyParams& tp)
    : tp_(tp), electorate_([&] {
          const auto rep = validate(tp);
          if (!rep.ok()) throw ValidationError(rep.summary());
          return Electorate(scaled(tp));
      }()) {}

Clamped lambda_hat_checked(const ThirdPartyModel& m, double gamma) {
    const auto& e = m.electorate();
    const auto& B = e.taste();
    const double k = e.mu() / (2.0 * (1.0 - e.mu()));
    const double left_keep = cdf(B, e.p() - m.v() - e.b_L() - gamma);
    const double right_keep = cdf(B, -m.v() - e.b_R() - gamma);
    const double raw = 0.5 - k * ((1.0 - e.r()) * left_keep - e.r() * right_keep);
    const double v = std::clamp(raw, 0.0, 1.0);
    return {v, v != raw};
}

double lambda_hat(const ThirdPartyModel& m, double gamma) {
    return lambda_hat_checked(m, gamma).value;
}

bool worse_off_condition(const ThirdPartyModel& m, const QuadratureConfig& cfg) {
    const auto& e = m.electorate();
    const auto& B = e.taste();
    const auto& G = e.shock();
    const auto [lo, hi] = effective_support(G);
    const double left_defect =
        integrate([&](double g) { return cdf(B, -e.p() + m.v() + e.b_L() + g) * pdf(G, g); }, lo, hi, cfg).value;
    const double right_defect =
        integrate([&](double g) { return cdf(B, m.v() + e.b_R() + g) * pdf(G, g); }, lo, hi, cfg).value;
    return (1.0 - e.r()) * left_defect < e.r() * right_defect;
}

ProbEstimate net_benefit_third(const ThirdPartyModel& m, const QuadratureConfig& cfg) {
    const auto& e = m.electorate();
    const auto& G = e.shock();
    const auto [lo, hi] = effective_support(G);
    bool clamped = false;
    auto hat = [&](double g) {
        const auto l = lambda_hat_checked(m, g);
        clamped = clamped || l.clamped;
        return l.value;
    };
    auto mid = [&](double g) {
        const auto l = lambda_win_checked(right_share_multi(e, g), e.mu());
        clamped = clamped || l.clamped;
        return (l.value - hat(g)) * pdf(G, g);
    };
    const auto lr = lambda_win_checked(e.r(), e.mu());
    const double value = integrate_clipped(mid, -e.b_R(), -e.b_L(), lo, hi, cfg) +
                         integrate_clipped([&](double g) { return (lr.value - hat(g)) * pdf(G, g); }, -e.b_L(), hi,
                                           lo, hi, cfg);
    return {value, 2.0 * cfg.abs_tol, clamped || lr.clamped};
}

ProbEstimate ahead_of_left_prob(const ThirdPartyModel& m, bool held, const QuadratureConfig& cfg) {
    const auto& e = m.electorate();
    const auto& G = e.shock();
    const auto [lo, hi] = effective_support(G);
    bool clamped = false;
    auto hat = [&](double g) {
        const auto l = lambda_hat_checked(m, g);
        clamped = clamped || l.clamped;
        return l.value * pdf(G, g);
    };
    if (!held) {
        const auto q = integrate(hat, lo, hi, cfg);
        return {q.value, q.error_estimate, clamped};
    }
    const auto lr = lambda_win_checked(e.r(), e.mu());
    auto mid = [&](double g) {
        const auto l = lambda_win_checked(right_share_multi(e, g), e.mu());
        clamped = clamped || l.clamped;
        return l.value * pdf(G, g);
    };
    const double value = integrate_clipped(hat, lo, -e.b_R(), lo, hi, cfg) +
                         integrate_clipped(mid, -e.b_R(), -e.b_L(), lo, hi, cfg) +
                         lr.value * survival(G, -e.b_L());
    return {value, 2.0 * cfg.abs_tol, clamped || lr.clamped};
}

double phi(double b_L, double b_R, const DistributionSpec& shock) {
    return 1.0 - 2.0 * cdf(shock, -b_L) + cdf(shock, -b_R);
}

PhiThresholds phi_thresholds(double b_L, const DistributionSpec& shock) {
    PhiThresholds out;
    auto& ls = out.b_L_star;
    ls.name = ThresholdName::BLstar;
    ls.value = quantile(shock, 0.25);
    ls.residual = cdf(shock, ls.value) - 0.25;
    ls.bracket_lo = ls.bracket_hi = ls.value;
    ls.note = "shock quantile at 1/4";
    if (b_L < ls.value) {
        auto f = [&](double b_R) { return phi(b_L, b_R, shock); };
        const auto root = brent(f, b_L, 0.0);
        ThresholdReport rs;
        rs.name = ThresholdName::BRstar;
        rs.value = root.x;
        rs.residual = f(root.x);
        rs.bracket_lo = b_L;
        rs.bracket_hi = 0.0;
        rs.iterations = root.iterations;
        out.b_R_star = rs;
    }
    return out;
}

std::string_view to_string(Decision d) {
    return d == Decision::Hold ? "hold" : "not_hold";
}

std::string_view to_string(Standing s) {
    return s == Standing::Advantaged ? "advantaged" : "disadvantaged";
}

double sigma_star_proxy(const ThirdPartyParams& tp) {
    const auto& b = tp.base;
    return 50.0 * std::max({b.p, std::fabs(b.b_L), std::fabs(b.b_R), b.shock.scale, std::fabs(tp.v)});
}

PropB1Classification classify_prop_b1(const ThirdPartyModel& m, const QuadratureConfig& cfg) {
    const auto& e = m.electorate();
    if (!(e.mu() < 2.0 / 3.0)) throw UsageError("classification needs mu < 2/3");
    if (e.r() == 0.5) throw UsageError("classification needs r != 1/2");
    PropB1Classification c;
    c.sigma_proxy = sigma_star_proxy(m.params());
    if (e.taste().scale < c.sigma_proxy)
        throw UsageError("taste scale " + std::to_string(e.taste().scale) + " below the large-scale proxy " +
                         std::to_string(c.sigma_proxy));
    const auto th = phi_thresholds(e.b_L(), e.shock());
    c.b_L_star = th.b_L_star.value;
    if (th.b_R_star) c.b_R_star = th.b_R_star->value;
    c.phi_value = phi(e.b_L(), e.b_R(), e.shock());
    c.standing = e.r() > 0.5 ? Standing::Advantaged : Standing::Disadvantaged;
    const bool right_tail_heavy = e.b_L() >= c.b_L_star || (c.b_R_star && e.b_R() < *c.b_R_star);
    const bool hold = c.standing == Standing::Advantaged ? right_tail_heavy : !right_tail_heavy;
    c.decision = hold ? Decision::Hold : Decision::NotHold;
    c.exact_gain = net_benefit_third(m, cfg).value;
    c.exact_decision = c.exact_gain > 0.0 ? Decision::Hold : Decision::NotHold;
    return c;
}

}  // namespace ddcalc
