#include "ddcalc/turnout.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "ddcalc/error.hpp"

namespace ddcalc {

ValidationReport validate(const TurnoutParams& tp) {
    ValidationReport rep = validate_ranges(tp.base);
    const auto& b = tp.base;
    for (double x : {tp.c_bar, tp.sigma, tp.kappa})
        if (!(x > 0.0) || !std::isfinite(x)) {
            rep.violations.push_back({ViolationCode::Range, "c_bar, sigma and kappa must be positive and finite"});
            return rep;
        }
    if (b.mu > 0.0 && b.mu < 1.0) {
        const double upper = 1.0 / (2.0 * b.mu);
        if (!(1.0 - upper < b.r && b.r < upper))
            rep.violations.push_back({ViolationCode::Assumption2, "r outside (1 - 1/(2 mu), 1/(2 mu))"});
    }
    std::ostringstream os;
    if (!(tp.c_bar > b.p + tp.kappa + tp.sigma)) {
        os << "c_bar = " << tp.c_bar << " must exceed p + kappa + sigma = " << b.p + tp.kappa + tp.sigma;
        rep.violations.push_back({ViolationCode::AssumptionC1, os.str()});
    }
    if (!(tp.kappa > std::max(std::fabs(b.b_R), std::fabs(b.b_L))))
        rep.violations.push_back({ViolationCode::AssumptionC1, "kappa must exceed max(|b_R|, |b_L|)"});
    if (!(tp.sigma > b.p + tp.kappa))
        rep.violations.push_back({ViolationCode::AssumptionC1, "sigma must exceed p + kappa"});
    return rep;
}

TurnoutModel::TurnoutModel(const TurnoutParams& tp) : tp_(tp) {
    const auto rep = validate(tp);
    if (!rep.ok()) throw ValidationError(rep.summary());
}

bool TurnoutModel::cost_cap_possible() const {
    const auto& b = tp_.base;
    return tp_.c_bar < b.p + std::max(std::fabs(b.b_R), std::fabs(b.b_L)) + tp_.kappa + tp_.sigma;
}

namespace {

/// Antiderivative of u * pdf(d, u).
double first_moment_primitive(const DistributionSpec& d, double u) {
    if (d.family == Family::Normal) return -d.scale * d.scale * pdf(d, u);
    const double z = u / d.scale;
    const double softplus = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    return u * cdf(d, u) - d.scale * softplus;
}

/// E|u + c| for u drawn from the truncated taste distribution.
double mean_abs_stake(const TruncatedSpec& B, double c) {
    const auto& d = B.base;
    const double s = B.half_width;
    const double kink = std::clamp(-c, -s, s);
    const double F_hi = cdf(d, s), F_lo = cdf(d, -s), F_k = cdf(d, kink);
    const double M_hi = first_moment_primitive(d, s), M_lo = first_moment_primitive(d, -s),
                 M_k = first_moment_primitive(d, kink);
    const double total = c * (F_hi - 2.0 * F_k + F_lo) + (M_hi - 2.0 * M_k + M_lo);
    return std::fmax(total / (F_hi - F_lo), 0.0);
}

}  // namespace

double intensity(double b_J, const TurnoutModel& m, const QuadratureConfig& cfg) {
    if (!std::isfinite(b_J)) throw DomainError("b_J must be finite");
    const auto B = m.taste();
    const auto G = m.shock();
    const double s = B.half_width;
    const double k = G.half_width;
    auto f = [&](double g) { return mean_abs_stake(B, b_J + g) * pdf(G, g); };
    // The stake has derivative kinks where |b_J + gamma| = s.
    std::vector<double> cuts = {-k};
    for (double x : {-s - b_J, s - b_J})
        if (x > -k && x < k) cuts.push_back(x);
    cuts.push_back(k);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(f, cuts[i], cuts[i + 1], cfg).value;
    return total;
}

ProbEstimate win_prob_turnout(const TurnoutModel& m, bool referendum, const QuadratureConfig& cfg) {
    const auto& b = m.base();
    const double k = b.mu / (2.0 * (1.0 - b.mu));
    double raw = 0.5 + k * (b.p / m.params().c_bar) * (2.0 * b.r - 1.0);
    if (referendum) raw += net_benefit_turnout(m, cfg);
    const double v = std::clamp(raw, 0.0, 1.0);
    return {v, referendum ? 2.0 * cfg.abs_tol : 0.0, v != raw || (referendum && m.cost_cap_possible())};
}

double net_benefit_turnout(const TurnoutModel& m, const QuadratureConfig& cfg) {
    const auto& b = m.base();
    const double k = b.mu / (2.0 * (1.0 - b.mu));
    return k / m.params().c_bar * (b.r * intensity(b.b_R, m, cfg) - (1.0 - b.r) * intensity(b.b_L, m, cfg));
}

TurnoutShares expected_turnout(const TurnoutModel& m, bool referendum, const QuadratureConfig& cfg) {
    const auto& b = m.base();
    const double c = m.params().c_bar;
    if (!referendum) return {b.p / c, b.p / c};
    return {(b.p + intensity(b.b_R, m, cfg)) / c, (b.p + intensity(b.b_L, m, cfg)) / c};
}

ThresholdReport r_T(const TurnoutModel& m, const QuadratureConfig& cfg) {
    const double i_L = intensity(m.base().b_L, m, cfg);
    const double i_R = intensity(m.base().b_R, m, cfg);
    ThresholdReport rep;
    rep.name = ThresholdName::RT;
    rep.value = i_L / (i_L + i_R);
    rep.residual = rep.value * (i_L + i_R) - i_L;
    rep.bracket_lo = 0.0;
    rep.bracket_hi = 1.0;
    rep.note = "intensity ratio";
    return rep;
}

}  // namespace ddcalc
