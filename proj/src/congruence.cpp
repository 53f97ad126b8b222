#include "ddcalc/congruence.hpp"

#include "ddcalc/calculus.hpp"
#include "ddcalc/error.hpp"
#include "ddcalc/parallel.hpp"
#include "ddcalc/thresholds.hpp"

namespace ddcalc {

std::string_view to_string(RegionFlag f) {
    switch (f) {
        case RegionFlag::None: return "none";
        case RegionFlag::Second: return "second";
        case RegionFlag::Traditional: return "traditional";
        case RegionFlag::Both: return "both";
    }
    return "unknown";
}

namespace {

double majority_y_without_referendum(const Electorate& e, double g_star, const QuadratureConfig& cfg) {
    const auto& G = e.shock();
    if (e.b_R() < 0.0) return cdf(G, g_star);
    const auto [lo, hi] = effective_support(G);
    const double below = integrate_clipped(
        [&](double g) { return (1.0 - lambda_win(right_share_multi(e, g), e.mu())) * pdf(G, g); }, lo, g_star, lo, hi,
        cfg);
    const double above = integrate_clipped(
        [&](double g) { return lambda_win(right_share_multi(e, g), e.mu()) * pdf(G, g); }, g_star, hi, lo, hi, cfg);
    return below + above;
}

}  // namespace

CongruenceReport second_issue_congruence(const Electorate& e, Regime regime, const QuadratureConfig& cfg) {
    if (regime == Regime::NoReferendum) throw UsageError("congruence change needs a referendum regime");
    CongruenceReport rep;
    rep.issue = Issue::Second;
    rep.regime = regime;
    const double g_star = gamma_star(e).value;
    rep.prob_no_ref = majority_y_without_referendum(e, g_star, cfg);

    if (regime == Regime::Binding) {
        rep.prob_with_ref = 1.0;
        rep.delta = rep.prob_with_ref - rep.prob_no_ref;
        return rep;
    }
    const auto& G = e.shock();
    const auto [lo, hi] = effective_support(G);
    auto lam = [&](double g) { return lambda_win(right_share_multi(e, g), e.mu()) * pdf(G, g); };
    if (e.b_R() < 0.0) {
        rep.delta = survival(G, -e.b_L()) + integrate_clipped(lam, g_star, -e.b_L(), lo, hi, cfg) -
                    integrate_clipped(lam, -e.b_R(), g_star, lo, hi, cfg);
    } else {
        rep.delta = integrate_clipped(lam, lo, -e.b_R(), lo, hi, cfg) +
                    integrate_clipped([&](double g) { return pdf(G, g) - lam(g); }, -e.b_L(), hi, lo, hi, cfg);
    }
    rep.prob_with_ref = rep.prob_no_ref + rep.delta;
    return rep;
}

CongruenceReport traditional_issue_congruence(const Electorate& e, Regime regime, const QuadratureConfig& cfg) {
    if (regime == Regime::NoReferendum) throw UsageError("congruence change needs a referendum regime");
    CongruenceReport rep;
    rep.issue = Issue::Traditional;
    rep.regime = regime;
    const double w_no = win_prob(e, regime, false, cfg).value;
    const double w_with = win_prob(e, regime, true, cfg).value;
    if (e.r() >= 0.5) {
        rep.prob_no_ref = w_no;
        rep.prob_with_ref = w_with;
    } else {
        rep.prob_no_ref = 1.0 - w_no;
        rep.prob_with_ref = 1.0 - w_with;
    }
    rep.delta = rep.prob_with_ref - rep.prob_no_ref;
    if (e.r() == 0.5) {
        rep.knife_edge = true;
        rep.alt_prob_no_ref = 1.0 - w_no;
        rep.alt_prob_with_ref = 1.0 - w_with;
        rep.alt_delta = *rep.alt_prob_with_ref - *rep.alt_prob_no_ref;
    }
    return rep;
}

namespace {

RegionCell classify_cell(const RegionGrid& grid, std::size_t idx, const QuadratureConfig& cfg) {
    const std::size_t nr = grid.r_values.size();
    RegionCell cell;
    cell.b_R = grid.b_R_values[idx / nr];
    cell.r = grid.r_values[idx % nr];
    ElectorateParams p = grid.base;
    p.b_R = cell.b_R;
    p.r = cell.r;
    if (!validate(p).ok()) return cell;
    cell.valid = true;
    const Electorate e(p);
    cell.delta_second = second_issue_congruence(e, grid.regime, cfg).delta;
    cell.delta_traditional = traditional_issue_congruence(e, grid.regime, cfg).delta;
    const bool s = cell.delta_second < 0.0;
    const bool t = cell.delta_traditional < 0.0;
    cell.flag = s && t ? RegionFlag::Both : s ? RegionFlag::Second : t ? RegionFlag::Traditional : RegionFlag::None;
    return cell;
}

}  // namespace

std::vector<RegionCell> classify_congruence_region(const RegionGrid& grid, const QuadratureConfig& cfg) {
    const std::size_t n = grid.b_R_values.size() * grid.r_values.size();
    return parallel_map<RegionCell>(n, [&](std::size_t i) { return classify_cell(grid, i, cfg); });
}

std::vector<RegionCell> classify_congruence_region_serial(const RegionGrid& grid, const QuadratureConfig& cfg) {
    const std::size_t n = grid.b_R_values.size() * grid.r_values.size();
    return serial_map<RegionCell>(n, [&](std::size_t i) { return classify_cell(grid, i, cfg); });
}

}  // namespace ddcalc
