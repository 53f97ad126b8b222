#pragma once

#include "ddcalc/calculus.hpp"
#include "ddcalc/distkit.hpp"
#include "ddcalc/electorate.hpp"
#include "ddcalc/thresholds.hpp"

namespace ddcalc {

/// Costly voting with a simultaneous binding referendum. Tastes and shocks are
/// the base families truncated to [-sigma, sigma] and [-kappa, kappa]; costs
/// are uniform on [0, c_bar].
struct TurnoutParams {
    ElectorateParams base{0.5, 0.5, 0.2, -0.5, 0.3, {Family::Normal, 1.0}, {Family::Normal, 0.5}};
    double c_bar = 6.0;
    double sigma = 2.5;
    double kappa = 1.0;
};

/// Range checks, mu/r condition, and c_bar > p + kappa + sigma,
/// kappa > max(|b_R|, |b_L|), sigma > p + kappa. The sign conditions on
/// b_L and b_R used elsewhere are not required here.
ValidationReport validate(const TurnoutParams& tp);

class TurnoutModel {
public:
    explicit TurnoutModel(const TurnoutParams& tp);

    const TurnoutParams& params() const { return tp_; }
    const ElectorateParams& base() const { return tp_.base; }
    TruncatedSpec taste() const { return {tp_.base.taste, tp_.sigma}; }
    TruncatedSpec shock() const { return {tp_.base.shock, tp_.kappa}; }
    /// True when some voter's stake p + |b_J + gamma + u| can exceed c_bar, in
    /// which case the linear turnout formulas are only approximate.
    bool cost_cap_possible() const;

private:
    TurnoutParams tp_;
};

/// Mean absolute second-issue stake E|u + b_J + gamma| of party J's supporters.
double intensity(double b_J, const TurnoutModel& m, const QuadratureConfig& cfg = {});

/// Right's win probability with (referendum = true) or without a simultaneous
/// binding referendum.
ProbEstimate win_prob_turnout(const TurnoutModel& m, bool referendum, const QuadratureConfig& cfg = {});

/// win_prob_turnout(true) - win_prob_turnout(false); contains no p.
double net_benefit_turnout(const TurnoutModel& m, const QuadratureConfig& cfg = {});

/// Expected turnout fraction of each party's supporters.
struct TurnoutShares {
    double right = 0.0;
    double left = 0.0;
};
TurnoutShares expected_turnout(const TurnoutModel& m, bool referendum, const QuadratureConfig& cfg = {});

/// r_T = I(b_L) / (I(b_L) + I(b_R)); Right gains from the referendum iff r > r_T.
ThresholdReport r_T(const TurnoutModel& m, const QuadratureConfig& cfg = {});

}  // namespace ddcalc
