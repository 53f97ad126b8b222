#pragma once

#include "ddcalc/electorate.hpp"
#include "ddcalc/quadrature.hpp"

namespace ddcalc {

/// A probability or probability difference with diagnostics.
struct ProbEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
    bool clamped = false; ///< some win-probability evaluation left [0,1] and was clamped
};

struct Clamped {
    double value;
    bool clamped;
};

/// Right's win probability when its policy-vote share is r_eff:
/// 1/2 + mu/(1-mu) (r_eff - 1/2), clamped to [0,1].
double lambda_win(double r_eff, double mu);
Clamped lambda_win_checked(double r_eff, double mu);

/// Right's policy-vote share in a multi-issue election (parties split on y).
double right_share_multi(double r, double b_L, double b_R, double p, const DistributionSpec& taste, double gamma);
double right_share_multi(const Electorate& e, double gamma);

/// Right's ex-ante election-win probability. `held` selects whether a
/// referendum of the given regime takes place; NoReferendum requires !held.
ProbEstimate win_prob(const Electorate& e, Regime regime, bool held, const QuadratureConfig& cfg = {});

/// Right's gain from holding a referendum, computed from its own integral
/// (not as a difference of win_prob calls). Exactly zero for Binding with b_R < 0.
ProbEstimate net_benefit(const Electorate& e, Regime regime, const QuadratureConfig& cfg = {});

}  // namespace ddcalc
