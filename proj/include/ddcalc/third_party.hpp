#pragma once

#include <optional>
#include <string_view>

#include "ddcalc/calculus.hpp"
#include "ddcalc/electorate.hpp"
#include "ddcalc/thresholds.hpp"

namespace ddcalc {

/// Third party offering x = 1, y = 1 with valence v < 0. Tastes follow the
/// scale family B(z / sigma) of base.taste, i.e. scale base.taste.scale * sigma.
struct ThirdPartyParams {
    ElectorateParams base{0.5, 0.6, 0.2, -0.5, -0.1, {Family::Normal, 1.0}, {Family::Normal, 0.25}};
    double v = -0.01;
    double sigma = 1.0;
};

ValidationReport validate(const ThirdPartyParams& tp);

/// Validated third-party setting (b_L < b_R < 0, v < 0). Throws ValidationError.
class ThirdPartyModel {
public:
    explicit ThirdPartyModel(const ThirdPartyParams& tp);

    const ThirdPartyParams& params() const { return tp_; }
    /// The two-party electorate with the scaled taste distribution.
    const Electorate& electorate() const { return electorate_; }
    const DistributionSpec& taste() const { return electorate_.taste(); }
    double v() const { return tp_.v; }

private:
    ThirdPartyParams tp_;
    Electorate electorate_;
};

/// Probability that Right out-polls Left while Third runs, for a given gamma.
Clamped lambda_hat_checked(const ThirdPartyModel& m, double gamma);
double lambda_hat(const ThirdPartyModel& m, double gamma);

/// True when Third's entry lowers Right's chance of finishing ahead of Left.
bool worse_off_condition(const ThirdPartyModel& m, const QuadratureConfig& cfg = {});

/// Right's gain from a non-binding referendum that pushes parties to y = 1
/// (and so removes Third's appeal) for high shocks.
ProbEstimate net_benefit_third(const ThirdPartyModel& m, const QuadratureConfig& cfg = {});

/// Right finishes ahead of Left: without referendum every shock faces Third;
/// with a non-binding referendum Third only matters for gamma < -b_R.
ProbEstimate ahead_of_left_prob(const ThirdPartyModel& m, bool held, const QuadratureConfig& cfg = {});

double phi(double b_L, double b_R, const DistributionSpec& shock);

struct PhiThresholds {
    ThresholdReport b_L_star;
    std::optional<ThresholdReport> b_R_star; ///< present when b_L < b_L_star
};

PhiThresholds phi_thresholds(double b_L, const DistributionSpec& shock);

enum class Decision { Hold, NotHold };
enum class Standing { Advantaged, Disadvantaged };

std::string_view to_string(Decision d);
std::string_view to_string(Standing s);

struct PropB1Classification {
    Decision decision = Decision::NotHold;   ///< large-scale limit prediction
    Standing standing = Standing::Advantaged;
    double phi_value = 0.0;
    double b_L_star = 0.0;
    std::optional<double> b_R_star;
    double exact_gain = 0.0;                 ///< net_benefit_third at the given sigma
    Decision exact_decision = Decision::NotHold;
    double sigma_proxy = 0.0;                ///< required effective taste scale
    bool agree() const { return decision == exact_decision; }
};

/// Large-scale taste proxy: 50 * max(p, |b_L|, |b_R|, shock scale, |v|).
double sigma_star_proxy(const ThirdPartyParams& tp);

/// Requires mu < 2/3, r != 1/2 and effective taste scale >= sigma_star_proxy.
PropB1Classification classify_prop_b1(const ThirdPartyModel& m, const QuadratureConfig& cfg = {});

}  // namespace ddcalc
