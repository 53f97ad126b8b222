#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ddcalc/distkit.hpp"

namespace ddcalc {

struct ElectorateParams {
    double r = 0.5;    ///< conservative share of policy voters
    double mu = 0.5;   ///< policy-voter share
    double p = 0.2;    ///< partisan stake on the traditional issue
    double b_L = -0.5; ///< Left supporters' mean taste for y = 1
    double b_R = -0.1; ///< Right supporters' mean taste for y = 1
    DistributionSpec taste{Family::Normal, 0.2};
    DistributionSpec shock{Family::Normal, 0.25};
};

enum class ViolationCode { Range, Assumption1, Assumption2, AssumptionC1, ThirdParty };

std::string_view to_string(ViolationCode c);

struct Violation {
    ViolationCode code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(ViolationCode c) const;
    std::string summary() const;
};

/// Range checks plus the two model assumptions (b_L < 0, b_L < b_R and
/// 1 - 1/(2 mu) < r < 1/(2 mu)).
ValidationReport validate(const ElectorateParams& params);

/// Range checks only (r, mu in (0,1), p > 0, positive scales, finite values).
ValidationReport validate_ranges(const ElectorateParams& params);

/// Parameters that passed validate(). Construction throws ValidationError.
class Electorate {
public:
    explicit Electorate(const ElectorateParams& params);

    const ElectorateParams& params() const { return params_; }
    double r() const { return params_.r; }
    double mu() const { return params_.mu; }
    double p() const { return params_.p; }
    double b_L() const { return params_.b_L; }
    double b_R() const { return params_.b_R; }
    const DistributionSpec& taste() const { return params_.taste; }
    const DistributionSpec& shock() const { return params_.shock; }

private:
    ElectorateParams params_;
};

enum class Regime { NoReferendum, Binding, NonBinding };

std::string_view to_string(Regime r);
Regime regime_from_string(std::string_view s);

/// Second-issue platforms; traditional platforms are fixed at x_L = 0, x_R = 1.
struct PartyPositions {
    int y_L = 0;
    int y_R = 0;

    bool diverge() const { return y_L != y_R; }
    bool operator==(const PartyPositions&) const = default;
};

/// y_J = 1 iff b_J >= 0.
PartyPositions initial_positions(const Electorate& e);

/// Positions after the referendum reveals gamma. Binding: both follow the
/// overall majority (gamma >= gamma*). NonBinding: each party follows its own
/// supporters (gamma >= -b_J).
PartyPositions post_referendum_positions(const Electorate& e, double gamma, Regime regime);

}  // namespace ddcalc
