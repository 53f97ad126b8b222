#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ddcalc/electorate.hpp"
#include "ddcalc/quadrature.hpp"

namespace ddcalc {

enum class Issue { Traditional, Second };

struct CongruenceReport {
    Issue issue = Issue::Second;
    Regime regime = Regime::NonBinding;
    double prob_no_ref = 0.0;
    double prob_with_ref = 0.0;
    double delta = 0.0;
    /// r = 1/2 on the traditional issue: the fields above use the Right-majority
    /// convention and these hold the Left-majority one.
    bool knife_edge = false;
    std::optional<double> alt_prob_no_ref;
    std::optional<double> alt_prob_with_ref;
    std::optional<double> alt_delta;
};

/// Probability that the implemented y matches the policy-voter majority.
CongruenceReport second_issue_congruence(const Electorate& e, Regime regime, const QuadratureConfig& cfg = {});

/// Probability that the majority party (Right iff r > 1/2) wins.
CongruenceReport traditional_issue_congruence(const Electorate& e, Regime regime, const QuadratureConfig& cfg = {});

enum class RegionFlag { None, Second, Traditional, Both };

std::string_view to_string(RegionFlag f);

struct RegionCell {
    double b_R = 0.0;
    double r = 0.0;
    bool valid = false;             ///< cell satisfies the model assumptions
    double delta_second = 0.0;
    double delta_traditional = 0.0; ///< Right-majority convention at r = 1/2
    RegionFlag flag = RegionFlag::None;
};

struct RegionGrid {
    ElectorateParams base;          ///< b_R and r are overwritten per cell
    Regime regime = Regime::NonBinding;
    std::vector<double> b_R_values;
    std::vector<double> r_values;
};

/// Signs of both congruence deltas on a (b_R, r) grid; cells ordered b_R-major.
/// Invalid cells are reported with valid = false.
std::vector<RegionCell> classify_congruence_region(const RegionGrid& grid, const QuadratureConfig& cfg = {});
std::vector<RegionCell> classify_congruence_region_serial(const RegionGrid& grid, const QuadratureConfig& cfg = {});

}  // namespace ddcalc
