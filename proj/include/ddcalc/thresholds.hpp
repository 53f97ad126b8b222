#pragma once

#include <string>
#include <string_view>

#include "ddcalc/distkit.hpp"
#include "ddcalc/electorate.hpp"
#include "ddcalc/quadrature.hpp"

namespace ddcalc {

enum class ThresholdName { GammaStar, RBind, RStar, RStarStar, BRdagger, BRddagger, BLstar, BRstar, RT };

std::string_view to_string(ThresholdName n);

struct ThresholdReport {
    ThresholdName name = ThresholdName::GammaStar;
    double value = 0.0;
    double residual = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
    bool found = true;   ///< false when a search window held no sign change; value is then the window edge
    std::string note;
};

/// Threshold inputs that do not involve r or mu.
struct Primitives {
    double b_L = -1.0;
    double b_R = 0.5;
    double p = 0.05;
    DistributionSpec taste{Family::Normal, 1.0};
    DistributionSpec shock{Family::Normal, 0.5};

    static Primitives of(const Electorate& e);
};

/// Shock at which the electorate splits evenly on y:
/// r B(g + b_R) + (1 - r) B(g + b_L) = 1/2, inside (-b_R, -b_L).
ThresholdReport gamma_star(double r, double b_L, double b_R, const DistributionSpec& taste);
ThresholdReport gamma_star(const Electorate& e);

/// Binding referendum threshold (b_R >= 0): Right gains iff r > r_bind.
ThresholdReport r_bind(const Primitives& pr, const QuadratureConfig& cfg = {});

/// Non-binding threshold with aligned parties (b_L <= b_R < 0): Right gains iff r < r*.
ThresholdReport r_star(const Primitives& pr, const QuadratureConfig& cfg = {});

/// Non-binding threshold with misaligned parties (b_R >= 0): Right gains iff r > r**.
ThresholdReport r_star_star(const Primitives& pr, const QuadratureConfig& cfg = {});

/// Ordering statistic: positive means r** < r_bind, negative means r** > r_bind.
double delta_at_rbind(const Primitives& pr, const QuadratureConfig& cfg = {});

struct DaggerPair {
    ThresholdReport ddagger; ///< nearest sign change below -b_L
    ThresholdReport dagger;  ///< nearest sign change above -b_L
};

/// Scans delta_at_rbind outward from -b_L over [0, -b_L + 4 shock scale].
/// Ignores pr.b_R.
DaggerPair br_dagger_ddagger(const Primitives& pr, const QuadratureConfig& cfg = {});

}  // namespace ddcalc
