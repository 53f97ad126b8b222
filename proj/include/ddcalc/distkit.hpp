#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ddcalc {

enum class Family { Normal, Logistic };

std::string_view to_string(Family f);
Family family_from_string(std::string_view s);

/// Symmetric, mean-zero distribution. `scale` is the standard deviation for
/// Normal and the logistic scale parameter for Logistic.
struct DistributionSpec {
    Family family = Family::Normal;
    double scale = 1.0;

    bool operator==(const DistributionSpec&) const = default;
};

double cdf(const DistributionSpec& d, double x);
double pdf(const DistributionSpec& d, double x);
double pdf_derivative(const DistributionSpec& d, double x);
double quantile(const DistributionSpec& d, double q);

/// Upper tail 1 - cdf(x), accurate when cdf(x) is close to one.
double survival(const DistributionSpec& d, double x);

/// Truncation points used for integrals over the whole real line.
inline constexpr double kTailMass = 1e-12;

/// [quantile(1e-12), quantile(1 - 1e-12)].
std::pair<double, double> effective_support(const DistributionSpec& d);

/// Base family conditioned on [-half_width, half_width].
struct TruncatedSpec {
    DistributionSpec base;
    double half_width = 1.0;
};

double cdf(const TruncatedSpec& d, double x);
double pdf(const TruncatedSpec& d, double x);
double quantile(const TruncatedSpec& d, double q);

enum class ShapeRole { TasteB, ShockG };

struct ShapeCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ShapeReport {
    std::vector<ShapeCheck> checks;

    bool all_passed() const;
    const ShapeCheck* find(std::string_view name) const;
};

/// Checks symmetry, monotone cdf, quasi-concavity and (TasteB only)
/// log-concavity on a 1000-point grid spanning quantiles [1e-6, 1 - 1e-6].
ShapeReport validate_shape(const DistributionSpec& d, ShapeRole role);

}  // namespace ddcalc
