#include "ddcalc/distkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ddcalc/error.hpp"

namespace ddcalc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

void require_valid(const DistributionSpec& d) {
    if (!(d.scale > 0.0) || !std::isfinite(d.scale))
        throw DomainError("distribution scale must be positive and finite");
}

void require_finite(double x) {
    if (!std::isfinite(x)) throw DomainError("argument must be finite");
}

// Wichura's AS241 (PPND16), followed by one Newton step on erfc.
double standard_normal_quantile(double p) {
    const double q = p - 0.5;
    double x;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            ((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) * r +
                45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608;
        const double den =
            ((((((5226.495278852545925 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
                21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0;
        x = q * num / den;
    } else {
        double r = q < 0.0 ? p : 1.0 - p;
        r = std::sqrt(-std::log(r));
        double num, den;
        if (r <= 5.0) {
            r -= 1.6;
            num = ((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
                      1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
                   4.6303378461565452959) * r + 1.42343711074968357734;
            den = ((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
                      0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
                   2.05319162663775882187) * r + 1.0;
        } else {
            r -= 5.0;
            num = ((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
                      0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
                   5.4637849111641143699) * r + 6.6579046435011037772;
            den = ((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
                      7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
                   0.59983220655588793769) * r + 1.0;
        }
        x = num / den;
        if (q < 0.0) x = -x;
    }
    // polish against the erfc-based cdf, working in the smaller tail
    const double dens = kInvSqrt2Pi * std::exp(-0.5 * x * x);
    if (dens > 0.0) {
        const double err = x <= 0.0 ? 0.5 * std::erfc(-x * kInvSqrt2) - p
                                    : (1.0 - p) - 0.5 * std::erfc(x * kInvSqrt2);
        const double step = err / dens;
        x -= step / (1.0 + 0.5 * x * step);
    }
    return x;
}

}  // namespace

std::string_view to_string(Family f) {
    return f == Family::Normal ? "normal" : "logistic";
}

Family family_from_string(std::string_view s) {
    if (s == "normal" || s == "Normal") return Family::Normal;
    if (s == "logistic" || s == "Logistic") return Family::Logistic;
    throw DomainError("unknown distribution family '" + std::string(s) + "'");
}

double cdf(const DistributionSpec& d, double x) {
    require_valid(d);
    require_finite(x);
    const double z = x / d.scale;
    if (d.family == Family::Normal) return 0.5 * std::erfc(-z * kInvSqrt2);
    return 1.0 / (1.0 + std::exp(-z));
}

double survival(const DistributionSpec& d, double x) {
    return cdf(d, -x);
}

double pdf(const DistributionSpec& d, double x) {
    require_valid(d);
    require_finite(x);
    const double z = x / d.scale;
    if (d.family == Family::Normal) return kInvSqrt2Pi * std::exp(-0.5 * z * z) / d.scale;
    const double e = std::exp(-std::fabs(z));
    return e / (d.scale * (1.0 + e) * (1.0 + e));
}

double pdf_derivative(const DistributionSpec& d, double x) {
    const double f = pdf(d, x);
    const double z = x / d.scale;
    if (d.family == Family::Normal) return -z * f / d.scale;
    return -f * std::tanh(0.5 * z) / d.scale;
}

double quantile(const DistributionSpec& d, double q) {
    require_valid(d);
    if (!(q > 0.0 && q < 1.0)) throw DomainError("quantile level must lie in (0,1)");
    if (q == 0.5) return 0.0;
    if (d.family == Family::Logistic) return d.scale * std::log(q / (1.0 - q));
    if (q > 0.5) return -d.scale * standard_normal_quantile(1.0 - q);
    return d.scale * standard_normal_quantile(q);
}

std::pair<double, double> effective_support(const DistributionSpec& d) {
    const double hi = -quantile(d, kTailMass);
    return {-hi, hi};
}

double cdf(const TruncatedSpec& d, double x) {
    require_finite(x);
    const double a = d.half_width;
    if (x <= -a) return 0.0;
    if (x >= a) return 1.0;
    const double lo = cdf(d.base, -a);
    const double mass = 1.0 - 2.0 * lo;
    return std::clamp((cdf(d.base, x) - lo) / mass, 0.0, 1.0);
}

double pdf(const TruncatedSpec& d, double x) {
    require_finite(x);
    const double a = d.half_width;
    if (x < -a || x > a) return 0.0;
    const double mass = 1.0 - 2.0 * cdf(d.base, -a);
    return pdf(d.base, x) / mass;
}

double quantile(const TruncatedSpec& d, double q) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("quantile level must lie in (0,1)");
    const double lo = cdf(d.base, -d.half_width);
    const double level = lo + q * (1.0 - 2.0 * lo);
    return std::clamp(quantile(d.base, level), -d.half_width, d.half_width);
}

bool ShapeReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ShapeCheck& c) { return c.passed; });
}

const ShapeCheck* ShapeReport::find(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

ShapeReport validate_shape(const DistributionSpec& d, ShapeRole role) {
    ShapeReport report;
    if (!(d.scale > 0.0) || !std::isfinite(d.scale)) {
        report.checks.push_back({"scale", false, "scale must be positive"});
        return report;
    }
    constexpr int n = 1000;
    const double hi = quantile(d, 1.0 - 1e-6);
    const double lo = -hi;
    std::vector<double> xs(n), fs(n), cs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = lo + (hi - lo) * i / (n - 1);
        fs[i] = pdf(d, xs[i]);
        cs[i] = cdf(d, xs[i]);
    }
    char buf[160];

    double worst_sym = 0.0;
    for (int i = 0; i < n; ++i) {
        worst_sym = std::max(worst_sym, std::fabs(cs[i] + cdf(d, -xs[i]) - 1.0));
        worst_sym = std::max(worst_sym, std::fabs(fs[i] - pdf(d, -xs[i])) * d.scale);
    }
    std::snprintf(buf, sizeof buf, "max asymmetry %.3g", worst_sym);
    report.checks.push_back({"symmetry", worst_sym < 1e-12, buf});

    int bad_mono = 0;
    for (int i = 1; i < n; ++i)
        if (!(cs[i] > cs[i - 1])) ++bad_mono;
    std::snprintf(buf, sizeof buf, "%d non-increasing steps", bad_mono);
    report.checks.push_back({"monotone_cdf", bad_mono == 0, buf});

    int bad_qc = 0;
    for (int i = 1; i < n; ++i) {
        if (xs[i] <= 0.0 && !(fs[i] > fs[i - 1])) ++bad_qc;
        if (xs[i - 1] >= 0.0 && !(fs[i] < fs[i - 1])) ++bad_qc;
    }
    std::snprintf(buf, sizeof buf, "%d steps against the mode", bad_qc);
    report.checks.push_back({"quasi_concave", bad_qc == 0, buf});

    if (role == ShapeRole::TasteB) {
        double worst = -1e300;
        for (int i = 1; i + 1 < n; ++i) {
            const double second = std::log(fs[i + 1]) - 2.0 * std::log(fs[i]) + std::log(fs[i - 1]);
            worst = std::max(worst, second);
        }
        std::snprintf(buf, sizeof buf, "max second difference of log pdf %.3g", worst);
        report.checks.push_back({"log_concave", worst <= 1e-12, buf});
    }
    return report;
}

}  // namespace ddcalc
