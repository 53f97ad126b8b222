#include "ddcalc/electorate.hpp"

#include <cmath>
#include <sstream>

#include "ddcalc/error.hpp"
#include "ddcalc/thresholds.hpp"

namespace ddcalc {

std::string_view to_string(ViolationCode c) {
    switch (c) {
        case ViolationCode::Range: return "range";
        case ViolationCode::Assumption1: return "assumption-1";
        case ViolationCode::Assumption2: return "assumption-2";
        case ViolationCode::AssumptionC1: return "assumption-C.1";
        case ViolationCode::ThirdParty: return "third-party";
    }
    return "unknown";
}

bool ValidationReport::has(ViolationCode c) const {
    for (const auto& v : violations)
        if (v.code == c) return true;
    return false;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << to_string(violations[i].code) << ": " << violations[i].message;
    }
    return os.str();
}

ValidationReport validate_ranges(const ElectorateParams& p) {
    ValidationReport rep;
    auto bad = [&](std::string msg) { rep.violations.push_back({ViolationCode::Range, std::move(msg)}); };
    for (double v : {p.r, p.mu, p.p, p.b_L, p.b_R, p.taste.scale, p.shock.scale})
        if (!std::isfinite(v)) {
            bad("all parameters must be finite");
            return rep;
        }
    if (!(p.r > 0.0 && p.r < 1.0)) bad("r must lie in (0,1)");
    if (!(p.mu > 0.0 && p.mu < 1.0)) bad("mu must lie in (0,1)");
    if (!(p.p > 0.0)) bad("p must be positive");
    if (!(p.taste.scale > 0.0)) bad("taste scale must be positive");
    if (!(p.shock.scale > 0.0)) bad("shock scale must be positive");
    return rep;
}

ValidationReport validate(const ElectorateParams& p) {
    ValidationReport rep = validate_ranges(p);
    if (!std::isfinite(p.r + p.mu + p.b_L + p.b_R)) return rep;
    if (!(p.b_L < 0.0)) rep.violations.push_back({ViolationCode::Assumption1, "b_L must be negative"});
    if (!(p.b_L < p.b_R)) rep.violations.push_back({ViolationCode::Assumption1, "b_L must be below b_R"});
    if (p.mu > 0.0 && p.mu < 1.0) {
        const double upper = 1.0 / (2.0 * p.mu);
        if (!(1.0 - upper < p.r && p.r < upper)) {
            std::ostringstream os;
            os << "r = " << p.r << " outside (" << 1.0 - upper << ", " << upper << ")";
            rep.violations.push_back({ViolationCode::Assumption2, os.str()});
        }
    }
    return rep;
}

Electorate::Electorate(const ElectorateParams& params) : params_(params) {
    const auto rep = validate(params);
    if (!rep.ok()) throw ValidationError(rep.summary());
}

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::NoReferendum: return "none";
        case Regime::Binding: return "binding";
        case Regime::NonBinding: return "nonbinding";
    }
    return "unknown";
}

Regime regime_from_string(std::string_view s) {
    if (s == "none" || s == "no_referendum") return Regime::NoReferendum;
    if (s == "binding") return Regime::Binding;
    if (s == "nonbinding" || s == "non_binding") return Regime::NonBinding;
    throw UsageError("unknown regime '" + std::string(s) + "'");
}

PartyPositions initial_positions(const Electorate& e) {
    return {e.b_L() >= 0.0 ? 1 : 0, e.b_R() >= 0.0 ? 1 : 0};
}

PartyPositions post_referendum_positions(const Electorate& e, double gamma, Regime regime) {
    if (!std::isfinite(gamma)) throw DomainError("gamma must be finite");
    switch (regime) {
        case Regime::NoReferendum:
            throw UsageError("post_referendum_positions needs a referendum regime");
        case Regime::Binding: {
            const int y = gamma >= gamma_star(e).value ? 1 : 0;
            return {y, y};
        }
        case Regime::NonBinding:
            return {gamma >= -e.b_L() ? 1 : 0, gamma >= -e.b_R() ? 1 : 0};
    }
    throw UsageError("unknown regime");
}

}  // namespace ddcalc
