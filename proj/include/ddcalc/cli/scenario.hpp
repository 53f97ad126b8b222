#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ddcalc/electorate.hpp"
#include "ddcalc/oracle.hpp"
#include "ddcalc/quadrature.hpp"
#include "ddcalc/third_party.hpp"
#include "ddcalc/turnout.hpp"

namespace ddcalc::cli {

struct ThirdPartyBlock {
    double v = -0.01;
    double sigma = 1.0;
};

struct TurnoutBlock {
    double c_bar = 6.0;
    double sigma = 2.5;
    double kappa = 1.0;
};

/// A parsed scenario file. At most one of third_party / turnout is present.
struct Scenario {
    std::string name = "scenario";
    ElectorateParams params;
    Regime regime = Regime::NonBinding;
    std::optional<ThirdPartyBlock> third_party;
    std::optional<TurnoutBlock> turnout;
    QuadratureConfig quadrature;
    SimConfig simulation;
    std::string source = "<scenario>";
    std::map<std::string, int> key_lines;  ///< line of each top-level key in the source text

    SimMode mode() const;
    ThirdPartyParams third_party_params() const;
    TurnoutParams turnout_params() const;
};

/// Parses JSON scenario text. Syntax errors, type errors and unknown keys
/// throw ValidationError with "source:line: message".
Scenario parse_scenario(std::string_view text, std::string_view source = "<scenario>");
Scenario load_scenario(const std::string& path);

/// Model-assumption checks for the scenario's mode.
ValidationReport validate(const Scenario& s);

/// Throws ValidationError when validate(s) fails, citing the line of the
/// offending key when the scenario came from a file.
void require_valid(const Scenario& s);

/// Scalar parameters addressable by name in sweeps.
bool set_parameter(Scenario& s, std::string_view name, double value);
std::optional<double> get_parameter(const Scenario& s, std::string_view name);

}  // namespace ddcalc::cli
