#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ddcalc/cli/scenario.hpp"
#include "ddcalc/oracle.hpp"

namespace ddcalc::cli {

enum ExitCode : int { kOk = 0, kOracleDisagreement = 1, kInvalid = 2, kNumerical = 3 };

struct QuantityInfo {
    std::string_view name;
    std::string_view symbol;
    std::string_view description;
    unsigned modes;    ///< bit set of 1 << SimMode
    bool needs_gamma;  ///< evaluated at the sweep/table coordinate gamma
};

const std::vector<QuantityInfo>& quantity_catalog();
const QuantityInfo& quantity_info(std::string_view name);

/// Value of a named quantity, or nullopt when it is not defined for these
/// parameters (e.g. r_star with b_R >= 0). Throws UsageError for names that
/// do not apply to the scenario's mode.
std::optional<double> compute_quantity(const Scenario& s, std::string_view name, std::optional<double> gamma = {});

struct EvalRow {
    std::string name;
    std::string symbol;
    std::optional<double> gamma;
    std::optional<double> value;
    std::string note;
};

struct EvalReport {
    Scenario scenario;
    std::vector<EvalRow> rows;
    std::vector<EvalRow> share_table;  ///< s(gamma) and g(gamma) on a grid
};

EvalReport evaluate(const Scenario& s);
void write_eval_text(const EvalReport& r, std::ostream& out);
void write_eval_csv(const EvalReport& r, std::ostream& out);

struct SweepSpec {
    std::string variable;  ///< a scenario parameter name or "gamma"
    double from = 0.0;
    double to = 1.0;
    int steps = 11;
    std::vector<std::string> quantities;  ///< empty: the mode's default list
};

void check(const SweepSpec& spec);
std::vector<std::string> default_sweep_quantities(SimMode mode);
std::vector<std::string> sweep_parameter_names();
void run_sweep(const Scenario& s, const SweepSpec& spec, std::ostream& csv);

std::vector<std::string> figure_names();
void run_figure(std::string_view name, const QuadratureConfig& cfg, std::ostream& csv);

struct Agreement {
    std::string quantity;
    Regime regime = Regime::NoReferendum;
    double analytic = 0.0;
    double simulated = 0.0;
    double se = 0.0;   ///< larger of the simulated and the analytic-implied standard error
    double z = 0.0;
    bool pass = false;
};

struct ValidationRun {
    Scenario scenario;
    std::vector<Agreement> rows;
    std::vector<SimResult> sims;
    bool all_passed() const;
};

ValidationRun run_validation(const Scenario& s);
void write_validation_text(const ValidationRun& v, std::ostream& out);
void write_validation_csv(const ValidationRun& v, std::ostream& out);
/// One row per simulated regime: scenario_id, mode, regime, win_freq_R, se, congruence_y, congruence_x, seed.
void write_sim_results_csv(const ValidationRun& v, std::ostream& out);

/// Full command line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ddcalc::cli
