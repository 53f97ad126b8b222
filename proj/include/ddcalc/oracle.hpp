#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ddcalc/electorate.hpp"
#include "ddcalc/third_party.hpp"
#include "ddcalc/thresholds.hpp"
#include "ddcalc/turnout.hpp"

namespace ddcalc {

enum class SimMode { TwoParty, ThirdParty, Turnout };

/// How the policy-voter electorate of a replication is realized.
///   Aggregate: exact multinomial counts over taste intervals on which every
///              voter decision is constant (same law as PerVoter, much faster).
///   PerVoter:  every voter drawn individually from its own counter stream.
///   Continuum: expected shares given gamma (no finite-sample noise).
enum class Tally { Aggregate, PerVoter, Continuum };

std::string_view to_string(SimMode m);
std::string_view to_string(Tally t);
SimMode sim_mode_from_string(std::string_view s);
Tally tally_from_string(std::string_view s);

struct SimConfig {
    std::int64_t n_policy_voters = 100000;
    std::int64_t n_replications = 10000;
    std::uint64_t seed = 20240917;
    Tally tally = Tally::Aggregate;
};

void check_config(const SimConfig& cfg);

/// One replication. winner: 0 Left, 1 Right, 2 Third.
struct RepOutcome {
    std::uint8_t winner = 0;
    bool right_ahead_of_left = false;
    bool congruent_y = false;
    bool congruent_x = false;
    double y1_share = 0.0;   ///< policy voters preferring y = 1
    double turnout_R = 1.0;  ///< fraction of Right's supporters who vote
    double turnout_L = 1.0;
};

struct SimResult {
    SimMode mode = SimMode::TwoParty;
    Regime regime = Regime::NoReferendum;
    Tally tally = Tally::Aggregate;
    std::uint64_t seed = 0;
    std::int64_t n_policy_voters = 0;
    std::int64_t n_replications = 0;

    double win_freq_L = 0.0, se_win_L = 0.0;
    double win_freq_R = 0.0, se_win_R = 0.0;
    double win_freq_T = 0.0, se_win_T = 0.0;
    double ahead_freq = 0.0, se_ahead = 0.0;          ///< Right out-polls Left
    double congruence_y = 0.0, se_congruence_y = 0.0;
    double congruence_x = 0.0, se_congruence_x = 0.0;
    double y1_share_mean = 0.0, se_y1_share = 0.0;
    double turnout_R_mean = 1.0, se_turnout_R = 0.0;
    double turnout_L_mean = 1.0, se_turnout_L = 0.0;
};

/// Everything one simulation needs. Build with the make_setup overloads.
struct SimSetup {
    SimMode mode = SimMode::TwoParty;
    Regime regime = Regime::NoReferendum; ///< NoReferendum: none held; otherwise held with that regime
    double r = 0.5, mu = 0.5, p = 0.2, b_L = -0.5, b_R = -0.1;
    double v = 0.0;                       ///< Third's valence (ThirdParty)
    DistributionSpec taste, shock;
    double c_bar = 0.0, taste_half_width = 0.0, shock_half_width = 0.0; ///< Turnout
};

SimSetup make_setup(const Electorate& e, Regime regime);
SimSetup make_setup(const ThirdPartyModel& m, Regime regime);
/// Turnout referendums are binding and simultaneous; regime must be NoReferendum or Binding.
SimSetup make_setup(const TurnoutModel& m, Regime regime);

/// Per-replication outcomes ordered by replication index.
std::vector<RepOutcome> run_replications(const SimSetup& s, const SimConfig& cfg);
std::vector<RepOutcome> run_replications_serial(const SimSetup& s, const SimConfig& cfg);

SimResult summarize(const SimSetup& s, const SimConfig& cfg, const std::vector<RepOutcome>& reps);

SimResult simulate(const Electorate& e, Regime regime, const SimConfig& cfg);
SimResult simulate(const ThirdPartyModel& m, Regime regime, const SimConfig& cfg);
SimResult simulate(const TurnoutModel& m, Regime regime, const SimConfig& cfg);
SimResult simulate(const SimSetup& s, const SimConfig& cfg);
SimResult simulate_serial(const SimSetup& s, const SimConfig& cfg);

struct ThresholdEstimate {
    ThresholdName name = ThresholdName::RBind;
    double value = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double se = 0.0;
    bool found = false;
    int evaluations = 0;
    std::string note;
};

/// Bisection in r on the simulated net benefit of holding a referendum
/// (paired replications: same seed with and without). The CI is +-3 standard
/// errors of the root plus the final bracket half-width.
ThresholdEstimate estimate_threshold(ThresholdName q, const ElectorateParams& base, double r_lo, double r_hi,
                                     const SimConfig& cfg, int steps = 12);
ThresholdEstimate estimate_threshold(ThresholdName q, const TurnoutParams& base, double r_lo, double r_hi,
                                     const SimConfig& cfg, int steps = 12);

}  // namespace ddcalc
