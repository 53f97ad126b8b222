#include "ddcalc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ddcalc/error.hpp"
#include "ddcalc/parallel.hpp"
#include "ddcalc/rng.hpp"

namespace ddcalc {

std::string_view to_string(SimMode m) {
    switch (m) {
        case SimMode::TwoParty: return "two_party";
        case SimMode::ThirdParty: return "third_party";
        case SimMode::Turnout: return "turnout";
    }
    return "unknown";
}

std::string_view to_string(Tally t) {
    switch (t) {
        case Tally::Aggregate: return "aggregate";
        case Tally::PerVoter: return "per_voter";
        case Tally::Continuum: return "continuum";
    }
    return "unknown";
}

SimMode sim_mode_from_string(std::string_view s) {
    if (s == "two_party") return SimMode::TwoParty;
    if (s == "third_party") return SimMode::ThirdParty;
    if (s == "turnout") return SimMode::Turnout;
    throw UsageError("unknown simulation mode '" + std::string(s) + "'");
}

Tally tally_from_string(std::string_view s) {
    if (s == "aggregate") return Tally::Aggregate;
    if (s == "per_voter") return Tally::PerVoter;
    if (s == "continuum") return Tally::Continuum;
    throw UsageError("unknown tally '" + std::string(s) + "'");
}

void check_config(const SimConfig& cfg) {
    if (cfg.n_policy_voters < 1) throw UsageError("n_policy_voters must be positive");
    if (cfg.n_policy_voters > 4000000000LL) throw UsageError("n_policy_voters too large");
    if (cfg.n_replications < 1) throw UsageError("n_replications must be positive");
}

SimSetup make_setup(const Electorate& e, Regime regime) {
    SimSetup s;
    s.mode = SimMode::TwoParty;
    s.regime = regime;
    s.r = e.r();
    s.mu = e.mu();
    s.p = e.p();
    s.b_L = e.b_L();
    s.b_R = e.b_R();
    s.taste = e.taste();
    s.shock = e.shock();
    return s;
}

SimSetup make_setup(const ThirdPartyModel& m, Regime regime) {
    SimSetup s = make_setup(m.electorate(), regime);
    s.mode = SimMode::ThirdParty;
    s.v = m.v();
    return s;
}

SimSetup make_setup(const TurnoutModel& m, Regime regime) {
    if (regime == Regime::NonBinding) throw UsageError("turnout referendums are binding");
    const auto& b = m.base();
    SimSetup s;
    s.mode = SimMode::Turnout;
    s.regime = regime;
    s.r = b.r;
    s.mu = b.mu;
    s.p = b.p;
    s.b_L = b.b_L;
    s.b_R = b.b_R;
    s.taste = b.taste;
    s.shock = b.shock;
    s.c_bar = m.params().c_bar;
    s.taste_half_width = m.params().sigma;
    s.shock_half_width = m.params().kappa;
    return s;
}

namespace {

constexpr std::uint32_t kRepStream = 0;
constexpr std::uint32_t kCountStream = 1;
constexpr std::uint32_t kVoterStreamBase = 2;
constexpr int kTurnoutBins = 64;

enum : std::uint8_t { kLeft = 0, kRight = 1, kThird = 2 };

std::int64_t binomial(std::int64_t n, double prob, CounterStream& g) {
    if (n <= 0 || prob <= 0.0) return 0;
    if (prob >= 1.0) return n;
    std::binomial_distribution<std::int64_t> d(n, prob);
    return d(g);
}

// Interval structure for sincere voting: every decision is constant between cuts.
struct VotingTable {
    std::vector<double> cuts;
    std::vector<std::uint8_t> choice[2][4]; // [x][2 y_L + y_R][interval]
    std::vector<bool> prefers_y1;

    std::size_t intervals() const { return cuts.size() + 1; }
    std::size_t locate(double b) const {
        return static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), b) - cuts.begin());
    }
};

std::uint8_t sincere_choice(const SimSetup& s, int x, int y_L, int y_R, double b) {
    const bool third = s.mode == SimMode::ThirdParty;
    const double u[3] = {s.p * (x == 0) + y_L * b, s.p * (x == 1) + y_R * b, s.p * (x == 1) + b + s.v};
    std::uint8_t best = x == 1 ? kRight : kLeft;
    for (std::uint8_t k = 0; k < (third ? 3 : 2); ++k)
        if (u[k] > u[best]) best = k;
    return best;
}

VotingTable build_table(const SimSetup& s) {
    VotingTable t;
    t.cuts.push_back(0.0);
    const bool third = s.mode == SimMode::ThirdParty;
    for (int x = 0; x < 2; ++x)
        for (int cfg = 0; cfg < 4; ++cfg) {
            const int yl = cfg >> 1, yr = cfg & 1;
            const double a[3] = {s.p * (x == 0), s.p * (x == 1), s.p * (x == 1) + s.v};
            const int y[3] = {yl, yr, 1};
            const int np = third ? 3 : 2;
            for (int i = 0; i < np; ++i)
                for (int j = i + 1; j < np; ++j)
                    if (y[i] != y[j]) t.cuts.push_back((a[j] - a[i]) / (y[i] - y[j]));
        }
    std::sort(t.cuts.begin(), t.cuts.end());
    t.cuts.erase(std::unique(t.cuts.begin(), t.cuts.end()), t.cuts.end());
    const std::size_t n = t.intervals();
    for (std::size_t k = 0; k < n; ++k) {
        double rep;
        if (k == 0) rep = t.cuts.front() - 1.0;
        else if (k + 1 == n) rep = t.cuts.back() + 1.0;
        else rep = 0.5 * (t.cuts[k - 1] + t.cuts[k]);
        t.prefers_y1.push_back(k > 0 && t.cuts[k - 1] >= 0.0);
        for (int x = 0; x < 2; ++x)
            for (int cfg = 0; cfg < 4; ++cfg) t.choice[x][cfg].push_back(sincere_choice(s, x, cfg >> 1, cfg & 1, rep));
    }
    return t;
}

struct Totals {
    double left, right, third;
};

std::uint8_t plurality(const Totals& t, double coin) {
    std::uint8_t best = kLeft;
    double top = t.left;
    if (t.right > top || (t.right == top && coin < 0.5)) {
        best = kRight;
        top = t.right;
    }
    if (t.third > top) best = kThird;
    return best;
}

class Replicator {
public:
    Replicator(const SimSetup& s, const SimConfig& cfg) : s_(s), cfg_(cfg) {
        check_config(cfg);
        if (s.mode == SimMode::Turnout) {
            if (cfg.tally == Tally::Continuum) throw UsageError("continuum tally is not available in turnout mode");
            if (s.regime == Regime::NonBinding) throw UsageError("turnout referendums are binding");
            tB_ = {s.taste, s.taste_half_width};
            tG_ = {s.shock, s.shock_half_width};
            edges_.resize(kTurnoutBins + 1);
            edge_cdf_.resize(kTurnoutBins + 1);
            for (int j = 0; j <= kTurnoutBins; ++j) {
                edges_[j] = -s.taste_half_width + 2.0 * s.taste_half_width * j / kTurnoutBins;
                edge_cdf_[j] = cdf(tB_, edges_[j]);
            }
            edges_.back() = s.taste_half_width;
            edge_cdf_.front() = 0.0;
            edge_cdf_.back() = 1.0;
        } else {
            table_ = build_table(s);
        }
    }

    RepOutcome operator()(std::int64_t rep) const {
        return s_.mode == SimMode::Turnout ? turnout(rep) : sincere(rep);
    }

private:
    const SimSetup& s_;
    const SimConfig& cfg_;
    VotingTable table_;
    TruncatedSpec tB_, tG_;
    std::vector<double> edges_, edge_cdf_;

    RepOutcome finish(double gamma_unused, double eta, double coin, double votes_L, double votes_R, double votes_T,
                      int y_L, int y_R, double right_frac, double y1_frac) const {
        (void)gamma_unused;
        const Totals t{s_.mu * votes_L + (1.0 - s_.mu) * (1.0 - eta), s_.mu * votes_R + (1.0 - s_.mu) * eta,
                       s_.mu * votes_T};
        RepOutcome o;
        o.winner = plurality(t, coin);
        o.right_ahead_of_left = t.right > t.left || (t.right == t.left && coin < 0.5);
        const int x = o.winner == kLeft ? 0 : 1;
        const int y = o.winner == kLeft ? y_L : o.winner == kRight ? y_R : 1;
        o.congruent_x = x == (right_frac >= 0.5 ? 1 : 0);
        o.congruent_y = y == (y1_frac >= 0.5 ? 1 : 0);
        o.y1_share = y1_frac;
        return o;
    }

    RepOutcome sincere(std::int64_t rep) const {
        CounterStream rs(cfg_.seed, static_cast<std::uint64_t>(rep), kRepStream);
        const double gamma = sample(s_.shock, rs);
        const double eta = rs.uniform();
        const double coin = rs.uniform();
        const std::size_t K = table_.intervals();
        const double n = static_cast<double>(cfg_.n_policy_voters);
        std::vector<double> hist[2] = {std::vector<double>(K, 0.0), std::vector<double>(K, 0.0)};
        const double mean[2] = {s_.b_L, s_.b_R};

        // upper-tail mass of party x's tastes above cut k
        auto tail = [&](int x, std::size_t k) { return survival(s_.taste, table_.cuts[k] - mean[x] - gamma); };

        if (cfg_.tally == Tally::Aggregate) {
            CounterStream cs(cfg_.seed, static_cast<std::uint64_t>(rep), kCountStream);
            const std::int64_t n_R = binomial(cfg_.n_policy_voters, s_.r, cs);
            const std::int64_t count[2] = {cfg_.n_policy_voters - n_R, n_R};
            for (int x = 0; x < 2; ++x) {
                std::int64_t rem = count[x];
                double above = 1.0;
                for (std::size_t k = 0; k < K && rem > 0; ++k) {
                    std::int64_t c = rem;
                    if (k + 1 < K) {
                        const double next = tail(x, k);
                        c = binomial(rem, above > 0.0 ? 1.0 - next / above : 1.0, cs);
                        above = next;
                    }
                    hist[x][k] = static_cast<double>(c);
                    rem -= c;
                }
            }
        } else if (cfg_.tally == Tally::PerVoter) {
            for (std::int64_t i = 0; i < cfg_.n_policy_voters; ++i) {
                CounterStream vs(cfg_.seed, static_cast<std::uint64_t>(rep),
                                 kVoterStreamBase + static_cast<std::uint32_t>(i));
                const int x = vs.uniform() < s_.r ? 1 : 0;
                const double b = mean[x] + gamma + sample(s_.taste, vs);
                hist[x][table_.locate(b)] += 1.0;
            }
        } else {
            const double share[2] = {1.0 - s_.r, s_.r};
            for (int x = 0; x < 2; ++x) {
                double above = 1.0;
                for (std::size_t k = 0; k < K; ++k) {
                    const double next = k + 1 < K ? tail(x, k) : 0.0;
                    hist[x][k] = share[x] * (above - next) * n;
                    above = next;
                }
            }
        }

        double party[2] = {0.0, 0.0}, y1[2] = {0.0, 0.0};
        for (int x = 0; x < 2; ++x)
            for (std::size_t k = 0; k < K; ++k) {
                party[x] += hist[x][k];
                if (table_.prefers_y1[k]) y1[x] += hist[x][k];
            }
        int y_L = s_.b_L >= 0.0 ? 1 : 0, y_R = s_.b_R >= 0.0 ? 1 : 0;
        if (s_.regime == Regime::Binding) {
            y_L = y_R = (y1[0] + y1[1]) >= 0.5 * n ? 1 : 0;
        } else if (s_.regime == Regime::NonBinding) {
            y_L = y1[0] >= 0.5 * party[0] ? 1 : 0;
            y_R = y1[1] >= 0.5 * party[1] ? 1 : 0;
        }
        const int cfgi = 2 * y_L + y_R;
        double votes[3] = {0.0, 0.0, 0.0};
        for (int x = 0; x < 2; ++x)
            for (std::size_t k = 0; k < K; ++k) votes[table_.choice[x][cfgi][k]] += hist[x][k];
        return finish(gamma, eta, coin, votes[kLeft] / n, votes[kRight] / n, votes[kThird] / n, y_L, y_R,
                      party[1] / n, (y1[0] + y1[1]) / n);
    }

    struct PartyTurnout {
        double votes = 0.0, votes_y1 = 0.0, y1 = 0.0;
    };

    // Exact aggregate draw of one party's turnout with the referendum on the ballot.
    PartyTurnout turnout_bins(double mean, double gamma, std::int64_t count, CounterStream& cs) const {
        PartyTurnout out;
        const double kink = -(mean + gamma);
        const double c_bar = s_.c_bar;
        auto bin = [&](double a, double b, std::int64_t m) {
            if (m <= 0) return;
            const double wa = mean + gamma + a, wb = mean + gamma + b;
            const bool positive = wa + wb >= 0.0;
            const double lo = std::min(std::fabs(wa), std::fabs(wb));
            const double hi = std::max(std::fabs(wa), std::fabs(wb));
            const double a1 = std::min(s_.p + lo, c_bar);
            const double a2 = std::min(s_.p + hi, c_bar);
            const std::int64_t sure = binomial(m, a1 / c_bar, cs);
            const std::int64_t unsure = c_bar > a1 ? binomial(m - sure, (a2 - a1) / (c_bar - a1), cs) : 0;
            std::int64_t extra = 0;
            const double peak = a < 0.0 && b > 0.0 ? pdf(tB_.base, 0.0) : std::max(pdf(tB_.base, a), pdf(tB_.base, b));
            for (std::int64_t i = 0; i < unsure; ++i) {
                double u;
                do u = a + cs.uniform() * (b - a);
                while (cs.uniform() * peak > pdf(tB_.base, u));
                const double cost = a1 + cs.uniform() * (a2 - a1);
                if (cost <= s_.p + std::fabs(mean + gamma + u)) ++extra;
            }
            const double v = static_cast<double>(sure + extra);
            out.votes += v;
            if (positive) {
                out.votes_y1 += v;
                out.y1 += static_cast<double>(m);
            }
        };
        std::int64_t rem = count;
        for (int j = 0; j < kTurnoutBins && rem > 0; ++j) {
            const double above = 1.0 - edge_cdf_[j];
            std::int64_t c = rem;
            if (j + 1 < kTurnoutBins)
                c = binomial(rem, above > 0.0 ? (edge_cdf_[j + 1] - edge_cdf_[j]) / above : 1.0, cs);
            rem -= c;
            const double a = edges_[j], b = edges_[j + 1];
            if (kink > a && kink < b) {
                const double Fk = cdf(tB_, kink);
                const double w = edge_cdf_[j + 1] - edge_cdf_[j];
                const std::int64_t left = binomial(c, w > 0.0 ? (Fk - edge_cdf_[j]) / w : 0.5, cs);
                bin(a, kink, left);
                bin(kink, b, c - left);
            } else {
                bin(a, b, c);
            }
        }
        return out;
    }

    RepOutcome turnout(std::int64_t rep) const {
        CounterStream rs(cfg_.seed, static_cast<std::uint64_t>(rep), kRepStream);
        const double gamma = sample(tG_, rs);
        const double eta = rs.uniform();
        const double coin = rs.uniform();
        const bool ballot = s_.regime == Regime::Binding;
        const double mean[2] = {s_.b_L, s_.b_R};
        const double n = static_cast<double>(cfg_.n_policy_voters);
        PartyTurnout pt[2];
        double party[2] = {0.0, 0.0};

        if (cfg_.tally == Tally::Aggregate) {
            CounterStream cs(cfg_.seed, static_cast<std::uint64_t>(rep), kCountStream);
            const std::int64_t n_R = binomial(cfg_.n_policy_voters, s_.r, cs);
            const std::int64_t count[2] = {cfg_.n_policy_voters - n_R, n_R};
            for (int x = 0; x < 2; ++x) {
                party[x] = static_cast<double>(count[x]);
                if (ballot) {
                    pt[x] = turnout_bins(mean[x], gamma, count[x], cs);
                } else {
                    pt[x].votes = static_cast<double>(binomial(count[x], s_.p / s_.c_bar, cs));
                    pt[x].y1 = static_cast<double>(binomial(count[x], 1.0 - cdf(tB_, -mean[x] - gamma), cs));
                }
            }
        } else {
            for (std::int64_t i = 0; i < cfg_.n_policy_voters; ++i) {
                CounterStream vs(cfg_.seed, static_cast<std::uint64_t>(rep),
                                 kVoterStreamBase + static_cast<std::uint32_t>(i));
                const int x = vs.uniform() < s_.r ? 1 : 0;
                const double b = mean[x] + gamma + sample(tB_, vs);
                const double cost = s_.c_bar * vs.uniform();
                const double stake = ballot ? s_.p + std::fabs(b) : s_.p;
                party[x] += 1.0;
                const bool likes = b >= 0.0;
                if (likes) pt[x].y1 += 1.0;
                if (cost <= stake) {
                    pt[x].votes += 1.0;
                    if (likes) pt[x].votes_y1 += 1.0;
                }
            }
        }
        int y = 0;
        if (ballot) {
            const double cast = pt[0].votes + pt[1].votes;
            y = cast > 0.0 && pt[0].votes_y1 + pt[1].votes_y1 >= 0.5 * cast ? 1 : 0;
        }
        RepOutcome o = finish(gamma, eta, coin, pt[0].votes / n, pt[1].votes / n, 0.0, y, y, party[1] / n,
                              (pt[0].y1 + pt[1].y1) / n);
        o.turnout_L = party[0] > 0.0 ? pt[0].votes / party[0] : 0.0;
        o.turnout_R = party[1] > 0.0 ? pt[1].votes / party[1] : 0.0;
        return o;
    }
};

struct Moments {
    double mean = 0.0, se = 0.0;
};

template <class F>
Moments moments(const std::vector<RepOutcome>& reps, F&& f) {
    const double n = static_cast<double>(reps.size());
    double sum = 0.0;
    for (const auto& r : reps) sum += f(r);
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& r : reps) {
        const double d = f(r) - mean;
        ss += d * d;
    }
    return {mean, reps.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0};
}

Moments frequency(const std::vector<RepOutcome>& reps, bool (*pred)(const RepOutcome&)) {
    double hits = 0.0;
    for (const auto& r : reps) hits += pred(r) ? 1.0 : 0.0;
    const double n = static_cast<double>(reps.size());
    const double f = hits / n;
    return {f, std::sqrt(f * (1.0 - f) / n)};
}

}  // namespace

std::vector<RepOutcome> run_replications(const SimSetup& s, const SimConfig& cfg) {
    const Replicator rep(s, cfg);
    return parallel_map<RepOutcome>(static_cast<std::size_t>(cfg.n_replications),
                                    [&](std::size_t i) { return rep(static_cast<std::int64_t>(i)); });
}

std::vector<RepOutcome> run_replications_serial(const SimSetup& s, const SimConfig& cfg) {
    const Replicator rep(s, cfg);
    return serial_map<RepOutcome>(static_cast<std::size_t>(cfg.n_replications),
                                  [&](std::size_t i) { return rep(static_cast<std::int64_t>(i)); });
}

SimResult summarize(const SimSetup& s, const SimConfig& cfg, const std::vector<RepOutcome>& reps) {
    SimResult r;
    r.mode = s.mode;
    r.regime = s.regime;
    r.tally = cfg.tally;
    r.seed = cfg.seed;
    r.n_policy_voters = cfg.n_policy_voters;
    r.n_replications = static_cast<std::int64_t>(reps.size());
    auto m = frequency(reps, [](const RepOutcome& o) { return o.winner == kLeft; });
    r.win_freq_L = m.mean;
    r.se_win_L = m.se;
    m = frequency(reps, [](const RepOutcome& o) { return o.winner == kRight; });
    r.win_freq_R = m.mean;
    r.se_win_R = m.se;
    m = frequency(reps, [](const RepOutcome& o) { return o.winner == kThird; });
    r.win_freq_T = m.mean;
    r.se_win_T = m.se;
    m = frequency(reps, [](const RepOutcome& o) { return o.right_ahead_of_left; });
    r.ahead_freq = m.mean;
    r.se_ahead = m.se;
    m = frequency(reps, [](const RepOutcome& o) { return o.congruent_y; });
    r.congruence_y = m.mean;
    r.se_congruence_y = m.se;
    m = frequency(reps, [](const RepOutcome& o) { return o.congruent_x; });
    r.congruence_x = m.mean;
    r.se_congruence_x = m.se;
    m = moments(reps, [](const RepOutcome& o) { return o.y1_share; });
    r.y1_share_mean = m.mean;
    r.se_y1_share = m.se;
    m = moments(reps, [](const RepOutcome& o) { return o.turnout_R; });
    r.turnout_R_mean = m.mean;
    r.se_turnout_R = m.se;
    m = moments(reps, [](const RepOutcome& o) { return o.turnout_L; });
    r.turnout_L_mean = m.mean;
    r.se_turnout_L = m.se;
    return r;
}

SimResult simulate(const SimSetup& s, const SimConfig& cfg) {
    return summarize(s, cfg, run_replications(s, cfg));
}

SimResult simulate_serial(const SimSetup& s, const SimConfig& cfg) {
    return summarize(s, cfg, run_replications_serial(s, cfg));
}

SimResult simulate(const Electorate& e, Regime regime, const SimConfig& cfg) {
    return simulate(make_setup(e, regime), cfg);
}

SimResult simulate(const ThirdPartyModel& m, Regime regime, const SimConfig& cfg) {
    return simulate(make_setup(m, regime), cfg);
}

SimResult simulate(const TurnoutModel& m, Regime regime, const SimConfig& cfg) {
    return simulate(make_setup(m, regime), cfg);
}

namespace {

struct PairedGain {
    double mean = 0.0, se = 0.0;
};

PairedGain paired_gain(const SimSetup& held, const SimSetup& unheld, const SimConfig& cfg) {
    const auto a = run_replications(held, cfg);
    const auto b = run_replications(unheld, cfg);
    std::vector<RepOutcome> diff(a.size());
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        d[i] = (a[i].winner == kRight ? 1.0 : 0.0) - (b[i].winner == kRight ? 1.0 : 0.0);
    const double n = static_cast<double>(d.size());
    double sum = 0.0;
    for (double x : d) sum += x;
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : d) ss += (x - mean) * (x - mean);
    return {mean, n > 1.0 ? std::sqrt(ss / (n - 1.0) / n) : 0.0};
}

template <class Gain>
ThresholdEstimate bisect_gain(ThresholdName q, double lo, double hi, int steps, Gain&& gain) {
    if (!(lo < hi)) throw UsageError("threshold search needs r_lo < r_hi");
    ThresholdEstimate est;
    est.name = q;
    PairedGain glo = gain(lo), ghi = gain(hi);
    est.evaluations = 2;
    if ((glo.mean > 0.0) == (ghi.mean > 0.0) || glo.mean == 0.0 || ghi.mean == 0.0) {
        est.found = false;
        est.value = std::fabs(glo.mean) < std::fabs(ghi.mean) ? lo : hi;
        est.ci_lo = lo;
        est.ci_hi = hi;
        est.note = "no sign change of simulated net benefit in range";
        return est;
    }
    const double slope = (ghi.mean - glo.mean) / (hi - lo);
    double last_se = std::max(glo.se, ghi.se);
    for (int i = 0; i < steps; ++i) {
        const double mid = 0.5 * (lo + hi);
        const PairedGain gm = gain(mid);
        ++est.evaluations;
        last_se = gm.se;
        if ((gm.mean > 0.0) == (glo.mean > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    double root = 0.5 * (lo + hi);
    if (ghi.mean != glo.mean) root = std::clamp(lo - glo.mean * (hi - lo) / (ghi.mean - glo.mean), lo, hi);
    est.found = true;
    est.value = root;
    est.se = last_se / std::fabs(slope);
    const double half = 3.0 * est.se + 0.5 * (hi - lo);
    est.ci_lo = root - half;
    est.ci_hi = root + half;
    return est;
}

}  // namespace

ThresholdEstimate estimate_threshold(ThresholdName q, const ElectorateParams& base, double r_lo, double r_hi,
                                     const SimConfig& cfg, int steps) {
    Regime regime;
    switch (q) {
        case ThresholdName::RBind:
            if (base.b_R < 0.0) throw UsageError("r_bind needs b_R >= 0");
            regime = Regime::Binding;
            break;
        case ThresholdName::RStar:
            if (base.b_R >= 0.0) throw UsageError("r_star needs b_R < 0");
            regime = Regime::NonBinding;
            break;
        case ThresholdName::RStarStar:
            if (base.b_R < 0.0) throw UsageError("r_star_star needs b_R >= 0");
            regime = Regime::NonBinding;
            break;
        default:
            throw UsageError("estimate_threshold supports r_bind, r_star and r_star_star for two-party scenarios");
    }
    return bisect_gain(q, r_lo, r_hi, steps, [&](double r) {
        ElectorateParams p = base;
        p.r = r;
        const Electorate e(p);
        return paired_gain(make_setup(e, regime), make_setup(e, Regime::NoReferendum), cfg);
    });
}

ThresholdEstimate estimate_threshold(ThresholdName q, const TurnoutParams& base, double r_lo, double r_hi,
                                     const SimConfig& cfg, int steps) {
    if (q != ThresholdName::RT) throw UsageError("turnout scenarios support only r_T");
    return bisect_gain(q, r_lo, r_hi, steps, [&](double r) {
        TurnoutParams p = base;
        p.base.r = r;
        const TurnoutModel m(p);
        return paired_gain(make_setup(m, Regime::Binding), make_setup(m, Regime::NoReferendum), cfg);
    });
}

}  // namespace ddcalc
