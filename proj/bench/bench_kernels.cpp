// Serial reference vs OpenMP kernel timings. Usage: bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "ddcalc/congruence.hpp"
#include "ddcalc/oracle.hpp"
#include "ddcalc/parallel.hpp"

using namespace ddcalc;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void report(const std::string& name, double serial, double parallel, bool identical) {
    std::printf("%-28s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  identical %s\n", name.c_str(), serial,
                parallel, serial / parallel, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    std::printf("threads available: %d\n", max_threads());

    const Electorate e(ElectorateParams{0.45, 0.5, 0.05, -1.0, 0.5, {Family::Normal, 1.0}, {Family::Normal, 0.5}});
    SimConfig cfg;
    cfg.n_replications = 20000;
    for (Tally t : {Tally::Aggregate, Tally::PerVoter}) {
        cfg.tally = t;
        cfg.n_policy_voters = t == Tally::PerVoter ? 2000 : 100000;
        const auto setup = make_setup(e, Regime::NonBinding);
        SimResult a, b;
        const double s = best_of(repeats, [&] { a = simulate_serial(setup, cfg); });
        const double p = best_of(repeats, [&] { b = simulate(setup, cfg); });
        report("simulate/" + std::string(to_string(t)), s, p, a.win_freq_R == b.win_freq_R && a.se_win_R == b.se_win_R);
    }

    TurnoutParams tp;
    tp.base.r = 0.55;
    const auto ts = make_setup(TurnoutModel(tp), Regime::Binding);
    cfg.tally = Tally::Aggregate;
    cfg.n_policy_voters = 100000;
    cfg.n_replications = 2000;
    {
        SimResult a, b;
        const double s = best_of(repeats, [&] { a = simulate_serial(ts, cfg); });
        const double p = best_of(repeats, [&] { b = simulate(ts, cfg); });
        report("simulate/turnout", s, p, a.win_freq_R == b.win_freq_R && a.turnout_R_mean == b.turnout_R_mean);
    }

    RegionGrid grid;
    grid.base = {0.5, 0.7, 1.0, -1.0, -0.5, {Family::Logistic, 1.0}, {Family::Normal, 0.5}};
    for (int i = 1; i < 40; ++i) grid.b_R_values.push_back(-1.0 + i / 40.0);
    for (int j = 1; j < 50; ++j) grid.r_values.push_back(j / 50.0);
    std::vector<RegionCell> a, b;
    const double s = best_of(repeats, [&] { a = classify_congruence_region_serial(grid); });
    const double p = best_of(repeats, [&] { b = classify_congruence_region(grid); });
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i)
        same = a[i].delta_second == b[i].delta_second && a[i].delta_traditional == b[i].delta_traditional;
    report("congruence region 39x49", s, p, same);
    return 0;
}
