#include <fstream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "ddcalc/cli/commands.hpp"
#include "ddcalc/error.hpp"
#include "ddcalc/parallel.hpp"

namespace ddcalc::cli {

namespace {

struct GlobalOptions {
    std::optional<double> quad_abs_tol;
    std::optional<double> quad_rel_tol;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    std::string out;
};

void apply(const GlobalOptions& g, Scenario& s) {
    if (g.quad_abs_tol) s.quadrature.abs_tol = *g.quad_abs_tol;
    if (g.quad_rel_tol) s.quadrature.rel_tol = *g.quad_rel_tol;
    if (g.seed) s.simulation.seed = *g.seed;
    check_config(s.quadrature);
}

QuadratureConfig quadrature_of(const GlobalOptions& g) {
    QuadratureConfig cfg;
    if (g.quad_abs_tol) cfg.abs_tol = *g.quad_abs_tol;
    if (g.quad_rel_tol) cfg.rel_tol = *g.quad_rel_tol;
    check_config(cfg);
    return cfg;
}

/// Writes to --out when given, otherwise to the fallback stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw UsageError("cannot open output file '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Referendum and party-competition calculator: analytic quantities, sweeps, figure data and "
                 "Monte Carlo validation."};
    app.name("ddcalc");
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--quad-abs-tol", g.quad_abs_tol, "absolute quadrature tolerance");
    app.add_option("--quad-rel-tol", g.quad_rel_tol, "relative quadrature tolerance");
    app.add_option("--seed", g.seed, "simulation seed (overrides the scenario)");
    app.add_option("--threads", g.threads, "worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", g.out, "write CSV output to this file");

    std::string scenario_path, format = "text";
    auto* eval = app.add_subcommand("eval", "evaluate every applicable quantity for a scenario");
    eval->add_option("scenario", scenario_path, "scenario JSON file")->required();
    eval->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "csv"}));

    SweepSpec spec;
    std::string quantities;
    auto* sweep = app.add_subcommand("sweep", "evaluate quantities over a grid of one variable");
    sweep->add_option("scenario", scenario_path, "scenario JSON file")->required();
    sweep->add_option("--var", spec.variable, "parameter to sweep, or gamma")->required();
    sweep->add_option("--from", spec.from, "first grid value")->required();
    sweep->add_option("--to", spec.to, "last grid value")->required();
    sweep->add_option("--steps", spec.steps, "number of grid points (>= 2)")->required();
    sweep->add_option("--quantities", quantities, "comma-separated quantity names");

    std::string figure_name;
    auto* figure = app.add_subcommand("figure", "emit a plot-ready dataset");
    figure->add_option("name", figure_name, "fig1, fig2, fig3 or figg")->required();

    std::optional<std::int64_t> voters, replications;
    std::optional<std::string> tally;
    auto* validate_cmd = app.add_subcommand("validate", "compare Monte Carlo frequencies with analytic values");
    validate_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
    validate_cmd->add_option("--voters", voters, "policy voters per replication");
    validate_cmd->add_option("--replications", replications, "number of replications");
    validate_cmd->add_option("--tally", tally, "aggregate, per_voter or continuum");
    validate_cmd->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (g.threads > 0) set_threads(g.threads);
        if (*eval) {
            Scenario s = load_scenario(scenario_path);
            apply(g, s);
            const auto report = evaluate(s);
            if (format == "csv") {
                Sink sink(g.out, out);
                write_eval_csv(report, sink.get());
            } else {
                write_eval_text(report, out);
                if (!g.out.empty()) {
                    Sink sink(g.out, out);
                    write_eval_csv(report, sink.get());
                }
            }
        } else if (*sweep) {
            Scenario s = load_scenario(scenario_path);
            apply(g, s);
            spec.quantities = split_list(quantities);
            Sink sink(g.out, out);
            std::ostringstream buf;
            run_sweep(s, spec, buf);
            sink.get() << buf.str();
        } else if (*figure) {
            Sink sink(g.out, out);
            std::ostringstream buf;
            run_figure(figure_name, quadrature_of(g), buf);
            sink.get() << buf.str();
        } else if (*validate_cmd) {
            Scenario s = load_scenario(scenario_path);
            apply(g, s);
            if (voters) s.simulation.n_policy_voters = *voters;
            if (replications) s.simulation.n_replications = *replications;
            if (tally) s.simulation.tally = tally_from_string(*tally);
            check_config(s.simulation);
            const auto run = run_validation(s);
            if (format == "csv") write_validation_csv(run, out);
            else write_validation_text(run, out);
            if (!g.out.empty()) {
                Sink sink(g.out, out);
                write_sim_results_csv(run, sink.get());
            }
            return run.all_passed() ? kOk : kOracleDisagreement;
        }
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << " (achieved tolerance " << e.achieved_tolerance() << ")\n";
        return kNumerical;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return kInvalid;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kInvalid;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kInvalid;
    }
    return kOk;
}

}  // namespace ddcalc::cli
