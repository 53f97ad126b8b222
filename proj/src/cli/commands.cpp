#include "ddcalc/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "ddcalc/calculus.hpp"
#include "ddcalc/cli/csv.hpp"
#include "ddcalc/congruence.hpp"
#include "ddcalc/error.hpp"
#include "ddcalc/parallel.hpp"
#include "ddcalc/third_party.hpp"
#include "ddcalc/thresholds.hpp"
#include "ddcalc/turnout.hpp"

namespace ddcalc::cli {

namespace {

constexpr unsigned kTwo = 1u << static_cast<unsigned>(SimMode::TwoParty);
constexpr unsigned kThird = 1u << static_cast<unsigned>(SimMode::ThirdParty);
constexpr unsigned kTurn = 1u << static_cast<unsigned>(SimMode::Turnout);

unsigned bit(SimMode m) { return 1u << static_cast<unsigned>(m); }

}  // namespace

const std::vector<QuantityInfo>& quantity_catalog() {
    static const std::vector<QuantityInfo> catalog = {
        {"gamma_star", "gamma*", "shock at which the policy electorate splits evenly on y", kTwo, false},
        {"lambda_r", "lambda(r)", "Right's win probability in a single-issue election", kTwo, false},
        {"win_prob_none", "P_R", "Right's win probability, no referendum", kTwo, false},
        {"win_prob_binding", "P_R^bind", "Right's win probability, binding referendum held", kTwo, false},
        {"win_prob_nonbinding", "P_R^nb", "Right's win probability, non-binding referendum held", kTwo, false},
        {"net_benefit_binding", "D", "gain in Right's win probability from a binding referendum", kTwo, false},
        {"net_benefit_nonbinding", "D_bar|D_tilde",
         "gain in Right's win probability from a non-binding referendum (D_bar if b_R < 0, else D_tilde)", kTwo,
         false},
        {"r_bind", "r_bind", "conservative share above which a binding referendum helps Right (b_R >= 0)", kTwo,
         false},
        {"r_star", "r*", "conservative share below which a non-binding referendum helps Right (b_R < 0)", kTwo,
         false},
        {"r_star_star", "r**", "conservative share above which a non-binding referendum helps Right (b_R >= 0)",
         kTwo, false},
        {"delta_at_rbind", "Delta", "non-binding minus binding gain evaluated at r_bind (b_R >= 0)", kTwo, false},
        {"congruence_second_none", "C_y", "probability the implemented y matches the majority, no referendum",
         kTwo, false},
        {"congruence_second_held", "C_y^ref", "same, referendum held in the scenario regime", kTwo, false},
        {"delta_second", "Delta_y", "change in second-issue congruence from the scenario regime", kTwo, false},
        {"congruence_traditional_none", "C_x", "probability the winner's x matches the majority, no referendum",
         kTwo, false},
        {"congruence_traditional_held", "C_x^ref", "same, referendum held in the scenario regime", kTwo, false},
        {"delta_traditional", "Delta_x", "change in traditional-issue congruence from the scenario regime", kTwo,
         false},
        {"share_multi", "s(gamma)", "Right's policy-voter share in a multi-issue election", kTwo | kThird, true},
        {"shock_density", "g(gamma)", "shock density", kTwo | kThird, true},
        {"lambda_hat", "lambda_hat(gamma)", "Right's chance of out-polling Left when Third runs", kThird, true},
        {"ahead_none", "P_R>L", "probability Right out-polls Left, no referendum", kThird, false},
        {"ahead_held", "P_R>L^nb", "probability Right out-polls Left, non-binding referendum held", kThird, false},
        {"net_benefit_third", "Gamma", "gain in that probability from the referendum", kThird, false},
        {"worse_off", "worse_off", "1 when the referendum leaves Right worse off than Left on defections", kThird,
         false},
        {"phi", "phi", "shock-mass weight 1 - 2G(-b_L) + G(-b_R)", kThird, false},
        {"b_L_star", "b_L*", "b_L at which phi changes sign for b_R = 0", kThird, false},
        {"b_R_star", "b_R*", "b_R at which phi = 0 given b_L", kThird, false},
        {"intensity_R", "I(b_R)", "mean absolute second-issue stake of Right's supporters", kTurn, false},
        {"intensity_L", "I(b_L)", "mean absolute second-issue stake of Left's supporters", kTurn, false},
        {"win_prob_turnout_none", "P_R^T", "Right's win probability with costly voting, no referendum", kTurn,
         false},
        {"win_prob_turnout_binding", "P_R^T,ref", "same, simultaneous binding referendum", kTurn, false},
        {"net_benefit_turnout", "D_T", "gain from the simultaneous referendum", kTurn, false},
        {"r_T", "r_T", "conservative share above which the referendum helps Right", kTurn, false},
        {"turnout_R_binding", "t_R", "expected turnout of Right's supporters with the referendum", kTurn, false},
        {"turnout_L_binding", "t_L", "expected turnout of Left's supporters with the referendum", kTurn, false},
        {"turnout_none", "p/c_bar", "expected turnout of either party without the referendum", kTurn, false},
        {"cost_cap_possible", "cap", "1 when some stake can exceed c_bar (linear formulas approximate)", kTurn,
         false},
    };
    return catalog;
}

const QuantityInfo& quantity_info(std::string_view name) {
    for (const auto& q : quantity_catalog())
        if (q.name == name) return q;
    throw UsageError("unknown quantity '" + std::string(name) + "'");
}

namespace {

Regime held_regime(const Scenario& s) {
    if (s.regime == Regime::NoReferendum) return Regime::NonBinding;
    return s.regime;
}

std::optional<double> two_party(const Scenario& s, std::string_view q, std::optional<double> gamma) {
    const Electorate e(s.params);
    const auto& cfg = s.quadrature;
    const Primitives pr = Primitives::of(e);
    if (q == "gamma_star") return gamma_star(e).value;
    if (q == "lambda_r") return lambda_win(e.r(), e.mu());
    if (q == "win_prob_none") return win_prob(e, Regime::NoReferendum, false, cfg).value;
    if (q == "win_prob_binding") return win_prob(e, Regime::Binding, true, cfg).value;
    if (q == "win_prob_nonbinding") return win_prob(e, Regime::NonBinding, true, cfg).value;
    if (q == "net_benefit_binding") return net_benefit(e, Regime::Binding, cfg).value;
    if (q == "net_benefit_nonbinding") return net_benefit(e, Regime::NonBinding, cfg).value;
    if (q == "r_bind") return e.b_R() >= 0.0 ? std::optional(r_bind(pr, cfg).value) : std::nullopt;
    if (q == "r_star") return e.b_R() < 0.0 ? std::optional(r_star(pr, cfg).value) : std::nullopt;
    if (q == "r_star_star") return e.b_R() >= 0.0 ? std::optional(r_star_star(pr, cfg).value) : std::nullopt;
    if (q == "delta_at_rbind") return e.b_R() >= 0.0 ? std::optional(delta_at_rbind(pr, cfg)) : std::nullopt;
    const Regime held = held_regime(s);
    if (q == "congruence_second_none") return second_issue_congruence(e, held, cfg).prob_no_ref;
    if (q == "congruence_traditional_none") return traditional_issue_congruence(e, held, cfg).prob_no_ref;
    if (s.regime == Regime::NoReferendum &&
        (q == "congruence_second_held" || q == "delta_second" || q == "congruence_traditional_held" ||
         q == "delta_traditional"))
        return std::nullopt;
    if (q == "congruence_second_held") return second_issue_congruence(e, held, cfg).prob_with_ref;
    if (q == "delta_second") return second_issue_congruence(e, held, cfg).delta;
    if (q == "congruence_traditional_held") return traditional_issue_congruence(e, held, cfg).prob_with_ref;
    if (q == "delta_traditional") return traditional_issue_congruence(e, held, cfg).delta;
    if (q == "share_multi") return right_share_multi(e, *gamma);
    if (q == "shock_density") return pdf(e.shock(), *gamma);
    throw UsageError("quantity '" + std::string(q) + "' is not available for two-party scenarios");
}

std::optional<double> third_party(const Scenario& s, std::string_view q, std::optional<double> gamma) {
    const ThirdPartyModel m(s.third_party_params());
    const auto& e = m.electorate();
    const auto& cfg = s.quadrature;
    if (q == "share_multi") return right_share_multi(e, *gamma);
    if (q == "shock_density") return pdf(e.shock(), *gamma);
    if (q == "lambda_hat") return lambda_hat(m, *gamma);
    if (q == "ahead_none") return ahead_of_left_prob(m, false, cfg).value;
    if (q == "ahead_held") return ahead_of_left_prob(m, true, cfg).value;
    if (q == "net_benefit_third") return net_benefit_third(m, cfg).value;
    if (q == "worse_off") return worse_off_condition(m, cfg) ? 1.0 : 0.0;
    if (q == "phi") return phi(e.b_L(), e.b_R(), e.shock());
    const auto th = phi_thresholds(e.b_L(), e.shock());
    if (q == "b_L_star") return th.b_L_star.value;
    if (q == "b_R_star") return th.b_R_star ? std::optional(th.b_R_star->value) : std::nullopt;
    throw UsageError("quantity '" + std::string(q) + "' is not available for third-party scenarios");
}

std::optional<double> turnout(const Scenario& s, std::string_view q) {
    const TurnoutModel m(s.turnout_params());
    const auto& cfg = s.quadrature;
    if (q == "intensity_R") return intensity(m.base().b_R, m, cfg);
    if (q == "intensity_L") return intensity(m.base().b_L, m, cfg);
    if (q == "win_prob_turnout_none") return win_prob_turnout(m, false, cfg).value;
    if (q == "win_prob_turnout_binding") return win_prob_turnout(m, true, cfg).value;
    if (q == "net_benefit_turnout") return net_benefit_turnout(m, cfg);
    if (q == "r_T") return r_T(m, cfg).value;
    if (q == "turnout_R_binding") return expected_turnout(m, true, cfg).right;
    if (q == "turnout_L_binding") return expected_turnout(m, true, cfg).left;
    if (q == "turnout_none") return expected_turnout(m, false, cfg).right;
    if (q == "cost_cap_possible") return m.cost_cap_possible() ? 1.0 : 0.0;
    throw UsageError("quantity '" + std::string(q) + "' is not available for turnout scenarios");
}

}  // namespace

std::optional<double> compute_quantity(const Scenario& s, std::string_view name, std::optional<double> gamma) {
    const auto& info = quantity_info(name);
    if (!(info.modes & bit(s.mode())))
        throw UsageError("quantity '" + std::string(name) + "' is not available in " + std::string(to_string(s.mode())) +
                         " mode");
    if (info.needs_gamma && !gamma) throw UsageError("quantity '" + std::string(name) + "' needs gamma");
    switch (s.mode()) {
        case SimMode::TwoParty: return two_party(s, name, gamma);
        case SimMode::ThirdParty: return third_party(s, name, gamma);
        case SimMode::Turnout: return turnout(s, name);
    }
    return std::nullopt;
}

EvalReport evaluate(const Scenario& s) {
    require_valid(s);
    EvalReport rep;
    rep.scenario = s;
    for (const auto& q : quantity_catalog()) {
        if (!(q.modes & bit(s.mode())) || q.needs_gamma) continue;
        EvalRow row{std::string(q.name), std::string(q.symbol), std::nullopt, std::nullopt, ""};
        row.value = compute_quantity(s, q.name);
        if (!row.value) row.note = "not defined for these parameters";
        rep.rows.push_back(std::move(row));
    }
    if (s.mode() != SimMode::Turnout) {
        const double scale = s.params.shock.scale;
        constexpr int kPoints = 25;
        const double lo = -s.params.b_R, hi = -s.params.b_L;
        for (int i = 0; i < kPoints; ++i) {
            const double g = -3.0 * scale + 6.0 * scale * i / (kPoints - 1);
            const std::string note = g >= lo && g < hi ? "multi-issue" : "";
            rep.share_table.push_back({"shock_density", "g(gamma)", g, compute_quantity(s, "shock_density", g), note});
            rep.share_table.push_back({"share_multi", "s(gamma)", g, compute_quantity(s, "share_multi", g), note});
        }
    }
    return rep;
}

void write_eval_text(const EvalReport& r, std::ostream& out) {
    const auto& s = r.scenario;
    out << "scenario: " << s.name << "\n";
    out << "mode: " << to_string(s.mode()) << "   regime: " << to_string(s.regime) << "\n";
    out << "r = " << format_number(s.params.r) << ", mu = " << format_number(s.params.mu)
        << ", p = " << format_number(s.params.p) << ", b_L = " << format_number(s.params.b_L)
        << ", b_R = " << format_number(s.params.b_R) << "\n";
    out << "taste " << to_string(s.params.taste.family) << "(" << format_number(s.params.taste.scale) << "), shock "
        << to_string(s.params.shock.family) << "(" << format_number(s.params.shock.scale) << ")\n";
    if (s.third_party)
        out << "third party: v = " << format_number(s.third_party->v)
            << ", sigma = " << format_number(s.third_party->sigma) << "\n";
    if (s.turnout)
        out << "turnout: c_bar = " << format_number(s.turnout->c_bar) << ", sigma = " << format_number(s.turnout->sigma)
            << ", kappa = " << format_number(s.turnout->kappa) << "\n";
    out << "validation: ok\n\n";
    out << std::left << std::setw(30) << "quantity" << std::setw(18) << "symbol" << "value\n";
    for (const auto& row : r.rows) {
        out << std::setw(30) << row.name << std::setw(18) << row.symbol;
        out << (row.value ? format_number(*row.value) : "-");
        if (!row.note.empty()) out << "   (" << row.note << ")";
        out << "\n";
    }
    if (!r.share_table.empty()) {
        out << "\n" << std::setw(16) << "gamma" << std::setw(18) << "g(gamma)" << std::setw(18) << "s(gamma)" << "\n";
        for (std::size_t i = 0; i + 1 < r.share_table.size(); i += 2) {
            const auto& g = r.share_table[i];
            const auto& sh = r.share_table[i + 1];
            out << std::setw(16) << format_number(*g.gamma) << std::setw(18) << format_number(*g.value)
                << std::setw(18) << format_number(*sh.value) << sh.note << "\n";
        }
    }
    out << std::right;
}

void write_eval_csv(const EvalReport& r, std::ostream& out) {
    CsvWriter w(out);
    w.header({"quantity", "symbol", "gamma", "value", "note"});
    auto emit = [&](const EvalRow& row) {
        w.field(std::string_view(row.name)).field(std::string_view(row.symbol)).field(row.gamma).field(row.value);
        w.field(std::string_view(row.note));
        w.end_row();
    };
    for (const auto& row : r.rows) emit(row);
    for (const auto& row : r.share_table) emit(row);
}

void check(const SweepSpec& spec) {
    if (spec.steps < 2) throw UsageError("sweep needs steps >= 2");
    if (!(spec.from < spec.to)) throw UsageError("sweep needs from < to");
    if (!std::isfinite(spec.from) || !std::isfinite(spec.to)) throw UsageError("sweep bounds must be finite");
}

std::vector<std::string> default_sweep_quantities(SimMode mode) {
    switch (mode) {
        case SimMode::TwoParty:
            return {"win_prob_none", "win_prob_binding", "win_prob_nonbinding", "net_benefit_binding",
                    "net_benefit_nonbinding", "r_bind", "r_star", "r_star_star"};
        case SimMode::ThirdParty: return {"ahead_none", "ahead_held", "net_benefit_third", "phi"};
        case SimMode::Turnout:
            return {"win_prob_turnout_none", "win_prob_turnout_binding", "net_benefit_turnout", "r_T"};
    }
    return {};
}

std::vector<std::string> sweep_parameter_names() {
    return {"gamma",         "r",           "mu",
            "p",             "b_L",         "b_R",
            "taste.scale",   "shock.scale", "third_party.v",
            "third_party.sigma", "turnout.c_bar", "turnout.sigma",
            "turnout.kappa"};
}

void run_sweep(const Scenario& s, const SweepSpec& spec, std::ostream& csv) {
    check(spec);
    const bool over_gamma = spec.variable == "gamma";
    if (!over_gamma && !get_parameter(s, spec.variable))
        throw UsageError("unknown sweep variable '" + spec.variable + "' for this scenario");
    const auto quantities = spec.quantities.empty() ? default_sweep_quantities(s.mode()) : spec.quantities;
    for (const auto& q : quantities) {
        const auto& info = quantity_info(q);
        if (!(info.modes & bit(s.mode())))
            throw UsageError("quantity '" + q + "' is not available in " + std::string(to_string(s.mode())) + " mode");
        if (info.needs_gamma && !over_gamma) throw UsageError("quantity '" + q + "' needs a sweep over gamma");
    }
    struct Row {
        double x = 0.0;
        bool valid = false;
        std::vector<std::optional<double>> values;
    };
    const int n = spec.steps;
    const auto rows = parallel_map<Row>(static_cast<std::size_t>(n), [&](std::size_t i) {
        Row row;
        row.x = i + 1 == static_cast<std::size_t>(n) ? spec.to
                                                      : spec.from + (spec.to - spec.from) * static_cast<double>(i) / (n - 1);
        Scenario cell = s;
        std::optional<double> gamma;
        if (over_gamma) gamma = row.x;
        else set_parameter(cell, spec.variable, row.x);
        row.valid = validate(cell).ok();
        row.values.assign(quantities.size(), std::nullopt);
        if (row.valid)
            for (std::size_t k = 0; k < quantities.size(); ++k) row.values[k] = compute_quantity(cell, quantities[k], gamma);
        return row;
    });
    CsvWriter w(csv);
    std::vector<std::string> header{spec.variable, "valid"};
    header.insert(header.end(), quantities.begin(), quantities.end());
    w.header(header);
    for (const auto& row : rows) {
        w.field(row.x).field(row.valid);
        for (const auto& v : row.values) w.field(v);
        w.end_row();
    }
}

std::vector<std::string> figure_names() { return {"fig1", "fig2", "fig3", "figg"}; }

namespace {

ElectorateParams share_figure_params() {
    return {0.5, 0.5, 0.2, -0.5, -0.1, {Family::Normal, 0.2}, {Family::Normal, 0.25}};
}

ElectorateParams threshold_figure_params() {
    return {0.5, 0.5, 0.05, -1.0, 0.5, {Family::Normal, 1.0}, {Family::Normal, 0.5}};
}

ElectorateParams region_figure_params() {
    return {0.5, 0.7, 1.0, -1.0, -0.5, {Family::Logistic, 1.0}, {Family::Normal, 0.5}};
}

void share_figure(bool shifted, std::ostream& csv) {
    const Electorate base(share_figure_params());
    ElectorateParams moved = share_figure_params();
    moved.b_R = -0.01;
    const Electorate alt(moved);
    CsvWriter w(csv);
    std::vector<std::string> header{"gamma", "g", "s", "multi_issue"};
    if (shifted) header.insert(header.end(), {"s_shifted", "multi_issue_shifted"});
    w.header(header);
    for (int i = 0; i <= 200; ++i) {
        const double g = (i - 100) / 100.0;
        w.field(g).field(pdf(base.shock(), g)).field(right_share_multi(base, g));
        w.field(g >= -base.b_R() && g <= -base.b_L());
        if (shifted) w.field(right_share_multi(alt, g)).field(g >= -alt.b_R() && g <= -alt.b_L());
        w.end_row();
    }
}

void threshold_figure(const QuadratureConfig& cfg, std::ostream& csv) {
    struct Row {
        double b_R;
        std::optional<double> r_bind, r_star, r_star_star;
    };
    const int n = 71;
    const auto rows = parallel_map<Row>(n, [&](std::size_t i) {
        Primitives pr = Primitives::of(Electorate(threshold_figure_params()));
        pr.b_R = (static_cast<double>(i) - 20.0) / 20.0;
        Row row{pr.b_R, {}, {}, {}};
        if (pr.b_R >= 0.0) {
            row.r_bind = r_bind(pr, cfg).value;
            row.r_star_star = r_star_star(pr, cfg).value;
        } else {
            row.r_star = r_star(pr, cfg).value;
        }
        return row;
    });
    CsvWriter w(csv);
    w.header({"b_R", "r_bind", "r_star", "r_star_star"});
    for (const auto& row : rows) {
        w.field(row.b_R).field(row.r_bind).field(row.r_star).field(row.r_star_star);
        w.end_row();
    }
}

void region_figure(const QuadratureConfig& cfg, std::ostream& csv) {
    RegionGrid grid;
    grid.base = region_figure_params();
    grid.regime = Regime::NonBinding;
    for (int i = 1; i < 40; ++i) grid.b_R_values.push_back(-1.0 + i / 40.0);
    for (int j = 1; j < 50; ++j) grid.r_values.push_back(j / 50.0);
    const auto cells = classify_congruence_region(grid, cfg);
    const auto thresholds = parallel_map<double>(grid.b_R_values.size(), [&](std::size_t i) {
        Primitives pr = Primitives::of(Electorate(grid.base));
        pr.b_R = grid.b_R_values[i];
        return r_star(pr, cfg).value;
    });
    CsvWriter w(csv);
    w.header({"b_R", "r", "valid", "delta_second", "delta_traditional", "region_flag", "r_star"});
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const auto& c = cells[k];
        w.field(c.b_R).field(c.r).field(c.valid);
        if (c.valid) w.field(c.delta_second).field(c.delta_traditional);
        else w.field(std::optional<double>{}).field(std::optional<double>{});
        w.field(c.valid ? to_string(c.flag) : std::string_view{}).field(thresholds[k / grid.r_values.size()]);
        w.end_row();
    }
}

}  // namespace

void run_figure(std::string_view name, const QuadratureConfig& cfg, std::ostream& csv) {
    check_config(cfg);
    if (name == "fig1") return share_figure(false, csv);
    if (name == "fig2") return share_figure(true, csv);
    if (name == "fig3") return threshold_figure(cfg, csv);
    if (name == "figg") return region_figure(cfg, csv);
    throw UsageError("unknown figure '" + std::string(name) + "' (expected fig1, fig2, fig3 or figg)");
}

bool ValidationRun::all_passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const Agreement& a) { return a.pass; });
}

namespace {

Agreement agree(std::string quantity, Regime regime, double analytic, double simulated, double se_sim,
                std::int64_t reps, bool proportion) {
    Agreement a{std::move(quantity), regime, analytic, simulated, se_sim, 0.0, false};
    if (proportion) {
        const double a_clamped = std::clamp(analytic, 0.0, 1.0);
        a.se = std::max(se_sim, std::sqrt(a_clamped * (1.0 - a_clamped) / static_cast<double>(reps)));
    }
    const double diff = std::fabs(simulated - analytic);
    a.z = a.se > 0.0 ? diff / a.se : (diff == 0.0 ? 0.0 : INFINITY);
    a.pass = diff <= 3.0 * a.se || diff <= 1e-12;
    return a;
}

}  // namespace

ValidationRun run_validation(const Scenario& s) {
    require_valid(s);
    ValidationRun run;
    run.scenario = s;
    const auto& cfg = s.quadrature;
    const auto& sim = s.simulation;
    const std::int64_t R = sim.n_replications;
    switch (s.mode()) {
        case SimMode::TwoParty: {
            const Electorate e(s.params);
            std::vector<Regime> regimes{Regime::NoReferendum};
            if (s.regime != Regime::NoReferendum) regimes.push_back(s.regime);
            const Regime held = held_regime(s);
            const auto second = second_issue_congruence(e, held, cfg);
            const auto trad = traditional_issue_congruence(e, held, cfg);
            for (Regime g : regimes) {
                const bool ref = g != Regime::NoReferendum;
                const auto res = simulate(e, g, sim);
                run.sims.push_back(res);
                run.rows.push_back(agree("win_prob", g, win_prob(e, g, ref, cfg).value, res.win_freq_R, res.se_win_R,
                                         R, true));
                run.rows.push_back(agree("congruence_second", g, ref ? second.prob_with_ref : second.prob_no_ref,
                                         res.congruence_y, res.se_congruence_y, R, true));
                if (e.r() != 0.5)
                    run.rows.push_back(agree("congruence_traditional", g, ref ? trad.prob_with_ref : trad.prob_no_ref,
                                             res.congruence_x, res.se_congruence_x, R, true));
            }
            break;
        }
        case SimMode::ThirdParty: {
            const ThirdPartyModel m(s.third_party_params());
            for (Regime g : {Regime::NoReferendum, Regime::NonBinding}) {
                const bool ref = g != Regime::NoReferendum;
                const auto res = simulate(m, g, sim);
                run.sims.push_back(res);
                run.rows.push_back(agree("ahead_of_left", g, ahead_of_left_prob(m, ref, cfg).value, res.ahead_freq,
                                         res.se_ahead, R, true));
            }
            break;
        }
        case SimMode::Turnout: {
            const TurnoutModel m(s.turnout_params());
            for (Regime g : {Regime::NoReferendum, Regime::Binding}) {
                const bool ref = g != Regime::NoReferendum;
                const auto res = simulate(m, g, sim);
                run.sims.push_back(res);
                run.rows.push_back(agree("win_prob_turnout", g, win_prob_turnout(m, ref, cfg).value, res.win_freq_R,
                                         res.se_win_R, R, true));
                const auto shares = expected_turnout(m, ref, cfg);
                run.rows.push_back(
                    agree("turnout_R", g, shares.right, res.turnout_R_mean, res.se_turnout_R, R, false));
                run.rows.push_back(agree("turnout_L", g, shares.left, res.turnout_L_mean, res.se_turnout_L, R, false));
            }
            break;
        }
    }
    return run;
}

void write_validation_text(const ValidationRun& v, std::ostream& out) {
    const auto& s = v.scenario;
    out << "scenario: " << s.name << "   mode: " << to_string(s.mode()) << "\n";
    out << "seed: " << s.simulation.seed << "   n_policy_voters: " << s.simulation.n_policy_voters
        << "   n_replications: " << s.simulation.n_replications << "   tally: " << to_string(s.simulation.tally)
        << "\n\n";
    out << std::left << std::setw(24) << "quantity" << std::setw(12) << "regime" << std::setw(16) << "analytic"
        << std::setw(16) << "simulated" << std::setw(18) << "se" << std::setw(10) << "z" << "verdict\n";
    for (const auto& a : v.rows) {
        std::ostringstream z;
        z << std::fixed << std::setprecision(2) << a.z;
        out << std::setw(24) << a.quantity << std::setw(12) << to_string(a.regime) << std::setw(16)
            << format_number(a.analytic) << std::setw(16) << format_number(a.simulated) << std::setw(18)
            << format_number(a.se) << std::setw(10) << z.str() << (a.pass ? "PASS" : "FAIL") << "\n";
    }
    out << std::right << "\nresult: " << (v.all_passed() ? "PASS" : "FAIL") << " (3 standard errors)\n";
}

void write_validation_csv(const ValidationRun& v, std::ostream& out) {
    CsvWriter w(out);
    w.header({"scenario_id", "quantity", "regime", "analytic", "simulated", "se", "z", "pass", "seed"});
    for (const auto& a : v.rows) {
        w.field(std::string_view(v.scenario.name)).field(std::string_view(a.quantity)).field(to_string(a.regime));
        w.field(a.analytic).field(a.simulated).field(a.se).field(a.z).field(a.pass);
        w.field(static_cast<unsigned long long>(v.scenario.simulation.seed));
        w.end_row();
    }
}

void write_sim_results_csv(const ValidationRun& v, std::ostream& out) {
    CsvWriter w(out);
    w.header({"scenario_id", "mode", "regime", "win_freq_R", "se", "congruence_y", "congruence_x", "seed"});
    for (const auto& r : v.sims) {
        w.field(std::string_view(v.scenario.name)).field(to_string(r.mode)).field(to_string(r.regime));
        w.field(r.win_freq_R).field(r.se_win_R).field(r.congruence_y).field(r.congruence_x);
        w.field(static_cast<unsigned long long>(r.seed));
        w.end_row();
    }
}

}  // namespace ddcalc::cli
