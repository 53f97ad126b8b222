#include "ddcalc/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "ddcalc/error.hpp"

namespace ddcalc::cli {

using nlohmann::json;

SimMode Scenario::mode() const {
    if (turnout) return SimMode::Turnout;
    if (third_party) return SimMode::ThirdParty;
    return SimMode::TwoParty;
}

ThirdPartyParams Scenario::third_party_params() const {
    if (!third_party) throw UsageError("scenario has no third_party block");
    ThirdPartyParams tp;
    tp.base = params;
    tp.v = third_party->v;
    tp.sigma = third_party->sigma;
    return tp;
}

TurnoutParams Scenario::turnout_params() const {
    if (!turnout) throw UsageError("scenario has no turnout block");
    TurnoutParams tp;
    tp.base = params;
    tp.c_bar = turnout->c_bar;
    tp.sigma = turnout->sigma;
    tp.kappa = turnout->kappa;
    return tp;
}

namespace {

int line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

class Reader {
public:
    Reader(std::string_view text, std::string_view source) : text_(text), source_(source) {}

    [[noreturn]] void fail(std::string_view key, const std::string& msg) const {
        std::ostringstream os;
        os << source_;
        const auto pos = key.empty() ? std::string_view::npos : text_.find("\"" + std::string(key) + "\"");
        if (pos != std::string_view::npos) os << ':' << line_of_offset(text_, pos);
        os << ": " << msg;
        throw ValidationError(os.str());
    }

    void only(const json& obj, std::string_view where, std::initializer_list<std::string_view> keys) const {
        if (!obj.is_object()) fail(where, std::string(where.empty() ? "scenario" : where) + " must be an object");
        for (const auto& [k, v] : obj.items()) {
            (void)v;
            if (std::find(keys.begin(), keys.end(), k) == keys.end())
                fail(k, "unknown key '" + k + "'" + (where.empty() ? "" : " in '" + std::string(where) + "'"));
        }
    }

    void number(const json& obj, std::string_view key, double& out) const {
        const auto it = obj.find(std::string(key));
        if (it == obj.end()) return;
        if (!it->is_number()) fail(key, "'" + std::string(key) + "' must be a number");
        out = it->get<double>();
        if (!std::isfinite(out)) fail(key, "'" + std::string(key) + "' must be finite");
    }

    template <class Int>
    void integer(const json& obj, std::string_view key, Int& out) const {
        const auto it = obj.find(std::string(key));
        if (it == obj.end()) return;
        if (!it->is_number_integer() && !it->is_number_unsigned())
            fail(key, "'" + std::string(key) + "' must be an integer");
        out = it->get<Int>();
    }

    std::optional<std::string> string(const json& obj, std::string_view key) const {
        const auto it = obj.find(std::string(key));
        if (it == obj.end()) return std::nullopt;
        if (!it->is_string()) fail(key, "'" + std::string(key) + "' must be a string");
        return it->get<std::string>();
    }

    DistributionSpec distribution(const json& obj, std::string_view key, DistributionSpec d) const {
        const auto it = obj.find(std::string(key));
        if (it == obj.end()) return d;
        only(*it, key, {"family", "scale"});
        if (auto f = string(*it, "family")) {
            try {
                d.family = family_from_string(*f);
            } catch (const DomainError& e) {
                fail("family", e.what());
            }
        }
        number(*it, "scale", d.scale);
        return d;
    }

private:
    std::string_view text_;
    std::string_view source_;
};

}  // namespace

Scenario parse_scenario(std::string_view text, std::string_view source) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::ostringstream os;
        os << source << ':' << line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0) << ": JSON syntax error: " << e.what();
        throw ValidationError(os.str());
    }
    const Reader rd(text, source);
    rd.only(doc, "", {"name", "r", "mu", "p", "b_L", "b_R", "taste", "shock", "regime", "third_party", "turnout",
                      "quadrature", "simulation"});
    Scenario s;
    s.source = std::string(source);
    for (const auto& [k, v] : doc.items()) {
        (void)v;
        const auto pos = text.find("\"" + k + "\"");
        if (pos != std::string_view::npos) s.key_lines[k] = line_of_offset(text, pos);
    }
    if (auto n = rd.string(doc, "name")) s.name = *n;
    auto& ep = s.params;
    rd.number(doc, "r", ep.r);
    rd.number(doc, "mu", ep.mu);
    rd.number(doc, "p", ep.p);
    rd.number(doc, "b_L", ep.b_L);
    rd.number(doc, "b_R", ep.b_R);
    ep.taste = rd.distribution(doc, "taste", ep.taste);
    ep.shock = rd.distribution(doc, "shock", ep.shock);
    if (auto g = rd.string(doc, "regime")) {
        try {
            s.regime = regime_from_string(*g);
        } catch (const UsageError& e) {
            rd.fail("regime", e.what());
        }
    }
    if (doc.contains("third_party")) {
        const auto& b = doc["third_party"];
        rd.only(b, "third_party", {"v", "sigma"});
        ThirdPartyBlock tb;
        rd.number(b, "v", tb.v);
        rd.number(b, "sigma", tb.sigma);
        s.third_party = tb;
    }
    if (doc.contains("turnout")) {
        if (s.third_party) rd.fail("turnout", "a scenario may have a third_party or a turnout block, not both");
        const auto& b = doc["turnout"];
        rd.only(b, "turnout", {"c_bar", "sigma", "kappa"});
        TurnoutBlock tb;
        rd.number(b, "c_bar", tb.c_bar);
        rd.number(b, "sigma", tb.sigma);
        rd.number(b, "kappa", tb.kappa);
        s.turnout = tb;
    }
    if (doc.contains("quadrature")) {
        const auto& b = doc["quadrature"];
        rd.only(b, "quadrature", {"abs_tol", "rel_tol", "max_subdivisions"});
        rd.number(b, "abs_tol", s.quadrature.abs_tol);
        rd.number(b, "rel_tol", s.quadrature.rel_tol);
        rd.integer(b, "max_subdivisions", s.quadrature.max_subdivisions);
        try {
            check_config(s.quadrature);
        } catch (const std::exception& e) {
            rd.fail("quadrature", e.what());
        }
    }
    if (doc.contains("simulation")) {
        const auto& b = doc["simulation"];
        rd.only(b, "simulation", {"n_policy_voters", "n_replications", "seed", "tally"});
        rd.integer(b, "n_policy_voters", s.simulation.n_policy_voters);
        rd.integer(b, "n_replications", s.simulation.n_replications);
        rd.integer(b, "seed", s.simulation.seed);
        if (auto t = rd.string(b, "tally")) {
            try {
                s.simulation.tally = tally_from_string(*t);
            } catch (const UsageError& e) {
                rd.fail("tally", e.what());
            }
        }
        try {
            check_config(s.simulation);
        } catch (const UsageError& e) {
            rd.fail("simulation", e.what());
        }
    }
    if (s.turnout && s.regime == Regime::NonBinding) {
        if (doc.contains("regime")) rd.fail("regime", "turnout scenarios support only 'none' or 'binding'");
        s.regime = Regime::Binding;
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(path + ": cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

ValidationReport validate(const Scenario& s) {
    switch (s.mode()) {
        case SimMode::Turnout: return validate(s.turnout_params());
        case SimMode::ThirdParty: return validate(s.third_party_params());
        case SimMode::TwoParty: break;
    }
    return validate(s.params);
}

void require_valid(const Scenario& s) {
    const auto rep = validate(s);
    if (rep.ok()) return;
    std::ostringstream os;
    for (std::size_t i = 0; i < rep.violations.size(); ++i) {
        const auto& v = rep.violations[i];
        std::string key;
        switch (v.code) {
            case ViolationCode::Assumption1: key = "b_L"; break;
            case ViolationCode::Assumption2: key = "r"; break;
            case ViolationCode::AssumptionC1: key = "turnout"; break;
            case ViolationCode::ThirdParty: key = "third_party"; break;
            case ViolationCode::Range:
                key = v.message.substr(0, v.message.find_first_of(" ,"));
                if (key == "c_bar" || key == "kappa") key = "turnout";
                if (key == "sigma") key = s.turnout ? "turnout" : "third_party";
                break;
        }
        if (i) os << "\n";
        os << s.source;
        const auto it = s.key_lines.find(key);
        if (it != s.key_lines.end()) os << ':' << it->second;
        os << ": " << to_string(v.code) << ": " << v.message;
    }
    throw ValidationError(os.str());
}

namespace {

double* parameter_slot(Scenario& s, std::string_view name) {
    auto& ep = s.params;
    if (name == "r") return &ep.r;
    if (name == "mu") return &ep.mu;
    if (name == "p") return &ep.p;
    if (name == "b_L") return &ep.b_L;
    if (name == "b_R") return &ep.b_R;
    if (name == "taste.scale") return &ep.taste.scale;
    if (name == "shock.scale") return &ep.shock.scale;
    if (s.third_party) {
        if (name == "third_party.v") return &s.third_party->v;
        if (name == "third_party.sigma") return &s.third_party->sigma;
    }
    if (s.turnout) {
        if (name == "turnout.c_bar") return &s.turnout->c_bar;
        if (name == "turnout.sigma") return &s.turnout->sigma;
        if (name == "turnout.kappa") return &s.turnout->kappa;
    }
    return nullptr;
}

}  // namespace

bool set_parameter(Scenario& s, std::string_view name, double value) {
    double* slot = parameter_slot(s, name);
    if (!slot) return false;
    *slot = value;
    return true;
}

std::optional<double> get_parameter(const Scenario& s, std::string_view name) {
    double* slot = parameter_slot(const_cast<Scenario&>(s), name);
    if (!slot) return std::nullopt;
    return *slot;
}

}  // namespace ddcalc::cli
