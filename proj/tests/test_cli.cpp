#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ddcalc/cli/commands.hpp"
#include "ddcalc/cli/csv.hpp"
#include "ddcalc/cli/scenario.hpp"
#include "ddcalc/error.hpp"

using namespace ddcalc;
using namespace ddcalc::cli;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "ddcalc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string scenario(const std::string& name) { return std::string(DDCALC_SCENARIO_DIR) + "/" + name; }

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    const auto dir = std::filesystem::temp_directory_path() / "ddcalc_cli_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("number formatting and field quoting") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
    CHECK(format_number(NAN) == "nan");
    CHECK(quote_field("plain") == "plain");
    CHECK(quote_field("a,b") == "\"a,b\"");
    CHECK(quote_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(quote_field("two\nlines") == "\"two\nlines\"");

    std::ostringstream os;
    CsvWriter w(os);
    w.header({"a", "b", "c", "d"});
    w.field(1.5).field(std::optional<double>{}).field(true).field("x,y");
    w.end_row();
    CHECK(os.str() == "a,b,c,d\n1.5,,1,\"x,y\"\n");
}

TEST_CASE("scenario parsing") {
    const auto s = parse_scenario(R"({"name": "t", "r": 0.4, "b_R": 0.3, "taste": {"family": "logistic", "scale": 2},
                                     "regime": "binding", "simulation": {"seed": 5, "tally": "per_voter"}})");
    CHECK(s.name == "t");
    CHECK(s.params.r == 0.4);
    CHECK(s.params.taste.family == Family::Logistic);
    CHECK(s.params.taste.scale == 2.0);
    CHECK(s.regime == Regime::Binding);
    CHECK(s.simulation.seed == 5);
    CHECK(s.simulation.tally == Tally::PerVoter);
    CHECK(s.mode() == SimMode::TwoParty);

    const auto t = parse_scenario(R"({"b_R": 0.3, "turnout": {"c_bar": 8}})");
    CHECK(t.mode() == SimMode::Turnout);
    CHECK(t.regime == Regime::Binding);
    CHECK(t.turnout->c_bar == 8.0);

    CHECK_THROWS_WITH_AS(parse_scenario("{\n  \"r\": 0.4,\n  \"colour\": 1\n}", "f.json"), "f.json:3: unknown key 'colour'",
                         ValidationError);
    CHECK_THROWS_AS(parse_scenario("{\n  \"r\": 0.4,\n  \"p\": \n}"), ValidationError);
    CHECK_THROWS_AS(parse_scenario(R"({"r": "high"})"), ValidationError);
    CHECK_THROWS_AS(parse_scenario(R"({"turnout": {}, "third_party": {}})"), ValidationError);
    CHECK_THROWS_AS(parse_scenario(R"({"turnout": {}, "regime": "nonbinding"})"), ValidationError);
}

TEST_CASE("validation errors cite the offending line") {
    auto s = parse_scenario("{\n  \"r\": 0.4,\n  \"b_L\": 0.1\n}", "bad.json");
    CHECK_THROWS_WITH_AS(require_valid(s), doctest::Contains("bad.json:3:"), ValidationError);
    s = parse_scenario("{\n  \"p\": 0.2,\n  \"b_R\": 0.3,\n  \"turnout\": {\"c_bar\": 3}\n}", "c1.json");
    CHECK_THROWS_WITH_AS(require_valid(s), doctest::Contains("c1.json:4: assumption-C.1"), ValidationError);
}

TEST_CASE("parameters are addressable by name") {
    auto s = parse_scenario(R"({"turnout": {}, "b_R": 0.3})");
    CHECK(set_parameter(s, "turnout.kappa", 1.5));
    CHECK(s.turnout->kappa == 1.5);
    CHECK(get_parameter(s, "b_R") == 0.3);
    CHECK_FALSE(set_parameter(s, "nonsense", 1.0));
    CHECK_FALSE(get_parameter(s, "third_party.v").has_value());
    for (const auto& name : sweep_parameter_names()) CHECK_FALSE(name.empty());
}

TEST_CASE("eval exit codes") {
    const auto ok = run({"eval", scenario("fig2.json")});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("gamma_star") != std::string::npos);

    const auto bad = write_temp("bad.json", "{\n  \"r\": 0.5,\n  \"b_L\": 0.1\n}\n");
    const auto r = run({"eval", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("bad.json:3") != std::string::npos);

    const auto c1 = write_temp("c1.json", "{\n  \"b_R\": 0.3,\n  \"turnout\": {\"c_bar\": 3}\n}\n");
    const auto rc = run({"eval", c1.string()});
    CHECK(rc.code == 2);
    CHECK(rc.err.find("assumption-C.1") != std::string::npos);

    CHECK(run({"eval", "/nonexistent/x.json"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"--quad-abs-tol", "-1", "eval", scenario("fig2.json")}).code == 2);
}

TEST_CASE("eval csv lists every applicable quantity with its symbol") {
    const auto r = run({"eval", scenario("fig3.json"), "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(first_line(r.out) == "quantity,symbol,gamma,value,note");
    CHECK(r.out.find("\nr_bind,") != std::string::npos);
    CHECK(r.out.find("\nshare_multi,") != std::string::npos);
}

TEST_CASE("sweep output is deterministic and ends exactly at the upper limit") {
    const std::vector<std::string> args = {"sweep", scenario("fig3.json"), "--var", "b_R", "--from", "0", "--to", "2.5",
                                           "--steps", "11", "--quantities", "r_bind,r_star_star"};
    const auto a = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == run(args).out);
    CHECK(first_line(a.out) == "b_R,valid,r_bind,r_star_star");
    CHECK(a.out.find("\n2.5,1,") != std::string::npos);
    CHECK(a.out.find("\n1,1,0.5,0.5\n") != std::string::npos);

    CHECK(run({"sweep", scenario("fig3.json"), "--var", "b_R", "--from", "0", "--to", "1", "--steps", "1"}).code == 2);
    CHECK(run({"sweep", scenario("fig3.json"), "--var", "b_R", "--from", "1", "--to", "0", "--steps", "3"}).code == 2);
    CHECK(run({"sweep", scenario("fig3.json"), "--var", "colour", "--from", "0", "--to", "1", "--steps", "3"}).code == 2);
    CHECK(run({"sweep", scenario("fig3.json"), "--var", "r", "--from", "0.1", "--to", "0.9", "--steps", "3",
               "--quantities", "r_T"})
              .code == 2);
}

TEST_CASE("figure datasets") {
    const auto f3 = run({"figure", "fig3"});
    REQUIRE(f3.code == 0);
    CHECK(first_line(f3.out) == "b_R,r_bind,r_star,r_star_star");
    CHECK(f3.out.find("\n1,0.5,,0.5\n") != std::string::npos);
    const auto f1 = run({"figure", "fig1"});
    CHECK(first_line(f1.out) == "gamma,g,s,multi_issue");
    CHECK(run({"figure", "fig9"}).code == 2);
    const auto out = write_temp("fig2.csv", "");
    CHECK(run({"--out", out.string(), "figure", "fig2"}).code == 0);
    CHECK(read_file(out) == run({"figure", "fig2"}).out);
}

TEST_CASE("validate: passes, echoes the seed, fails with a corrupted tolerance") {
    const auto ok = run({"--seed", "4242", "validate", scenario("fig3.json"), "--replications", "4000"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("4242") != std::string::npos);

    const auto bad = run({"--quad-abs-tol", "1", "--quad-rel-tol", "1", "validate", scenario("fig3.json"),
                          "--replications", "4000"});
    CHECK(bad.code == 1);

    const auto out1 = write_temp("sim1.csv", "");
    const auto out2 = write_temp("sim2.csv", "");
    const auto a = run({"--out", out1.string(), "validate", scenario("fig3.json"), "--replications", "2000", "--format", "csv"});
    const auto b = run({"--out", out2.string(), "validate", scenario("fig3.json"), "--replications", "2000", "--format", "csv"});
    CHECK(a.out == b.out);
    CHECK(read_file(out1) == read_file(out2));
    CHECK(first_line(read_file(out1)) == "scenario_id,mode,regime,win_freq_R,se,congruence_y,congruence_x,seed");
}

}  // TEST_SUITE
