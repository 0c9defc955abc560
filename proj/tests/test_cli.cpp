#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lindley/cli.hpp"
#include "lindley/binomial_testing.hpp"
#include "lindley/normal_testing.hpp"

using namespace lindley;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

cli::Json json_of(const Result& r) { return cli::Json::parse(r.out); }

}  // namespace

TEST_CASE("report") {
  const auto r = call({"report", "--t", "1.96", "--n", "16818"});
  REQUIRE(r.code == cli::kExitOk);
  const auto j = json_of(r);
  CHECK(j["format_version"] == "1.0");
  CHECK(j["command"] == "report");
  CHECK(j["results"]["p_value"].get<double>() == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(j["results"]["bf01"].get<double>() == doctest::Approx(19.0).epsilon(1e-4));
  CHECK(j["results"]["bf01_savage_dickey"].get<double>() == doctest::Approx(19.0).epsilon(1e-4));
  CHECK(j["results"]["post_prob0"].get<double>() == doctest::Approx(0.95).epsilon(1e-4));
  CHECK(j["results"]["paradox"] == true);

  const auto z = json_of(call({"report", "--t", "0", "--n", "10"}));
  CHECK(z["results"]["p_value"] == 1.0);
  CHECK(z["results"]["bf01"].get<double>() == doctest::Approx(std::sqrt(11.0)).epsilon(1e-5));
  CHECK(z["results"]["paradox"] == false);

  const auto ten = json_of(call({"report", "--t", "1.96", "--n", "164", "--rho0", "0.90909"}));
  CHECK(ten["results"]["post_prob0"].get<double>() == doctest::Approx(0.9501).epsilon(1e-4));
}

TEST_CASE("report: t and xbar are exclusive and one is required") {
  const auto both = call({"report", "--n", "10", "--t", "1", "--xbar", "0.3"});
  CHECK(both.code == cli::kExitUsage);
  CHECK(both.err.find("mutually exclusive") != std::string::npos);
  CHECK(both.out.empty());
  CHECK(call({"report", "--n", "10"}).code == cli::kExitUsage);
  CHECK(call({"report", "--t", "1"}).code == cli::kExitUsage);
  CHECK(call({"report", "--n", "10", "--t", "abc"}).code == cli::kExitUsage);
  CHECK(call({"report", "--n", "10", "--t", "1", "--rho0", "1"}).code == cli::kExitUsage);
  CHECK(call({"frobnicate"}).code == cli::kExitUsage);
  CHECK(call({}).code == cli::kExitUsage);
}

TEST_CASE("paradox") {
  const auto r = call({"paradox", "--t", "1.96", "--target", "0.95", "--rho0", "0.5"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.find("# crossing_n=16818\n") != std::string::npos);
  const auto rows = cli::parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0][0] == "n");
  CHECK(rows[3][0] == "16818");
  CHECK(rows[3].back() == "true");

  CHECK(call({"paradox", "--t", "1.96", "--rho0", "0.90909"}).out.find("# crossing_n=164\n") != std::string::npos);
  CHECK(call({"paradox", "--t", "0"}).out.find("# crossing_n=360\n") != std::string::npos);

  const auto unreachable = call({"paradox", "--t", "1.96", "--target", "0.5", "--rho0", "0.99"});
  CHECK(unreachable.code == cli::kExitFailure);
  CHECK(unreachable.err.find("unreachable") != std::string::npos);
}

TEST_CASE("paradox with a caller-supplied alpha(n)") {
  const auto r = call({"paradox", "--t", "1.96", "--n-list", "100,16818", "--alpha-list", "0.05,0.001"});
  REQUIRE(r.code == cli::kExitOk);
  const auto rows = cli::parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[2][4] == "0.001");
  CHECK(rows[2][7] == "false");
  CHECK(call({"paradox", "--t", "1.96", "--n-list", "100", "--alpha-list", "0.05,0.01"}).code ==
        cli::kExitUsage);
}

TEST_CASE("severity") {
  CHECK(call({"severity", "--n", "527135", "--xbar", "0.2x"}).code == cli::kExitUsage);
  CHECK(call({"severity", "--n", "10", "--xbar", "0.7", "--successes", "3"}).code == cli::kExitUsage);

  const auto s = call({"severity", "--theta0", "0.2", "--n", "527135", "--successes", "106298", "--level", "0.9"});
  REQUIRE(s.code == cli::kExitOk);
  const auto rows = cli::parse_csv(s.out);
  CHECK(rows[0] == std::vector<std::string>{"theta1", "gamma", "severity"});
  CHECK(rows.size() == 13);
  CHECK(rows.back()[0] == "warranted_gamma");
  CHECK(std::abs(std::stod(rows.back()[1]) - 0.000946) < 1e-5);

  const auto half = call({"severity", "--n", "10", "--xbar", "0.7", "--level", "0.5", "--grid", "0.7"});
  const auto hrows = cli::parse_csv(half.out);
  CHECK(hrows[1][2] == "0.5");
  CHECK(hrows[2][1] == "0.7");

  CHECK(call({"severity", "--n", "10", "--xbar", "0.7", "--grid", "0.5,0.1"}).code == cli::kExitUsage);
  CHECK(call({"severity", "--n", "10", "--xbar", "0.7", "--grid", "x"}).code == cli::kExitUsage);
  CHECK(call({"severity", "--n", "10", "--xbar", "0.7", "--grid-points", "0"}).code == cli::kExitUsage);
}

TEST_CASE("binomial") {
  const auto j = json_of(call({"binomial", "--n", "527135", "--x", "106298", "--theta0", "0.2"}));
  CHECK(j["results"]["p_value"].get<double>() == doctest::Approx(0.0027).epsilon(0.05));
  CHECK(j["results"]["bf_flat"].get<double>() == doctest::Approx(8.115).epsilon(0.005));
  CHECK(j["results"].contains("z"));
  CHECK(j["results"].contains("bf_laplace"));
  CHECK(j["provenance"].size() == 5);

  CHECK(json_of(call({"binomial", "--n", "1", "--x", "0", "--theta0", "0.5"}))["results"]["bf_flat"] == 1.0);
  CHECK(call({"binomial", "--n", "5", "--x", "6", "--theta0", "0.5"}).code == cli::kExitUsage);
}

TEST_CASE("score") {
  const auto h = json_of(call({"score", "--rule", "hyvarinen", "--t", "0", "--n", "10", "--sigma", "1", "--alt", "flat"}));
  CHECK(h["results"]["diff"] == -20.0);
  CHECK(h["results"]["selection"] == "null");

  const auto l = json_of(call({"score", "--rule", "log", "--t", "1.96", "--n", "16818", "--tau-equals-sigma"}));
  CHECK(l["results"]["diff"].get<double>() == doctest::Approx(-std::log(19.0)).epsilon(1e-4));

  const auto s = json_of(call({"score", "--rule", "sprenger-kl", "--theta0", "0", "--sigma", "1", "--n", "25",
                               "--tau", "1", "--xbar", "0.5", "--digits", "17"}));
  CHECK(s["results"]["s0"].get<double>() == doctest::Approx(3.3700073964497041).epsilon(1e-14));
  CHECK(s["results"]["selection"] == "undecided");

  const auto flat = json_of(call({"score", "--rule", "log", "--t", "1", "--n", "10", "--alt", "flat"}));
  CHECK(flat["results"]["depends_on_constant"] == true);

  CHECK(call({"score", "--rule", "sprenger-kl", "--t", "1", "--n", "10", "--alt", "flat"}).code == cli::kExitUsage);
  CHECK(call({"score", "--rule", "brier", "--t", "1", "--n", "10"}).code == cli::kExitUsage);
}

TEST_CASE("simulate is deterministic and seeded") {
  const std::vector<std::string> args{"simulate", "--kind", "consistency", "--seed", "42", "--grid", "100,10000"};
  const auto a = call(args);
  const auto b = call(args);
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("seed=42") != std::string::npos);
  auto other = args;
  other[4] = "43";
  CHECK(call(other).out != a.out);

  const auto u = cli::parse_csv(call({"simulate", "--kind", "uniformity", "--reps", "10000", "--grid", "100"}).out);
  CHECK(std::stod(u[1][2]) < 0.0163);

  const auto h1 = cli::parse_csv(call({"simulate", "--kind", "consistency", "--shift", "0.5", "--grid", "1000"}).out);
  CHECK(std::stod(h1[1][6]) >= 0.99);

  CHECK(call({"simulate", "--kind", "consistency", "--reps", "0"}).code == cli::kExitUsage);
  CHECK(call({"simulate", "--kind", "bogus"}).code == cli::kExitUsage);
}

TEST_CASE("paper-check") {
  const auto ok = call({"paper-check", "--format", "json"});
  CHECK(ok.code == cli::kExitOk);
  const auto j = json_of(ok);
  CHECK(j["results"]["all_passed"] == true);
  for (const auto& row : j["rows"]) CHECK(row["status"] == "pass");

  const auto fail = call({"paper-check", "--zero-tolerance", "stone_bf_flat"});
  CHECK(fail.code == cli::kExitFailure);
  CHECK(fail.out.find("FAIL") != std::string::npos);
  CHECK(fail.out.find("input validation failed") != std::string::npos);
  CHECK(call({"paper-check", "--zero-tolerance", "nope"}).code == cli::kExitUsage);
}

TEST_CASE("global flags") {
  CHECK(call({"--format", "xml", "report", "--t", "1", "--n", "3"}).code == cli::kExitUsage);
  CHECK(call({"--digits", "0", "report", "--t", "1", "--n", "3"}).code == cli::kExitUsage);
  // flags accepted on either side of the command
  const auto before = call({"--digits", "3", "report", "--t", "1.96", "--n", "16818"});
  const auto after = call({"report", "--t", "1.96", "--n", "16818", "--digits", "3"});
  CHECK(before.out == after.out);
  CHECK(json_of(before)["results"]["bf01"] == 19.0);

  const auto table = call({"report", "--t", "1.96", "--n", "16818", "--format", "table"});
  CHECK(table.out.find("result bf01 = 19.0001") != std::string::npos);

  const auto path = std::filesystem::temp_directory_path() / "lindley_cli_out_test.csv";
  std::filesystem::remove(path);
  const auto w = call({"paradox", "--t", "1.96", "--out", path.string()});
  CHECK(w.code == cli::kExitOk);
  CHECK(w.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == call({"paradox", "--t", "1.96"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("CSV round trip reproduces derived columns") {
  const auto r = call({"paradox", "--t", "1.96", "--span", "3", "--digits", "17"});
  const auto rows = cli::parse_csv(r.out);
  REQUIRE(rows.size() == 8);
  const auto& header = rows[0];
  CHECK(header[2] == "bf01");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto n = std::stoll(rows[i][0]);
    const double bf = std::stod(rows[i][2]);
    const double post = std::stod(rows[i][3]);
    // recomputing from the parsed key column gives the same bits
    CHECK(bf == bayes_factor_lindley(1.96, n));
    CHECK(post == make_lindley_report(1.96, n, HypothesisWeights(0.5), 0.05).post_prob0);
  }
  // re-rendering parsed rows gives the same body
  std::string body;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) body += (i ? "," : "") + row[i];
    body += "\n";
  }
  CHECK(r.out.substr(r.out.find("n,p_value")) == body);
}

TEST_CASE("JSON round trip at full precision") {
  const auto r = call({"binomial", "--n", "1000", "--x", "220", "--theta0", "0.2", "--digits", "17"});
  const auto j = json_of(r);
  CHECK(cli::Json::parse(j.dump(2) + "\n") == j);
  CHECK(j["results"]["bf_flat"].get<double>() == binomial_bf_flat({1000, 220, 0.2}));
}

TEST_CASE("csv writer escapes and parser reads back") {
  cli::Table t{{"a", "b"}, {}};
  t.add_row({"x,y", "say \"hi\""});
  t.add_row({1.5, true});
  const auto text = cli::render_csv(t, {});
  const auto back = cli::parse_csv(text);
  CHECK(back[1][0] == "x,y");
  CHECK(back[1][1] == "say \"hi\"");
  CHECK(back[2][0] == "1.5");
  CHECK_THROWS_AS(t.add_row({1.0}), std::logic_error);
}
