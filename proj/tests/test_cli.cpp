#include <string>

#include "ddnf/cli.hpp"
#include "doctest.h"

using namespace ddnf;
using Json = nlohmann::json;

namespace {

Json hopfRealizeConfig() {
  return Json::parse(R"({
    "spectrum": {"p": 1, "includesZero": false, "omegas": [1.5707963267948966], "r": 1.0},
    "linear": {"positions": [-1.0]},
    "order": 3,
    "params": 0,
    "positions": [-1.0],
    "target": [{"component": 0, "exponents": [3], "value": -1.0}],
    "verify": {"forward": true, "oracle": true}
  })");
}

Json doubleHopfBase() {
  return Json::parse(R"({
    "spectrum": {"p": 2, "includesZero": false,
                 "omegas": [1.0, 1.4142135623730951], "r": 4.0},
    "linear": {"positions": [-0.3, -1.1, -2.4, -3.7]}
  })");
}

}  // namespace

TEST_CASE("realize scenario reproduces the classical Hopf coefficient") {
  const ScenarioResult res = runScenario("realize", hopfRealizeConfig());
  REQUIRE(res.exitCode == 0);
  CHECK(res.report.at("version").get<std::string>() == kToolVersion);
  // Resolved config echoes the designed operator, not just the request.
  CHECK(res.report.at("config").at("linear").at("terms").size() == 1);

  const auto& model = res.report.at("results").at("model").at("nonlinearity");
  REQUIRE(model.size() == 1);
  CHECK(model.at(0).at("value").get<double>() ==
        doctest::Approx(0.7358053663874926).epsilon(1e-10));
  CHECK(res.report.at("verification").at("forward").at("pass").get<bool>());
  CHECK(res.report.at("verification").at("oracle").at("pass").get<bool>());
  CHECK(res.report.at("verification").at("oracle").at("value").get<double>() ==
        doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("reports are byte-identical across repeated runs") {
  const std::string a = runScenario("realize", hopfRealizeConfig()).report.dump();
  const std::string b = runScenario("realize", hopfRealizeConfig()).report.dump();
  CHECK(a == b);

  Json scanCfg = doubleHopfBase();
  scanCfg["order"] = 3;
  scanCfg["params"] = 0;
  scanCfg["scan"] = Json::parse(R"({"samples": 150, "sampler": "random"})");
  CliOptions opts;
  opts.seed = 99;
  opts.threads = 2;
  const std::string s1 = runScenario("scan", scanCfg, opts).report.dump();
  const std::string s2 = runScenario("scan", scanCfg, opts).report.dump();
  CHECK(s1 == s2);
}

TEST_CASE("unknown keys, missing keys and bad tolerances are rejected") {
  Json cfg = hopfRealizeConfig();
  cfg["spectrun"] = 1;
  const ScenarioResult bad = runScenario("realize", cfg);
  CHECK(bad.exitCode == 2);
  CHECK(bad.report.at("error").get<std::string>().find("spectrun") != std::string::npos);

  Json missing = hopfRealizeConfig();
  missing.erase("target");
  const ScenarioResult miss = runScenario("realize", missing);
  CHECK(miss.exitCode == 2);
  CHECK(miss.report.at("error").get<std::string>().find("target") != std::string::npos);

  CliOptions opts;
  opts.tolerances["bogus"] = 1.0;
  const ScenarioResult tolBad = runScenario("realize", hopfRealizeConfig(), opts);
  CHECK(tolBad.exitCode == 2);
  CHECK(tolBad.report.at("error").get<std::string>().find("bogus") != std::string::npos);

  const ScenarioResult noSub = runScenario("paint", hopfRealizeConfig());
  CHECK(noSub.exitCode == 2);
}

TEST_CASE("tolerance overrides are applied and recorded") {
  CliOptions opts;
  opts.tolerances["forward"] = 1e-2;
  const ScenarioResult res = runScenario("realize", hopfRealizeConfig(), opts);
  CHECK(res.exitCode == 0);
  CHECK(res.report.at("options").at("tolerances").at("forward").get<double>() == 1e-2);
  CHECK(res.report.at("verification").at("forward").at("tolerance").get<double>() == 1e-2);
}

TEST_CASE("dims flags the one-delay double-Hopf gap") {
  Json cfg = Json::parse(R"({
    "spectrum": {"p": 2, "includesZero": false,
                 "omegas": [1.0, 1.4142135623730951], "r": 4.0},
    "order": 3,
    "delays": 1
  })");
  const ScenarioResult res = runScenario("dims", cfg);
  REQUIRE(res.exitCode == 0);
  CHECK(res.report.at("results").at("sourceTotal").get<int>() == 2);
  CHECK(res.report.at("results").at("radialTotal").get<int>() == 4);
  CHECK(res.report.at("results").at("verdict").get<std::string>() == "2 < 4, not surjective");
}

TEST_CASE("scan subcommand reports the seeded best tuple") {
  Json cfg = doubleHopfBase();
  cfg["order"] = 3;
  cfg["params"] = 0;
  cfg["scan"] = Json::parse(R"({"samples": 200})");
  CliOptions opts;
  opts.seed = 12345;
  opts.threads = 2;
  const ScenarioResult res = runScenario("scan", cfg, opts);
  REQUIRE(res.exitCode == 0);
  CHECK(res.report.at("results").at("samples").get<int>() == 200);
  CHECK(res.report.at("results").at("best").size() == 2);
  CHECK(res.report.at("results").at("viableFraction").get<double>() > 0.9);
  CHECK(res.report.at("results").at("bestScore").get<double>() > 0.1);
  // The resolved sampler default is recorded.
  CHECK(res.report.at("config").at("scan").at("sampler").get<std::string>() == "random");
}

TEST_CASE("reduce reports the radial field of a given model") {
  Json cfg = Json::parse(R"({
    "spectrum": {"p": 1, "includesZero": false, "omegas": [1.5707963267948966], "r": 1.0},
    "linear": {"positions": [-1.0]},
    "positions": [-1.0],
    "params": 0,
    "order": 3,
    "model": {"nonlinearity": [{"exponents": [3], "value": 1.0}]}
  })");
  const ScenarioResult res = runScenario("reduce", cfg);
  REQUIRE(res.exitCode == 0);
  const auto& radial = res.report.at("results").at("radial");
  REQUIRE(radial.size() == 1);
  CHECK(radial.at(0).at("value").get<double>() ==
        doctest::Approx(-1.359055051351).epsilon(1e-9));
  CHECK(res.report.at("verification").at("consistency").at("pass").get<bool>());
}

TEST_CASE("restrict reports the rank-gap verdict") {
  Json cfg = doubleHopfBase();
  cfg["position"] = -1.0;
  const ScenarioResult res = runScenario("restrict", cfg);
  REQUIRE(res.exitCode == 0);
  const auto& r = res.report.at("results");
  CHECK(r.at("jacobianRank").get<int>() == 2);
  CHECK(r.at("targetDimension").get<int>() == 4);
  CHECK(r.at("restricted").get<bool>());
  CHECK(r.at("distinctSignPatterns").get<int>() < r.at("requiredSignPatterns").get<int>());
  CHECK(r.at("verdict").get<std::string>() == "2 < 4, not surjective");
  CHECK(r.at("dims").at("verdict").get<std::string>() == "2 < 4, not surjective");
  CHECK(res.report.at("verification").at("structure").at("pass").get<bool>());
}

TEST_CASE("empty model cannot be simulated") {
  Json cfg = Json::parse(R"({
    "spectrum": {"p": 1, "includesZero": false, "omegas": [1.5707963267948966], "r": 1.0},
    "linear": {"positions": [-1.0]},
    "positions": [-1.0],
    "params": 0,
    "model": {"nonlinearity": []}
  })");
  const ScenarioResult res = runScenario("simulate", cfg);
  CHECK(res.exitCode == 2);
  CHECK(res.report.at("error").get<std::string>().find("nothing to simulate") !=
        std::string::npos);
}

TEST_CASE("simulate emits measurement rows and csv artifacts") {
  Json cfg = Json::parse(R"({
    "spectrum": {"p": 1, "includesZero": false, "omegas": [1.5707963267948966], "r": 1.0},
    "linear": {"terms": [{"theta": 0.0, "b": -0.5},
                          {"theta": -1.0, "b": -1.5707963267948966}]},
    "positions": [-1.0],
    "params": 0,
    "model": {"nonlinearity": [{"exponents": [2], "value": 0.1}]},
    "simulation": {"history": 0.1, "tEnd": 60.0}
  })");
  CliOptions opts;
  opts.threads = 2;
  const ScenarioResult res = runScenario("simulate", cfg, opts);
  REQUIRE(res.exitCode == 0);
  const auto& runs = res.report.at("results").at("runs");
  REQUIRE(runs.size() == 1);
  CHECK(!runs.at(0).at("diverged").get<bool>());
  CHECK(runs.at(0).at("amplitude").get<double>() == 0.0);  // damped ringing decays
  REQUIRE(res.artifacts.count("trajectory_0.csv") == 1);
  const std::string& csv = res.artifacts.at("trajectory_0.csv");
  CHECK(csv.rfind("t,z\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6002);  // header + one row per knot
}

TEST_CASE("realize drives the unfolding route when a parameter table is present") {
  Json cfg = Json::parse(R"({
    "spectrum": {"p": 1, "includesZero": true, "omegas": [1.0], "r": 5.0},
    "linear": {"terms": [{"theta": -1.5707963267948966, "b": -0.5},
                          {"theta": -4.71238898038469, "b": 0.5}]},
    "order": 2,
    "params": 2,
    "positions": [0.0, -3.141592653589793],
    "target": [
      {"component": 0, "exponents": [0, 2, 0, 0], "value": 0.7},
      {"component": 0, "exponents": [2, 0, 0, 0], "value": -0.4},
      {"component": 1, "exponents": [1, 1, 0, 0], "value": 1.1}
    ],
    "unfolding": [
      {"component": 0, "exponents": [1, 0, 1, 0], "value": 1.0},
      {"component": 1, "exponents": [0, 1, 0, 1], "value": -0.6}
    ]
  })");
  const ScenarioResult res = runScenario("realize", cfg);
  REQUIRE(res.exitCode == 0);
  CHECK(res.report.at("results").at("unfolding").at("xi").size() == 4);
  CHECK(res.report.at("results").at("base").at("residual").get<double>() <= 1e-10);
  CHECK(res.report.at("results").at("unfolding").at("residual").get<double>() <= 1e-10);
  CHECK(res.report.at("verification").at("forward").at("pass").get<bool>());

  // The classical-oracle check only exists for the single-Hopf scenario.
  cfg["verify"] = Json::parse(R"({"oracle": true})");
  const ScenarioResult bad = runScenario("realize", cfg);
  CHECK(bad.exitCode == 2);
}
