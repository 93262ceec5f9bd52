#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ddnf/cli.hpp"

namespace {

// "name=value" tolerance overrides from the command line.
bool parseTolerance(const std::string& arg, std::map<std::string, double>& out) {
  const std::size_t eq = arg.find('=');
  if (eq == std::string::npos || eq == 0) return false;
  try {
    std::size_t used = 0;
    const double value = std::stod(arg.substr(eq + 1), &used);
    if (eq + 1 + used != arg.size()) return false;
    out[arg.substr(0, eq)] = value;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"normal-form realization toolkit for scalar delay equations"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string configPath;
  std::string outDir;
  ddnf::CliOptions opts;
  std::vector<std::string> tolerances;
  app.add_option("--config", configPath, "scenario config (JSON)")->required();
  app.add_option("--out", outDir, "directory for the report and CSV artifacts");
  app.add_option("--seed", opts.seed, "seed for randomized scans");
  app.add_option("--threads", opts.threads, "worker threads for scans and batch runs");
  app.add_option("--tolerance", tolerances, "override a named tolerance, e.g. forward=1e-6");
  app.set_version_flag("--version", std::string(ddnf::kToolVersion));

  for (const char* name : {"design", "dims", "scan", "realize", "reduce", "restrict", "simulate"})
    app.add_subcommand(name);
  app.get_subcommand("design")->description("design the linear part and verify its spectrum");
  app.get_subcommand("dims")->description("compare coefficient counts to radial dimensions");
  app.get_subcommand("scan")->description("search sampling positions for a well-conditioned solve");
  app.get_subcommand("realize")->description("construct a model hitting a prescribed radial field");
  app.get_subcommand("reduce")->description("reduce a given model to its radial normal form");
  app.get_subcommand("restrict")->description("analyze the one-delay double-Hopf obstruction");
  app.get_subcommand("simulate")->description("integrate a model and measure its oscillation");

  CLI11_PARSE(app, argc, argv);

  for (const std::string& t : tolerances) {
    if (!parseTolerance(t, opts.tolerances)) {
      std::cerr << "error: bad --tolerance argument '" << t << "' (expected name=value)\n";
      return 2;
    }
  }

  nlohmann::json config;
  {
    std::ifstream in(configPath);
    if (!in) {
      std::cerr << "error: cannot open config file '" << configPath << "'\n";
      return 2;
    }
    try {
      in >> config;
    } catch (const std::exception& e) {
      std::cerr << "error: config parse failure: " << e.what() << "\n";
      return 2;
    }
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  const ddnf::ScenarioResult result = ddnf::runScenario(sub, config, opts);

  std::cout << result.report.dump(2) << "\n";
  if (!outDir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(outDir, ec);
    if (ec) {
      std::cerr << "error: cannot create output directory '" << outDir << "'\n";
      return 2;
    }
    std::ofstream rep(std::filesystem::path(outDir) / "report.json");
    rep << result.report.dump(2) << "\n";
    for (const auto& [name, contents] : result.artifacts) {
      std::ofstream file(std::filesystem::path(outDir) / name);
      file << contents;
    }
  }
  return result.exitCode;
}
