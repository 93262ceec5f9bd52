#include "ddnf/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace ddnf {

namespace {

using Json = nlohmann::json;
using OJson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void requireKeys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(where + " must be an object");
  for (const auto& item : obj.items())
    if (!allowed.count(item.key())) fail("unknown key '" + item.key() + "' in " + where);
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) fail("missing key '" + key + "' in " + where);
  return obj.at(key);
}

double asDouble(const Json& v, const std::string& where) {
  if (!v.is_number()) fail(where + " must be a number");
  return v.get<double>();
}

int asInt(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where + " must be an integer");
  return v.get<int>();
}

bool asBool(const Json& v, const std::string& where) {
  if (!v.is_boolean()) fail(where + " must be a boolean");
  return v.get<bool>();
}

double numberOr(const Json& obj, const std::string& key, double def, const std::string& where) {
  return obj.contains(key) ? asDouble(obj.at(key), where + "." + key) : def;
}

int intOr(const Json& obj, const std::string& key, int def, const std::string& where) {
  return obj.contains(key) ? asInt(obj.at(key), where + "." + key) : def;
}

std::vector<double> asDoubleVector(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const Json& x : v) out.push_back(asDouble(x, where + " entry"));
  return out;
}

OJson jsonFromVec(const VecD& v) {
  OJson arr = OJson::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

// ---------------------------------------------------------------------------
// Config parsing

SpectrumSpec parseSpectrum(const Json& j) {
  requireKeys(j, {"p", "includesZero", "omegas", "r"}, "spectrum");
  SpectrumSpec spec;
  spec.p = asInt(require(j, "p", "spectrum"), "spectrum.p");
  spec.includesZero =
      j.contains("includesZero") ? asBool(j.at("includesZero"), "spectrum.includesZero") : false;
  spec.omegas = asDoubleVector(require(j, "omegas", "spectrum"), "spectrum.omegas");
  spec.r = asDouble(require(j, "r", "spectrum"), "spectrum.r");
  try {
    spec.validate();
  } catch (const std::exception& e) {
    fail(std::string("invalid spectrum: ") + e.what());
  }
  return spec;
}

OJson echoSpectrum(const SpectrumSpec& spec) {
  OJson j;
  j["p"] = spec.p;
  j["includesZero"] = spec.includesZero;
  j["omegas"] = spec.omegas;
  j["r"] = spec.r;
  return j;
}

OJson echoTerms(const DelayOperator& op) {
  OJson arr = OJson::array();
  for (const DelayTerm& t : op.terms) {
    OJson e;
    e["theta"] = t.theta;
    e["b"] = t.b;
    arr.push_back(e);
  }
  return arr;
}

// Either designs the linear part from prescribed delay positions or takes
// explicit terms.  `echo` receives the fully resolved description.
DelayOperator parseLinear(const Json& j, const SpectrumSpec& spec, OJson& echo) {
  requireKeys(j, {"positions", "terms"}, "linear");
  if (j.contains("positions") == j.contains("terms"))
    fail("linear needs exactly one of 'positions' or 'terms'");
  DelayOperator op;
  if (j.contains("positions")) {
    const std::vector<double> pos = asDoubleVector(j.at("positions"), "linear.positions");
    op = designLinear(spec, pos);
    echo["positions"] = pos;
  } else {
    for (const Json& t : j.at("terms")) {
      requireKeys(t, {"theta", "b"}, "linear.terms entry");
      op.terms.push_back(DelayTerm{asDouble(require(t, "theta", "linear term"), "theta"),
                                   asDouble(require(t, "b", "linear term"), "b")});
    }
  }
  echo["terms"] = echoTerms(op);
  return op;
}

Monomial parseMonomial(const Json& arr, const VariableSpace& space, const std::string& where) {
  if (!arr.is_array() || arr.size() != static_cast<std::size_t>(space.size()))
    fail(where + ".exponents must list one entry per variable (" +
         std::to_string(space.size()) + ")");
  std::vector<int> e;
  e.reserve(arr.size());
  for (const Json& x : arr) {
    const int v = asInt(x, where + " exponent");
    if (v < 0) fail(where + " exponents must be nonnegative");
    e.push_back(v);
  }
  return Monomial(e);
}

// Coefficient table [{component, exponents, value}] -> vector field.
VectorPoly parseField(const Json& arr, const VariableSpace& space, int comps,
                      const std::string& where) {
  if (!arr.is_array()) fail(where + " must be an array of coefficient entries");
  VectorPoly field(space, comps);
  for (const Json& entry : arr) {
    requireKeys(entry, {"component", "exponents", "value"}, where + " entry");
    const int c = asInt(require(entry, "component", where), where + ".component");
    if (c < 0 || c >= comps) fail(where + ".component out of range");
    field.comp(c).addTerm(parseMonomial(require(entry, "exponents", where), space, where),
                          asDouble(require(entry, "value", where), where + ".value"));
  }
  return field;
}

// Coefficient table [{exponents, value}] -> scalar polynomial.
ScalarPoly parseScalar(const Json& arr, const VariableSpace& space, const std::string& where) {
  if (!arr.is_array()) fail(where + " must be an array of coefficient entries");
  ScalarPoly poly(space);
  for (const Json& entry : arr) {
    requireKeys(entry, {"exponents", "value"}, where + " entry");
    poly.addTerm(parseMonomial(require(entry, "exponents", where), space, where),
                 asDouble(require(entry, "value", where), where + ".value"));
  }
  return poly;
}

OJson tableFromScalar(const ScalarPoly& poly) {
  OJson arr = OJson::array();
  for (const auto& [m, c] : poly.terms()) {
    OJson e;
    e["exponents"] = m.exponents();
    e["value"] = c.real();
    arr.push_back(e);
  }
  return arr;
}

OJson tableFromVector(const VectorPoly& field) {
  OJson arr = OJson::array();
  for (int c = 0; c < field.components(); ++c) {
    for (const auto& [m, v] : field.comp(c).terms()) {
      OJson e;
      e["component"] = c;
      e["exponents"] = m.exponents();
      e["value"] = v.real();
      arr.push_back(e);
    }
  }
  return arr;
}

// ---------------------------------------------------------------------------
// Shared result fragments

OJson dimsReport(const SpectrumSpec& spec, int order, int delays) {
  const DimsReport rep = dims(spec, delays, order, 0);
  OJson rows = OJson::array();
  for (const GradeDims& g : rep.grades) {
    OJson row;
    row["grade"] = g.grade;
    row["source"] = g.full;
    row["equivariant"] = g.v;
    row["radial"] = g.radial;
    rows.push_back(row);
  }
  OJson out;
  out["perGrade"] = rows;
  out["sourceTotal"] = rep.fullTotal;
  out["sourceClosedForm"] = rep.fullTotalClosedForm;
  out["radialTotal"] = rep.radialMuFreeTotal;
  out["verdict"] = !rep.sourceCoversTarget
                       ? std::to_string(rep.fullTotal) + " < " +
                             std::to_string(rep.radialMuFreeTotal) + ", not surjective"
                       : std::to_string(rep.fullTotal) + " >= " +
                             std::to_string(rep.radialMuFreeTotal) +
                             ", dimensions admit surjectivity";
  return out;
}

OJson spectrumVerification(const SpectrumReport& rep) {
  OJson v;
  v["pass"] = rep.pass;
  v["stripCount"] = rep.stripCount;
  v["expectedCount"] = rep.expectedCount;
  v["rootResiduals"] = rep.rootResiduals;
  v["derivativeMagnitudes"] = rep.derivativeMagnitudes;
  v["message"] = rep.message;
  return v;
}

std::string csvFromTrajectory(const Trajectory& traj) {
  std::string out = "t,z\n";
  out.reserve(out.size() + 32 * traj.times.size());
  char line[80];
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.12g,%.12g\n", traj.times[i], traj.values[i]);
    out += line;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subcommand handlers

void handleDesign(const Json& cfg, const CliOptions&, const std::map<std::string, double>& tol,
                  OJson& report, ScenarioResult& out) {
  requireKeys(cfg, {"spectrum", "linear"}, "config");
  const SpectrumSpec spec = parseSpectrum(require(cfg, "spectrum", "config"));
  OJson linEcho;
  const DelayOperator op = parseLinear(require(cfg, "linear", "config"), spec, linEcho);
  OJson resolved;
  resolved["spectrum"] = echoSpectrum(spec);
  resolved["linear"] = linEcho;
  report["config"] = resolved;

  const SpectrumReport rep = verifySpectrum(op, spec, tol.at("spectrum"));
  OJson results;
  results["terms"] = echoTerms(op);
  report["results"] = results;
  report["verification"] = spectrumVerification(rep);
  if (!rep.pass) out.exitCode = 1;
}

void handleDims(const Json& cfg, const CliOptions&, const std::map<std::string, double>&,
                OJson& report, ScenarioResult&) {
  requireKeys(cfg, {"spectrum", "order", "delays"}, "config");
  const SpectrumSpec spec = parseSpectrum(require(cfg, "spectrum", "config"));
  const int order = intOr(cfg, "order", 3, "config");
  const int delays = asInt(require(cfg, "delays", "config"), "config.delays");
  if (order < 2) fail("order must be at least 2");
  if (delays < 1) fail("delays must be at least 1");
  OJson resolved;
  resolved["spectrum"] = echoSpectrum(spec);
  resolved["order"] = order;
  resolved["delays"] = delays;
  report["config"] = resolved;
  report["results"] = dimsReport(spec, order, delays);
}

struct ScanSettings {
  int samples = 400;
  ScanSampler sampler = ScanSampler::Random;
  std::string samplerName = "random";
};

ScanSettings parseScanBlock(const Json& cfg) {
  ScanSettings s;
  if (!cfg.contains("scan")) return s;
  const Json& j = cfg.at("scan");
  requireKeys(j, {"samples", "sampler"}, "scan");
  s.samples = intOr(j, "samples", s.samples, "scan");
  if (s.samples < 1) fail("scan.samples must be positive");
  if (j.contains("sampler")) {
    const std::string name = j.at("sampler").is_string() ? j.at("sampler").get<std::string>() : "";
    if (name == "random")
      s.sampler = ScanSampler::Random;
    else if (name == "grid")
      s.sampler = ScanSampler::Grid;
    else
      fail("scan.sampler must be 'random' or 'grid'");
    s.samplerName = name;
  }
  return s;
}

OJson echoScan(const ScanSettings& s) {
  OJson j;
  j["samples"] = s.samples;
  j["sampler"] = s.samplerName;
  return j;
}

OJson scanResults(const TauScanResult& scan) {
  OJson j;
  j["best"] = scan.best;
  j["bestScore"] = scan.bestScore;
  j["viableFraction"] = scan.viableFraction;
  j["samples"] = scan.samples;
  return j;
}

void handleScan(const Json& cfg, const CliOptions& opts, const std::map<std::string, double>&,
                OJson& report, ScenarioResult&) {
  requireKeys(cfg, {"spectrum", "linear", "order", "params", "scan"}, "config");
  const SpectrumSpec spec = parseSpectrum(require(cfg, "spectrum", "config"));
  OJson linEcho;
  const DelayOperator op = parseLinear(require(cfg, "linear", "config"), spec, linEcho);
  const int order = intOr(cfg, "order", 3, "config");
  const int params = intOr(cfg, "params", 0, "config");
  const ScanSettings scan = parseScanBlock(cfg);
  OJson resolved;
  resolved["spectrum"] = echoSpectrum(spec);
  resolved["linear"] = linEcho;
  resolved["order"] = order;
  resolved["params"] = params;
  resolved["scan"] = echoScan(scan);
  report["config"] = resolved;

  const TauScanResult res =
      scanPositions(op, spec, order, params, scan.samples, opts.seed, opts.threads, scan.sampler);
  report["results"] = scanResults(res);
}

void handleRealize(const Json& cfg, const CliOptions& opts,
                   const std::map<std::string, double>& tol, OJson& report, ScenarioResult& out) {
  requireKeys(cfg,
              {"spectrum", "linear", "order", "params", "positions", "scan", "target",
               "unfolding", "pin", "verify"},
              "config");
  const SpectrumSpec spec = parseSpectrum(require(cfg, "spectrum", "config"));
  OJson linEcho;
  const DelayOperator op = parseLinear(require(cfg, "linear", "config"), spec, linEcho);
  const int order = intOr(cfg, "order", 3, "config");
  const int params = intOr(cfg, "params", 0, "config");
  if (params < 0) fail("params must be nonnegative");

  const VariableSpace rspace = VariableSpace::radial(spec.p, spec.includesZero, params);
  const VectorPoly target =
      parseField(require(cfg, "target", "config"), rspace, spec.d(), "target");
  const bool haveUnfolding = cfg.contains("unfolding") && !cfg.at("unfolding").empty();
  const VectorPoly unfolding = haveUnfolding
                                   ? parseField(cfg.at("unfolding"), rspace, spec.d(), "unfolding")
                                   : VectorPoly(rspace, spec.d());

  // Verification toggles.
  OJson verifyEcho;
  bool checkForward = true, checkOracle = false;
  std::vector<double> simulateMus;
  if (cfg.contains("verify")) {
    const Json& v = cfg.at("verify");
    requireKeys(v, {"forward", "oracle", "simulate"}, "verify");
    if (v.contains("forward")) checkForward = asBool(v.at("forward"), "verify.forward");
    if (v.contains("oracle")) checkOracle = asBool(v.at("oracle"), "verify.oracle");
    if (v.contains("simulate")) simulateMus = asDoubleVector(v.at("simulate"), "verify.simulate");
  }
  verifyEcho["forward"] = checkForward;
  verifyEcho["oracle"] = checkOracle;
  verifyEcho["simulate"] = simulateMus;

  // Sampling points: explicit, or the best tuple of a seeded scan.
  std::vector<double> positions;
  OJson scanEcho, scanRes;
  bool scanned = false;
  const Json& posCfg = require(cfg, "positions", "config");
  if (posCfg.is_string() && posCfg.get<std::string>() == "scan") {
    const ScanSettings scan = parseScanBlock(cfg);
    const TauScanResult res = scanPositions(op, spec, order, params, scan.samples, opts.seed,
                                            opts.threads, scan.sampler);
    positions = res.best;
    scanEcho = echoScan(scan);
    scanRes = scanResults(res);
    scanned = true;
  } else {
    positions = asDoubleVector(posCfg, "positions");
  }
  if (static_cast<int>(positions.size()) != spec.d())
    fail("positions must supply one sampling point per radial slot (" +
         std::to_string(spec.d()) + ")");

  // Optional pinned parameter-free nonlinearity.
  const VariableSpace dspace = VariableSpace::delayed(spec.d(), 0);
  const bool havePin = cfg.contains("pin") && !cfg.at("pin").empty();
  const ScalarPoly pin =
      havePin ? parseScalar(cfg.at("pin"), dspace, "pin") : ScalarPoly(dspace);

  OJson resolved;
  resolved["spectrum"] = echoSpectrum(spec);
  resolved["linear"] = linEcho;
  resolved["order"] = order;
  resolved["params"] = params;
  resolved["positions"] = positions;
  if (scanned) resolved["scan"] = scanEcho;
  resolved["target"] = tableFromVector(target);
  resolved["unfolding"] = tableFromVector(unfolding);
  resolved["pin"] = tableFromScalar(pin);
  resolved["verify"] = verifyEcho;
  report["config"] = resolved;

  OJson results;
  if (scanned) results["scan"] = scanRes;

  DDEModel model;
  double residual = 0.0;
  if (haveUnfolding) {
    // Two-stage route: hit the parameter-free part first, then add
    // parameter-vanishing corrections on top of the frozen base model.
    for (int c = 0; c < target.components(); ++c)
      for (const auto& [m, v] : target.comp(c).terms()) {
        (void)v;
        if (m.degreeOfKind(rspace, VarKind::Param) != 0)
          fail("target must be parameter-free when an unfolding table is present");
      }
    const VariableSpace rfree = VariableSpace::radial(spec.p, spec.includesZero, 0);
    VectorPoly baseTarget(rfree, spec.d());
    for (int c = 0; c < target.components(); ++c)
      for (const auto& [m, v] : target.comp(c).terms()) {
        std::vector<int> e = m.exponents();
        e.resize(static_cast<std::size_t>(rfree.size()));
        baseTarget.comp(c).addTerm(Monomial(e), v);
      }
    const RealizationResult base =
        realize(op, spec, positions, baseTarget, order, havePin ? &pin : nullptr);
    VectorPoly combined = target;
    for (int c = 0; c < unfolding.components(); ++c)
      for (const auto& [m, v] : unfolding.comp(c).terms()) combined.comp(c).addTerm(m, v);
    const UnfoldingResult unf = realizeUnfolding(base.model, combined, order);
    model = unf.model;
    residual = std::max(base.residual, unf.residual);
    OJson baseJson;
    baseJson["residual"] = base.residual;
    baseJson["conditionNumbers"] = base.conditionNumbers;
    results["base"] = baseJson;
    OJson unfJson;
    unfJson["xi"] = tableFromScalar(unf.xi);
    unfJson["residual"] = unf.residual;
    unfJson["conditionNumbers"] = unf.conditionNumbers;
    results["unfolding"] = unfJson;
    results["achieved"] = tableFromVector(unf.achieved);
  } else {
    const RealizationResult res =
        realize(op, spec, positions, target, order, havePin ? &pin : nullptr);
    model = res.model;
    residual = res.residual;
    results["residual"] = res.residual;
    results["conditionNumbers"] = res.conditionNumbers;
    OJson corr = OJson::array();
    for (const VecD& c : res.corrections) corr.push_back(jsonFromVec(c));
    results["corrections"] = corr;
    results["achieved"] = tableFromVector(res.achieved);
  }

  OJson modelJson;
  modelJson["terms"] = echoTerms(model.linear);
  modelJson["positions"] = model.positions;
  modelJson["nonlinearity"] = tableFromScalar(model.nonlinearity);
  results["model"] = modelJson;

  OJson verification;
  bool pass = true;
  if (checkForward) {
    OJson fwd;
    fwd["residual"] = residual;
    fwd["tolerance"] = tol.at("forward");
    fwd["pass"] = residual <= tol.at("forward");
    pass = pass && residual <= tol.at("forward");
    verification["forward"] = fwd;
  }
  if (checkOracle) {
    if (spec.p != 1 || spec.includesZero || params != 0 || positions.size() != 1)
      fail("oracle check requires a single-Hopf parameter-free scenario with one delay");
    const double a2 = model.nonlinearity.coeff(Monomial({2})).real();
    const double a3 = model.nonlinearity.coeff(Monomial({3})).real();
    const double oracle = hopfCubicCoefficient(op, spec, positions[0], a2, a3);
    const double want = target.comp(0).coeff(Monomial({3})).real();
    OJson orc;
    orc["value"] = oracle;
    orc["target"] = want;
    orc["tolerance"] = tol.at("oracle");
    orc["pass"] = std::abs(oracle - want) <= tol.at("oracle");
    pass = pass && std::abs(oracle - want) <= tol.at("oracle");
    verification["oracle"] = orc;
  }
  if (!simulateMus.empty()) {
    if (params < 1) fail("verify.simulate requires at least one parameter");
    OJson runs = OJson::array();
    for (double muValue : simulateMus) {
      VecD mu = VecD::Zero(params);
      mu(0) = muValue;
      const double tEnd =
          muValue > 0.0 ? std::min(4000.0, std::max(400.0, 16.0 / muValue)) : 400.0;
      const Trajectory traj = integrate(model, mu, 0.05, tEnd);
      const OscillationSummary sum = measureOscillation(traj, 0.7);
      OJson run;
      run["mu"] = muValue;
      run["tEnd"] = tEnd;
      run["diverged"] = traj.diverged;
      run["amplitude"] = sum.amplitude;
      run["frequency"] = sum.frequency;
      run["extrema"] = sum.extrema;
      runs.push_back(run);
    }
    verification["simulate"] = runs;
  }
  report["results"] = results;
  report["verification"] = verification;
  if (!pass) out.exitCode = 1;
}

void handleReduce(const Json& cfg, const CliOptions&, const std::map<std::string, double>& tol,
                  OJson& report, ScenarioResult& out) {
  requireKeys(cfg, {"spectrum", "linear", "positions", "params", "order", "model"}, "config");
  const SpectrumSpec spec = parseSpectrum(require(cfg, "spectrum", "config"));
  OJson linEcho;
  const DelayOperator op = parseLinear(require(cfg, "linear", "config"), spec, linEcho);
  const int order = intOr(cfg, "order", 3, "config");
  const int params = intOr(cfg, "params", 0, "config");
  const std::vector<double> positions =
      asDoubleVector(require(cfg, "positions", "config"), "positions");
  const Json& modelCfg = require(cfg, "model", "config");
  requireKeys(modelCfg, {"nonlinearity"}, "model");
  const VariableSpace dspace =
      VariableSpace::delayed(static_cast<int>(positions.size()), params);
  const ScalarPoly nonlin =
      parseScalar(require(modelCfg, "nonlinearity", "model"), dspace, "model.nonlinearity");

  OJson resolved;
  resolved["spectrum"] = echoSpectrum(spec);
  resolved["linear"] = linEcho;
  resolved["positions"] = positions;
  resolved["params"] = params;
  resolved["order"] = order;
  OJson modelEcho;
  modelEcho["nonlinearity"] = tableFromScalar(nonlin);
  resolved["model"] = modelEcho;
  report["config"] = resolved;

  const DDEModel model{op, spec, positions, nonlin};
  const NormalFormResult nf = reduceToNormalForm(model, order);
  OJson results;
  results["order"] = nf.order;
  results["maxConsistencyResidual"] = nf.maxConsistencyResidual;
  results["radial"] = tableFromVector(nf.radialField);
  results["angular"] = tableFromVector(nf.angularField);
  report["results"] = results;

  OJson verification;
  OJson cons;
  cons["residual"] = nf.maxConsistencyResidual;
  cons["tolerance"] = tol.at("consistency");
  cons["pass"] = nf.maxConsistencyResidual <= tol.at("consistency");
  verification["consistency"] = cons;
  report["verification"] = verification;
  if (nf.maxConsistencyResidual > tol.at("consistency")) out.exitCode = 1;
}

void handleRestrict(const Json& cfg, const CliOptions&, const std::map<std::string, double>& tol,
                    OJson& report, ScenarioResult& out) {
  requireKeys(cfg, {"spectrum", "linear", "position", "ranges"}, "config");
  const SpectrumSpec spec = parseSpectrum(require(cfg, "spectrum", "config"));
  OJson linEcho;
  const DelayOperator op = parseLinear(require(cfg, "linear", "config"), spec, linEcho);
  const double position = asDouble(require(cfg, "position", "config"), "position");
  double b2max = 2.0, b3max = 2.0;
  int grid = 201;
  if (cfg.contains("ranges")) {
    const Json& r = cfg.at("ranges");
    requireKeys(r, {"b2max", "b3max", "grid"}, "ranges");
    b2max = numberOr(r, "b2max", b2max, "ranges");
    b3max = numberOr(r, "b3max", b3max, "ranges");
    grid = intOr(r, "grid", grid, "ranges");
  }
  OJson resolved;
  resolved["spectrum"] = echoSpectrum(spec);
  resolved["linear"] = linEcho;
  resolved["position"] = position;
  OJson rangesEcho;
  rangesEcho["b2max"] = b2max;
  rangesEcho["b3max"] = b3max;
  rangesEcho["grid"] = grid;
  resolved["ranges"] = rangesEcho;
  report["config"] = resolved;

  const OneDelayRestriction res = doubleHopfOneDelayAnalysis(op, spec, position, b2max, b3max, grid);
  OJson results;
  results["quadraticResponse"] = jsonFromVec(res.quadraticResponse);
  results["linearResponse"] = jsonFromVec(res.linearResponse);
  results["structureResidual"] = res.structureResidual;
  results["jacobianRank"] = res.jacobianRank;
  results["targetDimension"] = res.targetDimension;
  results["distinctSignPatterns"] = res.distinctSignPatterns;
  results["requiredSignPatterns"] = res.requiredSignPatterns;
  results["restricted"] = res.restricted;
  results["verdict"] = res.jacobianRank < res.targetDimension
                           ? std::to_string(res.jacobianRank) + " < " +
                                 std::to_string(res.targetDimension) + ", not surjective"
                           : std::to_string(res.jacobianRank) + " >= " +
                                 std::to_string(res.targetDimension) +
                                 ", dimensions admit surjectivity";
  results["dims"] = dimsReport(spec, 3, 1);
  report["results"] = results;

  OJson verification;
  OJson cons;
  cons["residual"] = res.structureResidual;
  cons["tolerance"] = tol.at("consistency");
  cons["pass"] = res.structureResidual <= tol.at("consistency");
  verification["structure"] = cons;
  report["verification"] = verification;
  if (res.structureResidual > tol.at("consistency")) out.exitCode = 1;
}

void handleSimulate(const Json& cfg, const CliOptions& opts, const std::map<std::string, double>&,
                    OJson& report, ScenarioResult& out) {
  requireKeys(cfg, {"spectrum", "linear", "positions", "params", "model", "simulation"},
              "config");
  const SpectrumSpec spec = parseSpectrum(require(cfg, "spectrum", "config"));
  OJson linEcho;
  const DelayOperator op = parseLinear(require(cfg, "linear", "config"), spec, linEcho);
  const int params = intOr(cfg, "params", 0, "config");
  const std::vector<double> positions =
      asDoubleVector(require(cfg, "positions", "config"), "positions");
  const Json& modelCfg = require(cfg, "model", "config");
  requireKeys(modelCfg, {"nonlinearity"}, "model");
  if (!modelCfg.contains("nonlinearity") || modelCfg.at("nonlinearity").empty())
    fail("nothing to simulate: the model has no nonlinearity");
  const VariableSpace dspace =
      VariableSpace::delayed(static_cast<int>(positions.size()), params);
  const ScalarPoly nonlin = parseScalar(modelCfg.at("nonlinearity"), dspace, "model.nonlinearity");
  if (nonlin.isZero()) fail("nothing to simulate: the model has no nonlinearity");

  double history = 0.05, tEnd = 400.0, dt = 0.0, discard = 0.5;
  std::vector<std::vector<double>> mus;
  if (cfg.contains("simulation")) {
    const Json& s = cfg.at("simulation");
    requireKeys(s, {"history", "tEnd", "dt", "discard", "mu"}, "simulation");
    history = numberOr(s, "history", history, "simulation");
    tEnd = numberOr(s, "tEnd", tEnd, "simulation");
    dt = numberOr(s, "dt", dt, "simulation");
    discard = numberOr(s, "discard", discard, "simulation");
    if (s.contains("mu")) {
      if (!s.at("mu").is_array()) fail("simulation.mu must be an array of parameter vectors");
      for (const Json& entry : s.at("mu"))
        mus.push_back(asDoubleVector(entry, "simulation.mu entry"));
    }
  }
  if (mus.empty()) mus.push_back(std::vector<double>(static_cast<std::size_t>(params), 0.0));
  for (const auto& mu : mus)
    if (static_cast<int>(mu.size()) != params)
      fail("each simulation.mu entry must list one value per parameter");

  OJson resolved;
  resolved["spectrum"] = echoSpectrum(spec);
  resolved["linear"] = linEcho;
  resolved["positions"] = positions;
  resolved["params"] = params;
  OJson modelEcho;
  modelEcho["nonlinearity"] = tableFromScalar(nonlin);
  resolved["model"] = modelEcho;
  OJson simEcho;
  simEcho["history"] = history;
  simEcho["tEnd"] = tEnd;
  simEcho["dt"] = dt;
  simEcho["discard"] = discard;
  simEcho["mu"] = mus;
  resolved["simulation"] = simEcho;
  report["config"] = resolved;

  const DDEModel model{op, spec, positions, nonlin};
  const std::size_t n = mus.size();
  std::vector<Trajectory> trajs(n);
  std::vector<OscillationSummary> sums(n);
  // Independent runs; parallel across parameter points.
  const auto work = [&](std::size_t i) {
    VecD mu(params);
    for (int j = 0; j < params; ++j) mu(j) = mus[i][static_cast<std::size_t>(j)];
    trajs[i] = integrate(model, mu, history, tEnd, dt);
    sums[i] = measureOscillation(trajs[i], discard);
  };
  const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = static_cast<std::size_t>(t); i < n; i += threads) work(i);
      });
    for (std::thread& th : pool) th.join();
  }

  OJson runs = OJson::array();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string name = "trajectory_" + std::to_string(i) + ".csv";
    out.artifacts[name] = csvFromTrajectory(trajs[i]);
    OJson run;
    run["mu"] = mus[i];
    run["diverged"] = trajs[i].diverged;
    run["terminalTime"] = trajs[i].times.back();
    run["terminalValue"] = trajs[i].values.back();
    run["amplitude"] = sums[i].amplitude;
    run["frequency"] = sums[i].frequency;
    run["extrema"] = sums[i].extrema;
    run["csv"] = name;
    runs.push_back(run);
  }
  OJson results;
  results["csvColumns"] = "t,z";
  results["runs"] = runs;
  report["results"] = results;
}

}  // namespace

ScenarioResult runScenario(const std::string& subcommand, const nlohmann::json& config,
                           const CliOptions& opts) {
  ScenarioResult out;
  OJson report;
  report["version"] = kToolVersion;
  report["subcommand"] = subcommand;

  try {
    std::map<std::string, double> tol = {
        {"forward", 1e-8}, {"oracle", 1e-8}, {"spectrum", 1e-8}, {"consistency", 1e-8}};
    for (const auto& [name, value] : opts.tolerances) {
      if (!tol.count(name)) fail("unknown tolerance '" + name + "'");
      tol[name] = value;
    }
    OJson optsEcho;
    optsEcho["seed"] = opts.seed;
    optsEcho["threads"] = opts.threads;
    OJson tolEcho;
    for (const auto& [name, value] : tol) tolEcho[name] = value;
    optsEcho["tolerances"] = tolEcho;
    report["options"] = optsEcho;

    if (!config.is_object()) fail("scenario config must be a JSON object");
    if (subcommand == "design")
      handleDesign(config, opts, tol, report, out);
    else if (subcommand == "dims")
      handleDims(config, opts, tol, report, out);
    else if (subcommand == "scan")
      handleScan(config, opts, tol, report, out);
    else if (subcommand == "realize")
      handleRealize(config, opts, tol, report, out);
    else if (subcommand == "reduce")
      handleReduce(config, opts, tol, report, out);
    else if (subcommand == "restrict")
      handleRestrict(config, opts, tol, report, out);
    else if (subcommand == "simulate")
      handleSimulate(config, opts, tol, report, out);
    else
      fail("unknown subcommand '" + subcommand + "'");
  } catch (const ConfigError& e) {
    report["error"] = e.what();
    out.exitCode = 2;
  } catch (const std::exception& e) {
    report["error"] = e.what();
    out.exitCode = 1;
  }
  out.report = std::move(report);
  return out;
}

}  // namespace ddnf
