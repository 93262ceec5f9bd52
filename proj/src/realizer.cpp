#include "ddnf/realizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace ddnf {

namespace {

// Exact for the small arguments that occur here (n well below 60).
double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<double>(r);
}

// One column of the first-order response: substitute the center values for
// the sampled ones, scale by the adjoint row, keep the resonant part and
// express its radial projection in `target` coordinates.
VecD responseColumn(const ScalarPoly& element, const MatC& E, const VecC& u,
                    const SpectrumSpec& spec, const RadialBasis& target) {
  const VariableSpace csp =
      VariableSpace::center(spec.p, spec.includesZero, element.space().params());
  const ScalarPoly b = composeLinear(element, E, csp);
  VectorPoly f(csp, spec.kappa());
  for (int c = 0; c < spec.kappa(); ++c) f.comp(c) = u(c) * b;
  return radialCoordinates(projectPi(projectA(f), spec), target);
}

MatD assembleWithE(const MatC& E, const VecC& u, const SpectrumSpec& spec,
                   const RealizationBasis& source, const RadialBasis& target) {
  MatD N(static_cast<Index>(target.elements.size()), static_cast<Index>(source.elements.size()));
  for (std::size_t i = 0; i < source.elements.size(); ++i)
    N.col(static_cast<Index>(i)) = responseColumn(source.elements[i], E, u, spec, target);
  return N;
}

// n-th root of |det N| / prod of row norms: the Hadamard bound makes the
// ratio scale-free in [0, 1], and the root reads it per dimension so one
// threshold serves every grade.
double normalizedDet(const MatD& N) {
  if (N.rows() != N.cols()) return 0.0;
  if (N.rows() == 0) return 1.0;
  double denom = 1.0;
  for (Index r = 0; r < N.rows(); ++r) {
    const double nrm = N.row(r).norm();
    if (!(nrm > 0.0)) return 0.0;
    denom *= nrm;
  }
  const double det = N.determinant();
  if (!std::isfinite(det) || !(denom > 0.0)) return 0.0;
  return std::pow(std::abs(det) / denom, 1.0 / static_cast<double>(N.rows()));
}

double conditionOf(const MatD& N) {
  if (N.rows() == 0 || N.cols() == 0) return 1.0;
  Eigen::JacobiSVD<MatD> svd(N);
  const VecD& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || !std::isfinite(smax)) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

void requireConjugateStructure(const SpectrumSpec& spec, const VecC& u,
                               const std::vector<double>& sigma) {
  spec.validate();
  if (u.size() != spec.kappa())
    throw std::invalid_argument("ideal realization: adjoint row must have kappa entries");
  if (static_cast<int>(sigma.size()) != spec.p)
    throw std::invalid_argument("ideal realization: one phase per Hopf pair is required");
  const int uoff = spec.includesZero ? 1 : 0;
  const double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
  if (spec.includesZero && std::abs(std::imag(u(0))) > 1e-9 * scale)
    throw std::invalid_argument("ideal realization: zero-root adjoint entry must be real");
  for (int j = 0; j < spec.p; ++j) {
    if (std::abs(u(uoff + 2 * j + 1) - std::conj(u(uoff + 2 * j))) > 1e-9 * scale)
      throw std::invalid_argument("ideal realization: adjoint row must be conjugate-symmetric");
  }
}

// Deterministic per-sample tuple: the generator is reseeded from the scan
// seed and the sample index, so the schedule is independent of threading.
std::vector<double> randomTuple(std::uint64_t seed, int index, int d, double r) {
  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1)));
  std::uniform_real_distribution<double> U(-r, 0.0);
  std::vector<double> pos(static_cast<std::size_t>(d));
  for (double& x : pos) x = U(rng);
  return pos;
}

// Terms with at least one parameter factor / the parameter-free rest.
VectorPoly sectorPart(const VectorPoly& f, bool muVanishing) {
  VectorPoly out(f.space(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    for (const auto& [m, a] : f.comp(c).terms()) {
      const bool vanishes = m.degreeOfKind(f.space(), VarKind::Param) >= 1;
      if (vanishes == muVanishing) out.comp(c).addTerm(m, a);
    }
  }
  return out;
}

// Embeds a polynomial over delayed(m, s0) into delayed(m, s) by appending
// zero exponents for the new trailing parameters.
ScalarPoly padParams(const ScalarPoly& a, int s) {
  const int m = a.space().numDelayed();
  const int s0 = a.space().params();
  if (s0 > s) throw std::invalid_argument("padParams: cannot drop parameters");
  const VariableSpace to = VariableSpace::delayed(m, s);
  if (s0 == s) return a;
  ScalarPoly out(to);
  for (const auto& [mono, c] : a.terms()) {
    std::vector<int> e = mono.exponents();
    e.resize(static_cast<std::size_t>(to.size()), 0);
    out.addTerm(Monomial(std::move(e)), c);
  }
  return out;
}

// Every monomial of one grade in the sampled values (no parameters), in
// canonical monomial order.
RealizationBasis fullMonomialBasis(int m, int grade) {
  const VariableSpace dsp = VariableSpace::delayed(m, 0);
  std::vector<Monomial> monos;
  std::vector<int> e(static_cast<std::size_t>(m), 0);
  const std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == m - 1) {
      e[static_cast<std::size_t>(var)] = left;
      monos.emplace_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[static_cast<std::size_t>(var)] = k;
      rec(var + 1, left - k);
    }
  };
  if (m >= 1 && grade >= 0) rec(0, grade);
  std::sort(monos.begin(), monos.end());
  RealizationBasis basis{dsp, {}};
  basis.elements.reserve(monos.size());
  for (const Monomial& mono : monos) basis.elements.push_back(ScalarPoly::term(dsp, mono, 1.0));
  return basis;
}

void checkTargetGrades(const VectorPoly& target, int ell, const char* who) {
  for (int c = 0; c < target.components(); ++c) {
    for (const auto& [m, a] : target.comp(c).terms()) {
      (void)a;
      if (m.degree() < 2 || m.degree() > ell)
        throw std::invalid_argument(std::string(who) + ": target grades must lie in [2, ell]");
    }
  }
}

}  // namespace

MatD assembleOperator(const DelayOperator& op, const SpectrumSpec& spec,
                      const std::vector<double>& positions, const RealizationBasis& source,
                      const RadialBasis& target) {
  spec.validate();
  if (source.space.numDelayed() != static_cast<int>(positions.size()))
    throw std::invalid_argument("assembleOperator: one sampling position per delayed value");
  if (source.space.params() != target.space.params())
    throw std::invalid_argument("assembleOperator: source and target parameter counts differ");
  const MatC E = buildE(spec, positions);
  const VecC u = adjointVector(op, spec);
  return assembleWithE(E, u, spec, source, target);
}

MatD assembleN(const DelayOperator& op, const SpectrumSpec& spec,
               const std::vector<double>& positions, int grade, int s) {
  if (static_cast<int>(positions.size()) != spec.d())
    throw std::invalid_argument("assembleN: one sampling position per radial slot is required");
  return assembleOperator(op, spec, positions, enumerateBasis(spec, BasisTag::Vhat, grade, s),
                          enumerateRadialBasis(spec, RadialTag::All, grade, s));
}

MatD idealRealizationMatrix(const SpectrumSpec& spec, int grade, int s, const VecC& u,
                            const std::vector<double>& sigma) {
  requireConjugateStructure(spec, u, sigma);
  const int uoff = spec.includesZero ? 1 : 0;
  MatC E = MatC::Zero(spec.d(), spec.kappa());
  int row = 0;
  if (spec.includesZero) E(row++, 0) = 1.0;
  for (int j = 0; j < spec.p; ++j) {
    E(row + j, uoff + 2 * j) = std::exp(Complex(0.0, sigma[static_cast<std::size_t>(j)]));
    E(row + j, uoff + 2 * j + 1) = std::exp(Complex(0.0, -sigma[static_cast<std::size_t>(j)]));
  }
  return assembleWithE(E, u, spec, enumerateBasis(spec, BasisTag::V, grade, s),
                       enumerateRadialBasis(spec, RadialTag::All, grade, s));
}

VecD idealDiagonal(const SpectrumSpec& spec, int grade, int s, const VecC& u,
                   const std::vector<double>& sigma) {
  requireConjugateStructure(spec, u, sigma);
  const RadialBasis target = enumerateRadialBasis(spec, RadialTag::All, grade, s);
  const int roff = spec.includesZero ? 1 : 0;
  VecD diag(static_cast<Index>(target.elements.size()));
  for (std::size_t i = 0; i < target.elements.size(); ++i) {
    const auto& [comp, mono] = target.elements[i];
    double entry;
    if (spec.includesZero && comp == 0) {
      entry = std::real(u(0));
      for (int j = 1; j <= spec.p; ++j) {
        const int e = mono.exponent(roff + j - 1);
        entry *= binomial(e, e / 2);
      }
    } else {
      const int c = comp - roff + 1;  // 1-based Hopf pair of this component
      const Complex uc = u(roff + 2 * (c - 1));
      entry = std::real(std::exp(Complex(0.0, sigma[static_cast<std::size_t>(c - 1)])) * uc);
      for (int j = 1; j <= spec.p; ++j) {
        const int e = mono.exponent(roff + j - 1);
        entry *= (j == c) ? binomial(e, (e - 1) / 2) : binomial(e, e / 2);
      }
    }
    diag(static_cast<Index>(i)) = entry;
  }
  return diag;
}

TauScanResult scanPositions(const DelayOperator& op, const SpectrumSpec& spec, int ell, int s,
                            int samples, std::uint64_t seed, int threads, ScanSampler sampler) {
  spec.validate();
  if (ell < 2) throw std::invalid_argument("scanPositions: ell must be at least 2");
  if (samples < 1) throw std::invalid_argument("scanPositions: at least one sample is required");
  const int d = spec.d();
  const VecC u = adjointVector(op, spec);

  struct GradeData {
    RealizationBasis src;
    RadialBasis tgt;
  };
  std::vector<GradeData> grades;
  for (int j = 2; j <= ell; ++j) {
    GradeData g{enumerateBasis(spec, BasisTag::Vhat, j, s),
                enumerateRadialBasis(spec, RadialTag::All, j, s)};
    if (!g.tgt.elements.empty()) grades.push_back(std::move(g));
  }

  std::vector<std::vector<double>> tuples;
  if (sampler == ScanSampler::Random) {
    tuples.resize(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) tuples[static_cast<std::size_t>(i)] = randomTuple(seed, i, d, spec.r);
  } else {
    // Uniform lattice with about the requested number of points.
    const int g = std::max(2, static_cast<int>(std::floor(std::pow(static_cast<double>(samples), 1.0 / d) + 1e-9)));
    long long total = 1;
    for (int k = 0; k < d; ++k) total *= g;
    tuples.resize(static_cast<std::size_t>(total));
    for (long long idx = 0; idx < total; ++idx) {
      std::vector<double> pos(static_cast<std::size_t>(d));
      long long rem = idx;
      for (int k = 0; k < d; ++k) {
        const int digit = static_cast<int>(rem % g);
        rem /= g;
        pos[static_cast<std::size_t>(k)] = -spec.r * (1.0 - static_cast<double>(digit) / (g - 1));
      }
      tuples[static_cast<std::size_t>(idx)] = std::move(pos);
    }
  }
  const int n = static_cast<int>(tuples.size());

  std::vector<double> scores(static_cast<std::size_t>(n), 0.0);
  const auto scoreAt = [&](int i) {
    const MatC E = buildE(spec, tuples[static_cast<std::size_t>(i)]);
    double score = 1.0;
    for (const GradeData& g : grades)
      score = std::min(score, normalizedDet(assembleWithE(E, u, spec, g.src, g.tgt)));
    scores[static_cast<std::size_t>(i)] = score;
  };
  const int nt = std::max(1, std::min(threads, n));
  if (nt == 1) {
    for (int i = 0; i < n; ++i) scoreAt(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
      const int lo = static_cast<int>(static_cast<long long>(n) * t / nt);
      const int hi = static_cast<int>(static_cast<long long>(n) * (t + 1) / nt);
      pool.emplace_back([&, lo, hi] {
        for (int i = lo; i < hi; ++i) scoreAt(i);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  TauScanResult out;
  out.samples = n;
  int bestIdx = 0, viable = 0;
  for (int i = 0; i < n; ++i) {
    if (scores[static_cast<std::size_t>(i)] > scores[static_cast<std::size_t>(bestIdx)]) bestIdx = i;
    if (scores[static_cast<std::size_t>(i)] > kViableScore) ++viable;
  }
  out.best = tuples[static_cast<std::size_t>(bestIdx)];
  out.bestScore = scores[static_cast<std::size_t>(bestIdx)];
  out.viableFraction = static_cast<double>(viable) / n;
  if (!(out.bestScore > 0.0))
    throw std::runtime_error(
        "scanPositions: every sampled tuple is degenerate; enlarge the horizon or adjust the "
        "frequencies");
  return out;
}

RealizationResult realize(const DelayOperator& op, const SpectrumSpec& spec,
                          const std::vector<double>& positions, const VectorPoly& target,
                          int ell, const ScalarPoly* base) {
  spec.validate();
  if (ell < 2) throw std::invalid_argument("realize: ell must be at least 2");
  if (static_cast<int>(positions.size()) != spec.d())
    throw std::invalid_argument("realize: one sampling position per radial slot is required");
  const int s = target.space().params();
  if (!(target.space() == VariableSpace::radial(spec.p, spec.includesZero, s)) ||
      target.components() != spec.d())
    throw std::invalid_argument("realize: target must be a radial field for this spectrum");
  checkTargetGrades(target, ell, "realize");

  DDEModel model{op, spec, positions, ScalarPoly::zero(VariableSpace::delayed(spec.d(), s))};
  if (base != nullptr) {
    if (base->space().numDelayed() != spec.d())
      throw std::invalid_argument("realize: pinned nonlinearity has the wrong delay count");
    model.nonlinearity = padParams(*base, s);
  }
  validateModel(model);

  const MatC E = buildE(spec, positions);
  const VecC u = adjointVector(op, spec);
  RealizationResult out;
  for (int j = 2; j <= ell; ++j) {
    const RealizationBasis src = enumerateBasis(spec, BasisTag::Vhat, j, s);
    const RadialBasis tgt = enumerateRadialBasis(spec, RadialTag::All, j, s);
    const Index n = static_cast<Index>(tgt.elements.size());
    if (n == 0) {
      if (!gradeSlice(target, j).isZero())
        throw std::invalid_argument("realize: target has grade-" + std::to_string(j) +
                                    " terms outside the equivariant catalog");
      out.corrections.emplace_back(VecD::Zero(0));
      out.conditionNumbers.push_back(1.0);
      continue;
    }
    const VecD want = radialCoordinates(gradeSlice(target, j), tgt);
    VecD cur = VecD::Zero(n);
    if (!model.nonlinearity.isZero()) {
      const NormalFormResult red = reduceToNormalForm(model, j);
      cur = radialSlice(red, spec, j);
    }
    const VecD rhs = want - cur;
    const MatD N = assembleWithE(E, u, spec, src, tgt);
    const double cond = conditionOf(N);
    if (!(cond < kMaxRealizeCondition))
      throw std::runtime_error("realize: the grade-" + std::to_string(j) +
                               " operator is numerically singular at these positions; rescan");
    const VecD eta = N.colPivHouseholderQr().solve(rhs);
    const double solveRes = (N * eta - rhs).lpNorm<Eigen::Infinity>();
    if (solveRes > 1e-8 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>()))
      throw std::runtime_error("realize: grade-" + std::to_string(j) +
                               " solve left a residual above tolerance");
    for (Index i = 0; i < eta.size(); ++i)
      model.nonlinearity += eta(i) * src.elements[static_cast<std::size_t>(i)];
    out.corrections.push_back(eta);
    out.conditionNumbers.push_back(cond);
  }

  const NormalFormResult red = reduceToNormalForm(model, ell);
  out.model = std::move(model);
  out.achieved = red.radialField;
  out.residual = (out.achieved - target).maxAbsCoeff();
  if (out.residual > 1e-6 * std::max(1.0, target.maxAbsCoeff()))
    throw std::runtime_error("realize: forward verification missed the target (residual " +
                             std::to_string(out.residual) + ")");
  return out;
}

UnfoldingResult realizeUnfolding(const DDEModel& base, const VectorPoly& unfolded, int ell) {
  validateModel(base);
  const SpectrumSpec& spec = base.spec;
  if (ell < 2) throw std::invalid_argument("realizeUnfolding: ell must be at least 2");
  if (static_cast<int>(base.positions.size()) != spec.d())
    throw std::invalid_argument(
        "realizeUnfolding: one sampling position per radial slot is required");
  const int s = unfolded.space().params();
  if (s < 1) throw std::invalid_argument("realizeUnfolding: the target carries no parameters");
  if (!(unfolded.space() == VariableSpace::radial(spec.p, spec.includesZero, s)) ||
      unfolded.components() != spec.d())
    throw std::invalid_argument("realizeUnfolding: target must be a radial field for this spectrum");
  checkTargetGrades(unfolded, ell, "realizeUnfolding");

  DDEModel model{base.linear, spec, base.positions, padParams(base.nonlinearity, s)};

  // The mu = 0 slice is untouched by any parameter-vanishing addition, so it
  // must already match the base reduction.
  {
    const NormalFormResult red = reduceToNormalForm(model, ell);
    const VectorPoly muFree = sectorPart(unfolded, false);
    const double slack = (sectorPart(red.radialField, false) - muFree).maxAbsCoeff();
    if (slack > 1e-8 * std::max(1.0, muFree.maxAbsCoeff()))
      throw std::invalid_argument(
          "realizeUnfolding: target disagrees with the base radial field at mu = 0");
  }

  const MatC E = buildE(spec, base.positions);
  const VecC u = adjointVector(base.linear, spec);
  UnfoldingResult out;
  out.xi = ScalarPoly::zero(VariableSpace::delayed(spec.d(), s));
  const VectorPoly wanted = sectorPart(unfolded, true);
  for (int j = 2; j <= ell; ++j) {
    const RealizationBasis src = enumerateBasis(spec, BasisTag::What, j, s);
    const RadialBasis tgt = enumerateRadialBasis(spec, RadialTag::MuVanishing, j, s);
    const Index n = static_cast<Index>(tgt.elements.size());
    if (n == 0) {
      if (!gradeSlice(wanted, j).isZero())
        throw std::invalid_argument("realizeUnfolding: target has grade-" + std::to_string(j) +
                                    " terms outside the equivariant catalog");
      out.corrections.emplace_back(VecD::Zero(0));
      out.conditionNumbers.push_back(1.0);
      continue;
    }
    const VecD want = radialCoordinates(gradeSlice(wanted, j), tgt);
    const NormalFormResult red = reduceToNormalForm(model, j);
    const VecD rhs = want - radialSlice(red, spec, j, RadialTag::MuVanishing);
    const MatD N = assembleWithE(E, u, spec, src, tgt);
    const double cond = conditionOf(N);
    if (!(cond < kMaxRealizeCondition))
      throw std::runtime_error("realizeUnfolding: the grade-" + std::to_string(j) +
                               " operator is numerically singular at these positions; rescan");
    const VecD xi = N.colPivHouseholderQr().solve(rhs);
    const double solveRes = (N * xi - rhs).lpNorm<Eigen::Infinity>();
    if (solveRes > 1e-8 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>()))
      throw std::runtime_error("realizeUnfolding: grade-" + std::to_string(j) +
                               " solve left a residual above tolerance");
    for (Index i = 0; i < xi.size(); ++i) {
      model.nonlinearity += xi(i) * src.elements[static_cast<std::size_t>(i)];
      out.xi += xi(i) * src.elements[static_cast<std::size_t>(i)];
    }
    out.corrections.push_back(xi);
    out.conditionNumbers.push_back(cond);
  }

  const NormalFormResult red = reduceToNormalForm(model, ell);
  out.model = std::move(model);
  out.achieved = red.radialField;
  out.residual = (out.achieved - unfolded).maxAbsCoeff();
  if (out.residual > 1e-6 * std::max(1.0, unfolded.maxAbsCoeff()))
    throw std::runtime_error("realizeUnfolding: forward verification missed the target (residual " +
                             std::to_string(out.residual) + ")");
  return out;
}

SubmersionReport submersionJacobian(const DelayOperator& op, const SpectrumSpec& spec,
                                    const std::vector<double>& positions, const ScalarPoly& eta,
                                    int ell, double step) {
  spec.validate();
  if (ell < 2) throw std::invalid_argument("submersionJacobian: ell must be at least 2");
  const int m = static_cast<int>(positions.size());
  if (m < 1) throw std::invalid_argument("submersionJacobian: at least one position is required");
  if (!(eta.space() == VariableSpace::delayed(m, 0)))
    throw std::invalid_argument(
        "submersionJacobian: the base nonlinearity must be parameter-free over the sampled values");
  if (!(step > 0.0)) throw std::invalid_argument("submersionJacobian: step must be positive");

  std::vector<RealizationBasis> srcs;
  std::vector<RadialBasis> tgts;
  int sourceDim = 0, targetDim = 0;
  for (int j = 2; j <= ell; ++j) {
    srcs.push_back(fullMonomialBasis(m, j));
    tgts.push_back(enumerateRadialBasis(spec, RadialTag::All, j, 0));
    sourceDim += static_cast<int>(srcs.back().elements.size());
    targetDim += static_cast<int>(tgts.back().elements.size());
  }

  const auto evalAll = [&](const ScalarPoly& nl) {
    const DDEModel model{op, spec, positions, nl};
    const NormalFormResult red = reduceToNormalForm(model, ell);
    VecD out(targetDim);
    Index at = 0;
    for (int j = 2; j <= ell; ++j) {
      const VecD slice = radialSlice(red, spec, j);
      out.segment(at, slice.size()) = slice;
      at += slice.size();
    }
    return out;
  };

  SubmersionReport rep;
  rep.step = step;
  rep.sourceDim = sourceDim;
  rep.targetDim = targetDim;
  rep.jacobian = MatD(targetDim, sourceDim);
  rep.exactBlocks = MatD::Zero(targetDim, sourceDim);

  const MatC E = buildE(spec, positions);
  const VecC u = adjointVector(op, spec);
  Index col = 0, rowAt = 0;
  for (std::size_t g = 0; g < srcs.size(); ++g) {
    const Index rows = static_cast<Index>(tgts[g].elements.size());
    const Index cols = static_cast<Index>(srcs[g].elements.size());
    if (rows > 0 && cols > 0)
      rep.exactBlocks.block(rowAt, col, rows, cols) = assembleWithE(E, u, spec, srcs[g], tgts[g]);
    for (const ScalarPoly& e : srcs[g].elements) {
      const VecD hi = evalAll(eta + step * e);
      const VecD lo = evalAll(eta - step * e);
      rep.jacobian.col(col++) = (hi - lo) / (2.0 * step);
    }
    rowAt += rows;
  }

  if (targetDim > 0 && sourceDim > 0) {
    Eigen::JacobiSVD<MatD> svd(rep.jacobian);
    const double smax = svd.singularValues()(0);
    if (smax > 0.0) {
      for (Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-8 * smax) ++rep.rank;
    }
  }
  rep.submersion = (rep.rank == rep.targetDim);
  return rep;
}

OneDelayRestriction doubleHopfOneDelayAnalysis(const DelayOperator& op, const SpectrumSpec& spec,
                                               double position, double b2max, double b3max,
                                               int gridN) {
  spec.validate();
  if (spec.p != 2 || spec.includesZero)
    throw std::invalid_argument(
        "doubleHopfOneDelayAnalysis: exactly two Hopf pairs and no zero root are required");
  if (gridN < 3) throw std::invalid_argument("doubleHopfOneDelayAnalysis: grid too small");
  if (!(b2max > 0.0) || !(b3max > 0.0))
    throw std::invalid_argument("doubleHopfOneDelayAnalysis: coefficient ranges must be positive");

  const VariableSpace dsp = VariableSpace::delayed(1, 0);
  const ScalarPoly v = ScalarPoly::variable(dsp, 0);
  const ScalarPoly v2 = v * v;
  const ScalarPoly v3 = v2 * v;
  const auto cubicCoefficients = [&](double b2, double b3) {
    const DDEModel model{op, spec, {position}, Complex(b2) * v2 + Complex(b3) * v3};
    const NormalFormResult red = reduceToNormalForm(model, 3);
    return radialSlice(red, spec, 3);
  };

  OneDelayRestriction out;
  out.quadraticResponse = cubicCoefficients(1.0, 0.0);
  out.linearResponse = cubicCoefficients(0.0, 1.0);
  out.targetDimension = static_cast<int>(out.quadraticResponse.size());

  // The reach is ruled: quadratic in b2, linear in b3, no mixed term.
  const VecD probe = cubicCoefficients(2.0, 3.0);
  out.structureResidual =
      (probe - 4.0 * out.quadraticResponse - 3.0 * out.linearResponse).lpNorm<Eigen::Infinity>();

  MatD tangent(out.quadraticResponse.size(), 2);
  tangent.col(0) = out.quadraticResponse;
  tangent.col(1) = out.linearResponse;
  Eigen::JacobiSVD<MatD> svd(tangent);
  const double smax = svd.singularValues()(0);
  if (smax > 0.0) {
    for (Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-8 * smax) ++out.jacobianRank;
  }

  std::set<unsigned> codes;
  for (int i = 0; i < gridN; ++i) {
    const double b2 = -b2max + 2.0 * b2max * i / (gridN - 1);
    for (int k = 0; k < gridN; ++k) {
      const double b3 = -b3max + 2.0 * b3max * k / (gridN - 1);
      const VecD a = b2 * b2 * out.quadraticResponse + b3 * out.linearResponse;
      const double scale = std::max(1.0, a.lpNorm<Eigen::Infinity>());
      if (a.cwiseAbs().minCoeff() < 1e-9 * scale) continue;  // on a sign boundary
      unsigned code = 0;
      for (Index q = 0; q < a.size(); ++q)
        if (a(q) > 0.0) code |= (1u << q);
      codes.insert(code);
    }
  }
  out.distinctSignPatterns = static_cast<int>(codes.size());
  out.restricted = out.distinctSignPatterns < out.requiredSignPatterns;
  return out;
}

}  // namespace ddnf
