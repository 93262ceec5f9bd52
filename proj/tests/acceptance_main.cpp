// Acceptance suite: ten end-to-end checks covering the combinatorial
// structure of the realization operator, dimension bookkeeping, the
// resonance projection algebra, Haar averaging, oracle-verified Hopf
// realizations with simulations, multi-frequency round-trips, unfolding
// solvability, restriction verdicts, and spectrum verification.  Each
// criterion prints one [PASS]/[FAIL] line; the exit code is the number of
// failures.  All tolerances are pinned in this file.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ddnf/ddesim.hpp"
#include "ddnf/nfengine.hpp"
#include "ddnf/realizer.hpp"
#include "ddnf/symmetry.hpp"

namespace {

using namespace ddnf;

// ---------------------------------------------------------------------------
// Shared fixtures: one representative operator per critical-spectrum shape.

DelayOperator hopfOperator() { return DelayOperator{{DelayTerm{-1.0, -M_PI / 2.0}}}; }
SpectrumSpec hopfSpec() { return SpectrumSpec{1, false, {M_PI / 2.0}, 1.0}; }

DelayOperator zeroHopfOperator() {
  return DelayOperator{{DelayTerm{-M_PI / 2.0, -0.5}, DelayTerm{-3.0 * M_PI / 2.0, 0.5}}};
}
SpectrumSpec zeroHopfSpec() { return SpectrumSpec{1, true, {1.0}, 5.0}; }

SpectrumSpec doubleHopfSpec(double r = 4.0) {
  return SpectrumSpec{2, false, {1.0, std::sqrt(2.0)}, r};
}
DelayOperator doubleHopfOperator() {
  return designLinear(doubleHopfSpec(), {-0.3, -1.1, -2.4, -3.7});
}

std::vector<SpectrumSpec> allSpecs() { return {hopfSpec(), zeroHopfSpec(), doubleHopfSpec()}; }

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return std::string(buf);
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// ---------------------------------------------------------------------------
// Criterion 1: with a synthetic all-ones adjoint row and zero phases, the
// assembled response matrix is diagonal and every entry matches the closed
// binomial form computed here from factorials alone.

double factorialOf(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double expectedIdealEntry(const SpectrumSpec& spec, int comp, const Monomial& mono) {
  const int roff = spec.includesZero ? 1 : 0;
  const std::vector<int>& e = mono.exponents();
  auto central = [](int k) { return factorialOf(2 * k) / (factorialOf(k) * factorialOf(k)); };
  if (spec.includesZero && comp == 0) {
    double val = 1.0;  // Re(u_0) with u = all-ones
    for (int j = 0; j < spec.p; ++j) val *= central(e[static_cast<std::size_t>(roff + j)] / 2);
    return val;
  }
  const int c = comp - roff;
  const int kc = (e[static_cast<std::size_t>(roff + c)] - 1) / 2;
  double val = (2.0 * kc + 1.0) / (kc + 1.0);
  for (int j = 0; j < spec.p; ++j) {
    const int k = (j == c) ? kc : e[static_cast<std::size_t>(roff + j)] / 2;
    val *= central(k);
  }
  return val;
}

Outcome criterionIdealDiagonal() {
  Outcome out;
  double maxDev = 0.0;
  int matrices = 0;
  for (const SpectrumSpec& spec : allSpecs()) {
    const VecC u = VecC::Ones(spec.kappa());
    const std::vector<double> sigma(static_cast<std::size_t>(spec.p), 0.0);
    for (int s = 0; s <= 1; ++s) {
      for (int grade = 2; grade <= 5; ++grade) {
        const RadialBasis basis = enumerateRadialBasis(spec, RadialTag::All, grade, s);
        if (basis.elements.empty()) continue;
        const MatD M = idealRealizationMatrix(spec, grade, s, u, sigma);
        ++matrices;
        for (Index i = 0; i < M.rows(); ++i) {
          for (Index j = 0; j < M.cols(); ++j) {
            const double want =
                (i == j) ? expectedIdealEntry(spec, basis.elements[static_cast<std::size_t>(i)].first,
                                              basis.elements[static_cast<std::size_t>(i)].second)
                         : 0.0;
            maxDev = std::max(maxDev, std::abs(M(i, j) - want));
          }
        }
      }
    }
  }
  out.pass = maxDev <= 1e-12;
  out.detail = fmt("%d matrices, max deviation %.2e from factorial form", matrices, maxDev);
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 2: the pattern source and the radial target have equal dimension
// grade by grade, the two worked examples give 2 and 4, and the closed-form
// count of source monomials matches enumeration.

Outcome criterionDimensions() {
  Outcome out;
  for (const SpectrumSpec& spec : allSpecs()) {
    for (int s = 0; s <= 1 && out.pass; ++s) {
      for (int j = 2; j <= 6; ++j) {
        const std::size_t vhat = enumerateBasis(spec, BasisTag::Vhat, j, s).elements.size();
        const std::size_t radial = enumerateRadialBasis(spec, RadialTag::All, j, s).elements.size();
        if (vhat != radial) {
          out.pass = false;
          out.detail = fmt("pattern/radial mismatch %zu != %zu at p=%d grade=%d s=%d", vhat,
                           radial, spec.p, j, s);
          break;
        }
      }
    }
  }
  if (!out.pass) return out;
  const DimsReport hopf = dims(hopfSpec(), 1, 3, 0);
  const DimsReport dh = dims(doubleHopfSpec(), 2, 3, 0);
  if (hopf.fullTotal != 2 || dh.radialMuFreeTotal != 4) {
    out.pass = false;
    out.detail = fmt("worked examples: source total %d (want 2), radial total %d (want 4)",
                     hopf.fullTotal, dh.radialMuFreeTotal);
    return out;
  }
  for (int m = 1; m <= 3 && out.pass; ++m) {
    for (int ell = 2; ell <= 6; ++ell) {
      const DimsReport rep = dims(hopfSpec(), m, ell, 0);
      if (rep.fullTotalClosedForm != rep.fullTotal) {
        out.pass = false;
        out.detail = fmt("closed form %lld != enumerated %d at m=%d ell=%d",
                         rep.fullTotalClosedForm, rep.fullTotal, m, ell);
        break;
      }
    }
  }
  if (out.pass)
    out.detail = "pattern dims equal radial dims (grades 2..6), examples 2 and 4, closed form exact";
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 3: materialize the resonance projector A and the homological
// operator L on each full grade slice; A is idempotent, annihilates the range
// of L, and their ranks split the slice exactly.

std::vector<std::pair<int, Monomial>> gradeSliceBasis(const VariableSpace& space, int comps,
                                                      int grade) {
  std::vector<std::pair<int, Monomial>> basis;
  std::vector<int> e(static_cast<std::size_t>(space.size()), 0);
  for (int c = 0; c < comps; ++c) {
    std::function<void(int, int)> rec = [&](int idx, int left) {
      if (idx == space.size() - 1) {
        e[static_cast<std::size_t>(idx)] = left;
        basis.emplace_back(c, Monomial(e));
        return;
      }
      for (int k = 0; k <= left; ++k) {
        e[static_cast<std::size_t>(idx)] = k;
        rec(idx + 1, left - k);
      }
    };
    rec(0, grade);
  }
  return basis;
}

int svdRank(const MatC& m, double tol) {
  const Eigen::BDCSVD<MatC> svd(m);
  int rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++rank;
  return rank;
}

Outcome criterionProjectionAlgebra() {
  Outcome out;
  double maxIdem = 0.0;
  double maxAnnih = 0.0;
  int slices = 0;
  for (const SpectrumSpec& spec : allSpecs()) {
    const int comps = spec.kappa();
    for (int s = 0; s <= 1; ++s) {
      const VariableSpace space = VariableSpace::center(spec.p, spec.includesZero, s);
      for (int grade = 2; grade <= 5; ++grade) {
        const auto basis = gradeSliceBasis(space, comps, grade);
        const int n = static_cast<int>(basis.size());
        MatC A = MatC::Zero(n, n);
        MatC L = MatC::Zero(n, n);
        for (int j = 0; j < n; ++j) {
          VectorPoly ej(space, comps);
          ej.comp(basis[static_cast<std::size_t>(j)].first)
              .addTerm(basis[static_cast<std::size_t>(j)].second, Complex(1.0, 0.0));
          const VectorPoly aj = projectA(ej);
          const VectorPoly lj = applyHomological(spec, ej);
          for (int i = 0; i < n; ++i) {
            const auto& [ci, mi] = basis[static_cast<std::size_t>(i)];
            A(i, j) = aj.comp(ci).coeff(mi);
            L(i, j) = lj.comp(ci).coeff(mi);
          }
        }
        maxIdem = std::max(maxIdem, (A * A - A).cwiseAbs().maxCoeff());
        maxAnnih = std::max(maxAnnih, (A * L).cwiseAbs().maxCoeff());
        const int rankSum = svdRank(A, 1e-8) + svdRank(L, 1e-8);
        ++slices;
        if (rankSum != n) {
          out.pass = false;
          out.detail = fmt("rank A + rank L = %d != %d at p=%d s=%d grade=%d", rankSum, n,
                           spec.p, s, grade);
          return out;
        }
      }
    }
  }
  out.pass = maxIdem <= 1e-12 && maxAnnih <= 1e-12;
  out.detail = fmt("%d slices: |A^2-A| <= %.1e, |A L| <= %.1e, ranks split every slice", slices,
                   maxIdem, maxAnnih);
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 4: the finite-horizon Haar average of the linear flow converges
// to the resonance projection at rate 1/T (log-log slope -1 +- 0.2 across
// horizons 1e2, 1e3, 1e4, with randomized fields, base points, and horizon
// jitter at two incommensurate frequencies).

Outcome criterionHaarAveraging() {
  Outcome out;
  const SpectrumSpec spec{2, false, {1.3, std::sqrt(2.0)}, 1.0};
  const VariableSpace space = VariableSpace::center(2, false, 0);
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const std::vector<double> horizons = {1e2, 1e3, 1e4};
  std::vector<double> meanErr(horizons.size(), 0.0);
  const int samples = 6;
  for (int sample = 0; sample < samples; ++sample) {
    VectorPoly f(space, 4);
    for (int c = 0; c < 4; ++c) {
      for (int g = 2; g <= 3; ++g) {
        std::vector<int> e(4, 0);
        std::function<void(int, int)> rec = [&](int idx, int left) {
          if (idx == 3) {
            e[3] = left;
            f.comp(c).addTerm(Monomial(e), Complex(U(rng), U(rng)));
            return;
          }
          for (int k = 0; k <= left; ++k) {
            e[static_cast<std::size_t>(idx)] = k;
            rec(idx + 1, left - k);
          }
        };
        rec(0, g);
      }
    }
    VecC x(4);
    x(0) = Complex(0.4 + 0.3 * U(rng), 0.3 * U(rng));
    x(1) = std::conj(x(0));
    x(2) = Complex(0.3 * U(rng), 0.2 + 0.2 * U(rng));
    x(3) = std::conj(x(2));
    const VectorPoly af = projectA(f);
    VecC exact(4);
    for (int c = 0; c < 4; ++c) exact(c) = af.comp(c).evaluate(x);
    for (std::size_t t = 0; t < horizons.size(); ++t) {
      const double T = horizons[t] * (1.0 + 0.25 * (U(rng) + 1.0));
      const VecC avg = timeAverageOfFlow(f, spec, x, T);
      meanErr[t] += (avg - exact).cwiseAbs().maxCoeff() * (T / horizons[t]) / samples;
    }
  }
  double logT = 0.0;
  double logE = 0.0;
  const int n = static_cast<int>(horizons.size());
  for (int t = 0; t < n; ++t) {
    logT += std::log(horizons[static_cast<std::size_t>(t)]) / n;
    logE += std::log(meanErr[static_cast<std::size_t>(t)]) / n;
  }
  double num = 0.0;
  double den = 0.0;
  for (int t = 0; t < n; ++t) {
    const double dt = std::log(horizons[static_cast<std::size_t>(t)]) - logT;
    num += dt * (std::log(meanErr[static_cast<std::size_t>(t)]) - logE);
    den += dt * dt;
  }
  const double slope = num / den;
  out.pass = std::abs(slope + 1.0) <= 0.2;
  out.detail = fmt("log-log slope %.3f over horizons 1e2..1e4 (want -1 +- 0.2)", slope);
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 5: supercritical Hopf end to end.  Realize rho' = -rho^3 with no
// quadratic term, confirm the reduced cubic coefficient, cross-check against
// the classical first-Lyapunov-coefficient formula, then integrate the
// unfolded equation and compare measured amplitudes with sqrt(mu).

struct HopfSim {
  UnfoldingResult unfolded;
};

HopfSim buildUnfoldedHopf(int ell) {
  VectorPoly target(VariableSpace::radial(1, false, 0), 1);
  std::vector<int> lead(1, ell);
  target.comp(0).addTerm(Monomial(lead), -1.0);
  const RealizationResult base = realize(hopfOperator(), hopfSpec(), {-1.0}, target, ell);
  VectorPoly unfolded(VariableSpace::radial(1, false, 1), 1);
  unfolded.comp(0).addTerm(Monomial({ell, 0}), -1.0);
  unfolded.comp(0).addTerm(Monomial({1, 1}), 1.0);
  return HopfSim{realizeUnfolding(base.model, unfolded, ell)};
}

double simulatedAmplitude(const DDEModel& model, double mu, double history, double tEnd,
                          double discard) {
  VecD m(1);
  m(0) = mu;
  const Trajectory traj = integrate(model, m, history, tEnd);
  if (traj.diverged) return -1.0;
  return measureOscillation(traj, discard).amplitude;
}

Outcome criterionHopfEndToEnd() {
  Outcome out;
  VectorPoly target(VariableSpace::radial(1, false, 0), 1);
  target.comp(0).addTerm(Monomial({3}), -1.0);
  const RealizationResult base = realize(hopfOperator(), hopfSpec(), {-1.0}, target, 3);
  const double forward = base.achieved.comp(0).coeff(Monomial({3})).real();
  if (std::abs(forward + 1.0) > 1e-10 || base.residual > 1e-10) {
    out.pass = false;
    out.detail = fmt("forward cubic %.12f (want -1 +- 1e-10), residual %.2e", forward,
                     base.residual);
    return out;
  }
  const double a3 = base.model.nonlinearity.coeff(Monomial({3})).real();
  const double oracle = hopfCubicCoefficient(hopfOperator(), hopfSpec(), -1.0, 0.0, a3);
  if (std::abs(oracle + 1.0) > 1e-8) {
    out.pass = false;
    out.detail = fmt("first-Lyapunov oracle %.10f (want -1 +- 1e-8)", oracle);
    return out;
  }
  const HopfSim sim = buildUnfoldedHopf(3);
  const std::vector<double> mus = {2.5e-3, 5e-3, 1e-2};
  const std::vector<double> tEnds = {2400.0, 1600.0, 1200.0};
  std::vector<double> ratio;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double amp = simulatedAmplitude(sim.unfolded.model, mus[i], 0.05, tEnds[i], 0.7);
    // The scalar signal oscillates as 2 rho cos(omega t + phi), so half the
    // measured peak is the radial amplitude sqrt(mu).
    ratio.push_back(0.5 * amp / std::sqrt(mus[i]));
  }
  const double ampError = std::abs(ratio.back() - 1.0);
  double lo = ratio[0];
  double hi = ratio[0];
  for (double r : ratio) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  out.pass = ampError <= 0.15 && lo > 0.0 && hi / lo <= 1.15;
  out.detail = fmt(
      "forward -1, oracle %.6f; amplitude at mu=0.01 within %.1f%%, sqrt(mu) ratios spread %.1f%%",
      oracle, 100.0 * ampError, 100.0 * (hi / lo - 1.0));
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 6: pin a nonzero quadratic coefficient and let the correction
// path absorb its cubic echo; the reduced cubic coefficient and the oracle
// must still give -1.

Outcome criterionPinnedQuadratic() {
  Outcome out;
  VectorPoly target(VariableSpace::radial(1, false, 0), 1);
  target.comp(0).addTerm(Monomial({3}), -1.0);
  ScalarPoly pin(VariableSpace::delayed(1, 0));
  pin.addTerm(Monomial({2}), 1.0);
  const RealizationResult res = realize(hopfOperator(), hopfSpec(), {-1.0}, target, 3, &pin);
  const double forward = res.achieved.comp(0).coeff(Monomial({3})).real();
  const double a2 = res.model.nonlinearity.coeff(Monomial({2})).real();
  const double a3 = res.model.nonlinearity.coeff(Monomial({3})).real();
  const double oracle = hopfCubicCoefficient(hopfOperator(), hopfSpec(), -1.0, a2, a3);
  out.pass = std::abs(forward + 1.0) <= 1e-8 && std::abs(a2 - 1.0) <= 1e-12 &&
             std::abs(oracle + 1.0) <= 1e-8;
  out.detail = fmt("pinned quadratic 1.0 kept, forward cubic %.10f, oracle %.10f", forward,
                   oracle);
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 7: two delays at a double-Hopf point reach every cubic radial
// target; 20 random targets round-trip at the scanned positions and the scan
// itself reports a high well-conditioned fraction.

Outcome criterionDoubleHopfRoundTrip() {
  Outcome out;
  const DelayOperator op = doubleHopfOperator();
  const SpectrumSpec spec = doubleHopfSpec();
  const TauScanResult scan = scanPositions(op, spec, 3, 0, 1000, 2024, 2);
  if (scan.viableFraction <= 0.95) {
    out.pass = false;
    out.detail = fmt("scan viable fraction %.3f (want > 0.95)", scan.viableFraction);
    return out;
  }
  std::mt19937_64 rng(7777);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    VectorPoly target(VariableSpace::radial(2, false, 0), 2);
    target.comp(0).addTerm(Monomial({3, 0}), U(rng));
    target.comp(0).addTerm(Monomial({1, 2}), U(rng));
    target.comp(1).addTerm(Monomial({2, 1}), U(rng));
    target.comp(1).addTerm(Monomial({0, 3}), U(rng));
    const RealizationResult res = realize(op, spec, scan.best, target, 3);
    worst = std::max(worst, res.residual);
    for (int c = 0; c < 2; ++c) {
      const ScalarPoly diff = res.achieved.comp(c) - target.comp(c);
      worst = std::max(worst, diff.maxAbsCoeff());
    }
  }
  out.pass = worst <= 1e-8;
  out.detail = fmt("20 random cubic targets round-trip within %.2e, scan fraction %.3f", worst,
                   scan.viableFraction);
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 8: steady-state/Hopf interaction with two delays: arbitrary
// quadratic targets solve exactly, and the two-parameter unfolding
// (mu_1 rho_0, mu_2 rho_1) is realized through an invertible parameter block.

Outcome criterionZeroHopfQuadratics() {
  Outcome out;
  const DelayOperator op = zeroHopfOperator();
  const SpectrumSpec spec = zeroHopfSpec();
  const std::vector<double> positions = {0.0, -M_PI};
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  double worst = 0.0;
  RealizationResult last;
  for (int trial = 0; trial < 5; ++trial) {
    VectorPoly target(VariableSpace::radial(1, true, 0), 2);
    target.comp(0).addTerm(Monomial({2, 0}), U(rng));
    target.comp(0).addTerm(Monomial({0, 2}), U(rng));
    target.comp(1).addTerm(Monomial({1, 1}), U(rng));
    last = realize(op, spec, positions, target, 2);
    worst = std::max(worst, last.residual);
    for (int c = 0; c < 2; ++c)
      worst = std::max(worst, (last.achieved.comp(c) - target.comp(c)).maxAbsCoeff());
  }
  if (worst > 1e-10) {
    out.pass = false;
    out.detail = fmt("quadratic targets missed by %.2e (want <= 1e-10)", worst);
    return out;
  }
  VectorPoly unfolded(VariableSpace::radial(1, true, 2), 2);
  for (const auto& [mono, c] : last.achieved.comp(0).terms())
    unfolded.comp(0).addTerm(Monomial({mono.exponent(0), mono.exponent(1), 0, 0}), c);
  for (const auto& [mono, c] : last.achieved.comp(1).terms())
    unfolded.comp(1).addTerm(Monomial({mono.exponent(0), mono.exponent(1), 0, 0}), c);
  unfolded.comp(0).addTerm(Monomial({1, 0, 1, 0}), 1.0);  // mu_1 rho_0
  unfolded.comp(1).addTerm(Monomial({0, 1, 0, 1}), 1.0);  // mu_2 rho_1
  const UnfoldingResult unf = realizeUnfolding(last.model, unfolded, 2);
  MatD paramBlock(2, 2);
  paramBlock << unf.xi.coeff(Monomial({1, 0, 1, 0})).real(),
      unf.xi.coeff(Monomial({0, 1, 1, 0})).real(), unf.xi.coeff(Monomial({1, 0, 0, 1})).real(),
      unf.xi.coeff(Monomial({0, 1, 0, 1})).real();
  const double det = paramBlock.determinant();
  out.pass = unf.residual <= 1e-10 && std::abs(det) > 1e-6;
  out.detail = fmt("5 quadratic targets exact (%.1e), unfolding residual %.1e, parameter block "
                   "det %.3f",
                   worst, unf.residual, det);
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 9: restriction and degeneracy.  A single delay at a double-Hopf
// point only reaches a ruled sign-restricted slice of cubic space; a
// degenerate quintic Hopf target realizes exactly and its unfolded equation
// shows the mu^(1/4) amplitude law.

Outcome criterionRestrictionVerdicts() {
  Outcome out;
  const OneDelayRestriction res =
      doubleHopfOneDelayAnalysis(doubleHopfOperator(), doubleHopfSpec(), -1.0, 2.0, 2.0, 201);
  if (!(res.jacobianRank <= 2 && res.jacobianRank < res.targetDimension &&
        res.targetDimension == 4 && res.structureResidual <= 1e-10 &&
        res.distinctSignPatterns < res.requiredSignPatterns && res.restricted)) {
    out.pass = false;
    out.detail = fmt("one-delay reach: rank %d of %d, %d sign patterns (required %d)",
                     res.jacobianRank, res.targetDimension, res.distinctSignPatterns,
                     res.requiredSignPatterns);
    return out;
  }
  VectorPoly target(VariableSpace::radial(1, false, 0), 1);
  target.comp(0).addTerm(Monomial({5}), -1.0);
  const RealizationResult quintic = realize(hopfOperator(), hopfSpec(), {-1.0}, target, 5);
  const double forward = quintic.achieved.comp(0).coeff(Monomial({5})).real();
  if (quintic.residual > 1e-8 || std::abs(forward + 1.0) > 1e-8) {
    out.pass = false;
    out.detail = fmt("quintic round-trip residual %.2e, forward %.10f", quintic.residual,
                     forward);
    return out;
  }
  const HopfSim sim = buildUnfoldedHopf(5);
  const std::vector<double> mus = {2.5e-4, 1e-3, 4e-3};
  const std::vector<double> tEnds = {4000.0, 2000.0, 1000.0};
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double history = 2.0 * std::pow(mus[i], 0.25);
    const double amp = simulatedAmplitude(sim.unfolded.model, mus[i], history, tEnds[i], 0.6);
    const double r = 0.5 * amp / std::pow(mus[i], 0.25);
    lo = (i == 0) ? r : std::min(lo, r);
    hi = (i == 0) ? r : std::max(hi, r);
  }
  out.pass = lo > 0.0 && hi / lo <= 1.2 && std::abs(hi - 1.0) <= 0.2 && std::abs(lo - 1.0) <= 0.2;
  out.detail = fmt("one delay: rank 2 < 4, %d sign patterns < 12 => restricted; quintic "
                   "mu^(1/4) ratios in [%.3f, %.3f]",
                   res.distinctSignPatterns, lo, hi);
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 10: every designed linear part passes argument-principle
// verification: the strip root count equals the prescribed critical set and
// all characteristic derivatives are bounded away from zero.

Outcome criterionSpectrumVerification() {
  Outcome out;
  struct Case {
    const char* name;
    DelayOperator op;
    SpectrumSpec spec;
  };
  const std::vector<Case> cases = {
      {"hopf", hopfOperator(), hopfSpec()},
      {"steady-state/hopf", zeroHopfOperator(), zeroHopfSpec()},
      {"double-hopf", doubleHopfOperator(), doubleHopfSpec()},
  };
  double minDeriv = 1e300;
  for (const Case& c : cases) {
    const SpectrumReport rep = verifySpectrum(c.op, c.spec);
    double caseMin = 1e300;
    for (double d : rep.derivativeMagnitudes) caseMin = std::min(caseMin, d);
    minDeriv = std::min(minDeriv, caseMin);
    if (!rep.pass || rep.stripCount != rep.expectedCount || caseMin <= 1e-6) {
      out.pass = false;
      out.detail = fmt("%s: pass=%d strip count %d (want %d), min |Delta'| %.2e", c.name,
                       rep.pass ? 1 : 0, rep.stripCount, rep.expectedCount, caseMin);
      return out;
    }
  }
  out.detail = fmt("3 operators: strip counts match, min |Delta'| = %.3f > 1e-6", minDeriv);
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* label;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria = {
      {1, "ideal sampling structure is diagonal with binomial entries", criterionIdealDiagonal},
      {2, "pattern and radial dimensions agree with closed forms", criterionDimensions},
      {3, "resonance projector and homological operator split each grade", criterionProjectionAlgebra},
      {4, "Haar averaging converges to the resonance projection at rate 1/T", criterionHaarAveraging},
      {5, "supercritical Hopf realization verified by oracle and simulation", criterionHopfEndToEnd},
      {6, "pinned quadratic is compensated, cubic response preserved", criterionPinnedQuadratic},
      {7, "two-delay double-Hopf cubics round-trip at scanned positions", criterionDoubleHopfRoundTrip},
      {8, "steady-state/Hopf quadratics exact with invertible unfolding block", criterionZeroHopfQuadratics},
      {9, "one-delay double-Hopf restricted; quintic Hopf realizes and scales", criterionRestrictionVerdicts},
      {10, "designed linear parts pass spectrum verification", criterionSpectrumVerification},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = fmt("exception: %s", e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%s; %.1fs)\n", out.pass ? "PASS" : "FAIL", c.id, c.label,
                out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures;
}
