#include "ddnf/qsolver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ddnf {

namespace {

// Particular solution of p'(theta) - lambda p(theta) = -G(theta), assembled
// term by term.  A term e^{nu theta} q(theta) yields e^{nu theta} w(theta)
// with w' + (nu - lambda) w = -q, solved by back-substitution from the top
// degree; when nu collides with lambda the ansatz gains one theta power
// (with zero constant term, the constant being absorbed by the homogeneous
// mode).
ExpPoly particularSolution(const ExpPoly& G, Complex lambda) {
  ExpPoly p;
  for (const ExpPoly::Term& t : G.terms()) {
    const Complex alpha = t.lambda - lambda;
    const int deg = static_cast<int>(t.coef.size()) - 1;
    if (std::abs(alpha) > kResonanceTol) {
      std::vector<Complex> w(t.coef.size());
      Complex above(0.0, 0.0);
      for (int k = deg; k >= 0; --k) {
        w[static_cast<std::size_t>(k)] =
            (-t.coef[static_cast<std::size_t>(k)] - static_cast<double>(k + 1) * above) / alpha;
        above = w[static_cast<std::size_t>(k)];
      }
      for (int k = 0; k <= deg; ++k) {
        p += ExpPoly::monomial(t.lambda, k, w[static_cast<std::size_t>(k)]);
      }
    } else {
      // w' = -q: one extra theta power, constant term zero.
      for (int k = 0; k <= deg; ++k) {
        p += ExpPoly::monomial(lambda, k + 1,
                               -t.coef[static_cast<std::size_t>(k)] / static_cast<double>(k + 1));
      }
    }
  }
  return p;
}

}  // namespace

ExpPoly solveQGeneral(const DelayOperator& op, const SpectrumSpec& spec, Complex lambda,
                      const QForcing& forcing, QSolveReport* report) {
  // Locate a critical root lambda might coincide with.
  const std::vector<Complex> crit = spec.centerEigenvalues();
  int critIndex = -1;
  for (std::size_t c = 0; c < crit.size(); ++c) {
    if (std::abs(lambda - crit[c]) <= kResonanceTol) {
      critIndex = static_cast<int>(c);
      break;
    }
  }

  const ExpPoly p = particularSolution(forcing.G, lambda);
  const Complex beta = p.derivative().eval(0.0) - op.apply(p);

  QSolveReport rep;
  Complex xi;
  if (critIndex < 0) {
    const Complex delta = charValue(op, lambda);
    if (std::abs(delta) < 1e-12)
      throw std::invalid_argument(
          "solveQGeneral: characteristic value vanishes away from the critical set");
    xi = (forcing.jump - beta) / delta;
  } else {
    rep.resonant = true;
    rep.consistencyResidual = std::abs(forcing.jump - beta);
    const double scale = std::max({1.0, std::abs(forcing.jump), std::abs(beta)});
    if (rep.consistencyResidual > 1e-8 * scale)
      throw std::invalid_argument(
          "solveQGeneral: resonant forcing is inconsistent (residual " +
          std::to_string(rep.consistencyResidual) + ")");
    // Fix the free homogeneous mode by (psi, h) = 0.
    const ExpPoly psi = adjointEigenfunction(op, spec, critIndex);
    const ExpPoly phi = centerEigenfunction(spec, critIndex);
    xi = -bilinearForm(psi, p, op) / bilinearForm(psi, phi, op);
  }
  rep.xi = xi;

  ExpPoly h = p;
  h += ExpPoly::exponential(lambda, xi);
  if (report != nullptr) *report = rep;
  return h;
}

QForcing projectedConstantForcing(const DelayOperator& op, const SpectrumSpec& spec, Complex c) {
  const VecC u = adjointVector(op, spec);
  const std::vector<Complex> crit = spec.centerEigenvalues();
  QForcing f;
  for (std::size_t j = 0; j < crit.size(); ++j) {
    f.G += ExpPoly::exponential(crit[j], -u(static_cast<Index>(j)) * c);
  }
  f.jump = c;
  return f;
}

ExpPoly solveQHomological(const DelayOperator& op, const SpectrumSpec& spec, Complex lambda,
                          Complex c, QSolveReport* report) {
  return solveQGeneral(op, spec, lambda, projectedConstantForcing(op, spec, c), report);
}

}  // namespace ddnf
