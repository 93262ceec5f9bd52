#include "ddnf/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ddnf {

void SpectrumSpec::validate() const {
  if (p < 0) throw std::invalid_argument("SpectrumSpec: p must be nonnegative");
  if (p == 0 && !includesZero) throw std::invalid_argument("SpectrumSpec: empty critical spectrum");
  if (static_cast<int>(omegas.size()) != p)
    throw std::invalid_argument("SpectrumSpec: need exactly p frequencies");
  if (r <= 0.0) throw std::invalid_argument("SpectrumSpec: history length r must be positive");
  for (double w : omegas) {
    if (!(w > 0.0)) throw std::invalid_argument("SpectrumSpec: frequencies must be positive");
  }
  // Bounded integer-relation search: no |n| <= range combination may vanish.
  if (p >= 2) {
    std::vector<int> n(static_cast<std::size_t>(p), -kIndependenceRange);
    while (true) {
      double acc = 0.0;
      bool allzero = true;
      for (int j = 0; j < p; ++j) {
        acc += n[static_cast<std::size_t>(j)] * omegas[static_cast<std::size_t>(j)];
        if (n[static_cast<std::size_t>(j)] != 0) allzero = false;
      }
      if (!allzero && std::abs(acc) <= kIndependenceTol) {
        std::ostringstream os;
        os << "SpectrumSpec: frequencies fail bounded rational-independence check (";
        for (int j = 0; j < p; ++j) os << n[static_cast<std::size_t>(j)] << (j + 1 < p ? "," : ")");
        throw std::invalid_argument(os.str());
      }
      int j = 0;
      while (j < p && n[static_cast<std::size_t>(j)] == kIndependenceRange) {
        n[static_cast<std::size_t>(j)] = -kIndependenceRange;
        ++j;
      }
      if (j == p) break;
      ++n[static_cast<std::size_t>(j)];
    }
  } else if (p == 1) {
    if (omegas[0] <= kIndependenceTol)
      throw std::invalid_argument("SpectrumSpec: frequency too close to zero");
  }
}

std::vector<Complex> SpectrumSpec::centerEigenvalues() const {
  std::vector<Complex> ev;
  if (includesZero) ev.emplace_back(0.0, 0.0);
  for (int j = 0; j < p; ++j) {
    ev.emplace_back(0.0, omegas[static_cast<std::size_t>(j)]);
    ev.emplace_back(0.0, -omegas[static_cast<std::size_t>(j)]);
  }
  return ev;
}

Complex DelayOperator::apply(const ExpPoly& phi) const {
  Complex acc(0.0, 0.0);
  for (const DelayTerm& t : terms) acc += t.b * phi.eval(t.theta);
  return acc;
}

double DelayOperator::apply(const std::vector<double>& values) const {
  if (values.size() != terms.size()) throw std::invalid_argument("DelayOperator: value count mismatch");
  double acc = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) acc += terms[k].b * values[k];
  return acc;
}

Complex charValue(const DelayOperator& op, Complex lambda) {
  Complex acc = lambda;
  for (const DelayTerm& t : op.terms) acc -= t.b * std::exp(lambda * t.theta);
  return acc;
}

Complex charDerivative(const DelayOperator& op, Complex lambda) {
  Complex acc(1.0, 0.0);
  for (const DelayTerm& t : op.terms) acc -= t.b * t.theta * std::exp(lambda * t.theta);
  return acc;
}

DelayOperator designLinear(const SpectrumSpec& spec, const std::vector<double>& positions) {
  spec.validate();
  const int n = static_cast<int>(positions.size());
  if (n == 0) throw std::invalid_argument("designLinear: need at least one delay position");
  for (int i = 0; i < n; ++i) {
    const double th = positions[static_cast<std::size_t>(i)];
    if (th < -spec.r || th > 0.0)
      throw std::invalid_argument("designLinear: delay position outside [-r, 0]");
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(th - positions[static_cast<std::size_t>(j)]) < 1e-12)
        throw std::invalid_argument("designLinear: duplicate delay position");
    }
  }
  // Real equations: per Hopf frequency, Re and Im of sum b_k e^{i w theta_k} = i w;
  // with a zero root additionally sum b_k = 0.
  const int rows = 2 * spec.p + (spec.includesZero ? 1 : 0);
  MatD A(rows, n);
  VecD rhs(rows);
  int row = 0;
  if (spec.includesZero) {
    for (int k = 0; k < n; ++k) A(row, k) = 1.0;
    rhs(row) = 0.0;
    ++row;
  }
  for (int j = 0; j < spec.p; ++j) {
    const double w = spec.omegas[static_cast<std::size_t>(j)];
    for (int k = 0; k < n; ++k) {
      A(row, k) = std::cos(w * positions[static_cast<std::size_t>(k)]);
      A(row + 1, k) = std::sin(w * positions[static_cast<std::size_t>(k)]);
    }
    rhs(row) = 0.0;
    rhs(row + 1) = w;
    row += 2;
  }
  // Rank-deficient systems are accepted as long as they stay consistent
  // (special positions can satisfy several equations at once).
  Eigen::ColPivHouseholderQR<MatD> qr(A);
  VecD b = qr.solve(rhs);
  const double residual = (A * b - rhs).norm();
  if (residual > 1e-9 * std::max(1.0, rhs.norm()))
    throw std::invalid_argument("designLinear: singular or inconsistent design system (residual " +
                                std::to_string(residual) + ")");
  DelayOperator op;
  for (int k = 0; k < n; ++k) op.terms.push_back({positions[static_cast<std::size_t>(k)], b(k)});
  return op;
}

namespace {

// Walks one straight contour segment and accumulates the unwrapped phase
// increment of Delta, bisecting until each step turns by less than pi/2.
double phaseIncrement(const DelayOperator& op, Complex a, Complex b, int depth = 0) {
  const Complex fa = charValue(op, a);
  const Complex fb = charValue(op, b);
  const double ma = std::abs(fa);
  const double mb = std::abs(fb);
  if (ma < 1e-12 || mb < 1e-12)
    throw std::runtime_error("countRootsInRectangle: characteristic root on contour");
  const double dphi = std::arg(fb / fa);  // principal value in (-pi, pi]
  if (std::abs(dphi) < std::numbers::pi / 2.0) return dphi;
  if (depth > 48)
    throw std::runtime_error("countRootsInRectangle: phase tracking failed to converge");
  const Complex mid = 0.5 * (a + b);
  return phaseIncrement(op, a, mid, depth + 1) + phaseIncrement(op, mid, b, depth + 1);
}

double windingOnce(const DelayOperator& op, Complex lo, Complex hi) {
  const Complex c1(lo.real(), lo.imag());
  const Complex c2(hi.real(), lo.imag());
  const Complex c3(hi.real(), hi.imag());
  const Complex c4(lo.real(), hi.imag());
  const Complex corners[5] = {c1, c2, c3, c4, c1};
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const Complex a = corners[e];
    const Complex b = corners[e + 1];
    // Initial subdivision fine enough to keep exp(lambda theta) oscillations
    // per step well under a quarter turn.
    double horizon = 1.0;
    for (const DelayTerm& t : op.terms) horizon = std::max(horizon, -t.theta);
    const double len = std::abs(b - a);
    const int steps = std::max(16, static_cast<int>(len * (horizon + 1.0) * 8.0));
    for (int i = 0; i < steps; ++i) {
      const Complex s = a + (b - a) * (static_cast<double>(i) / steps);
      const Complex t2 = a + (b - a) * (static_cast<double>(i + 1) / steps);
      total += phaseIncrement(op, s, t2);
    }
  }
  return total / (2.0 * std::numbers::pi);
}

}  // namespace

int countRootsInRectangle(const DelayOperator& op, Complex lo, Complex hi) {
  if (!(lo.real() < hi.real() && lo.imag() < hi.imag()))
    throw std::invalid_argument("countRootsInRectangle: corners must satisfy lo < hi componentwise");
  const double jitter_scale = 1e-7 * std::max({1.0, std::abs(lo), std::abs(hi)});
  for (int attempt = 0; attempt < 4; ++attempt) {
    const double j = attempt * jitter_scale;
    try {
      const double w = windingOnce(op, lo - Complex(j, j), hi + Complex(j, j));
      const int n = static_cast<int>(std::lround(w));
      if (std::abs(w - n) > 0.1)
        throw std::runtime_error("countRootsInRectangle: winding residual " + std::to_string(std::abs(w - n)));
      return n;
    } catch (const std::runtime_error&) {
      if (attempt == 3) throw;
    }
  }
  return 0;  // unreachable
}

SpectrumReport verifySpectrum(const DelayOperator& op, const SpectrumSpec& spec, double tol,
                              double strip_half_width) {
  spec.validate();
  SpectrumReport rep;
  rep.expectedCount = spec.kappa();
  double wmax = 0.0;
  bool roots_ok = true;
  for (Complex lam : spec.centerEigenvalues()) {
    const double res = std::abs(charValue(op, lam));
    const double der = std::abs(charDerivative(op, lam));
    rep.rootResiduals.push_back(res);
    rep.derivativeMagnitudes.push_back(der);
    wmax = std::max(wmax, std::abs(lam.imag()));
    if (res > tol) {
      roots_ok = false;
      rep.message += "prescribed root " + std::to_string(lam.imag()) + "i is not a root; ";
    }
    if (der < 1e-6) {
      roots_ok = false;
      rep.message += "prescribed root " + std::to_string(lam.imag()) + "i is not simple; ";
    }
  }
  try {
    rep.stripCount = countRootsInRectangle(
        op, Complex(-strip_half_width, -(wmax + 1.0)), Complex(strip_half_width, wmax + 1.0));
  } catch (const std::exception& e) {
    rep.message += std::string("strip count failed: ") + e.what();
    rep.pass = false;
    return rep;
  }
  if (rep.stripCount != rep.expectedCount) {
    rep.message += "critical strip holds " + std::to_string(rep.stripCount) + " roots, expected " +
                   std::to_string(rep.expectedCount) + "; ";
  }
  rep.pass = roots_ok && rep.stripCount == rep.expectedCount;
  if (rep.pass) rep.message = "ok";
  return rep;
}

VecC adjointVector(const DelayOperator& op, const SpectrumSpec& spec, double tol) {
  const std::vector<Complex> ev = spec.centerEigenvalues();
  VecC u(static_cast<Index>(ev.size()));
  for (std::size_t c = 0; c < ev.size(); ++c) {
    const Complex dp = charDerivative(op, ev[c]);
    if (std::abs(dp) < tol)
      throw std::runtime_error("adjointVector: |Delta'| below tolerance at a critical root (non-simple)");
    u(static_cast<Index>(c)) = Complex(1.0, 0.0) / dp;
  }
  return u;
}

ExpPoly centerEigenfunction(const SpectrumSpec& spec, int c) {
  const std::vector<Complex> ev = spec.centerEigenvalues();
  return ExpPoly::exponential(ev.at(static_cast<std::size_t>(c)), Complex(1.0, 0.0));
}

ExpPoly adjointEigenfunction(const DelayOperator& op, const SpectrumSpec& spec, int c) {
  const std::vector<Complex> ev = spec.centerEigenvalues();
  const Complex lam = ev.at(static_cast<std::size_t>(c));
  const Complex u = Complex(1.0, 0.0) / charDerivative(op, lam);
  return ExpPoly::exponential(-lam, u);
}

Complex bilinearForm(const ExpPoly& psi, const ExpPoly& phi, const DelayOperator& op) {
  Complex acc = psi.eval(0.0) * phi.eval(0.0);
  for (const DelayTerm& t : op.terms) {
    // int_0^{theta_k} psi(zeta - theta_k) phi(zeta) dzeta
    const ExpPoly prod = multiply(psi.shifted(-t.theta), phi);
    acc -= t.b * integrate(prod, 0.0, t.theta);
  }
  return acc;
}

}  // namespace ddnf
