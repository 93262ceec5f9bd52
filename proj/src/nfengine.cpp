#include "ddnf/nfengine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ddnf {

namespace {

const Complex kI(0.0, 1.0);

// Forcing coefficient of one (x, w, mu)-monomial in the complement-space
// equation: smooth profile plus a jump at theta = 0.
struct QCoeff {
  ExpPoly G;
  Complex jump{0.0, 0.0};
};

using QPoly = std::map<Monomial, QCoeff>;

// The order-by-order reduction.  Variables: center coordinates x, values
// w_i of the complement component at the sampling points, parameters mu.
// The x-equation is a polynomial field over (x, w, mu); the complement
// equation is a QPoly.  Each step removes the current order from both.
class Engine {
 public:
  Engine(const DDEModel& model, int order)
      : model_(model),
        ell_(order),
        cspace_(VariableSpace::center(model.spec.p, model.spec.includesZero,
                                      model.nonlinearity.space().params())),
        xw_(VariableSpace::centerDelayed(model.spec.p, model.spec.includesZero,
                                         static_cast<int>(model.positions.size()),
                                         model.nonlinearity.space().params())),
        kappa_(model.spec.kappa()),
        m_(static_cast<int>(model.positions.size())),
        u_(adjointVector(model.linear, model.spec)) {}

  NormalFormResult run() {
    setup();
    for (int j = 2; j <= ell_; ++j) step(j);
    return finalize();
  }

 private:
  // --- monomial plumbing -------------------------------------------------

  // Degree with the complement values counted twice: they are of order two
  // and higher in (x, mu), so this weighting gives a safe truncation rule.
  int weightedDegree(const Monomial& m) const {
    return m.degree() + m.degreeOfKind(xw_, VarKind::Delayed);
  }

  ScalarPoly truncateWeighted(const ScalarPoly& a) const {
    ScalarPoly out(xw_);
    for (const auto& [m, c] : a.terms()) {
      if (weightedDegree(m) <= ell_) out.addTerm(m, c);
    }
    return out;
  }

  bool wFree(const Monomial& m) const { return m.degreeOfKind(xw_, VarKind::Delayed) == 0; }

  Monomial dropW(const Monomial& m) const {
    std::vector<int> e(static_cast<std::size_t>(cspace_.size()));
    for (int i = 0; i < kappa_; ++i) e[static_cast<std::size_t>(i)] = m.exponent(i);
    for (int k = 0; k < cspace_.params(); ++k)
      e[static_cast<std::size_t>(kappa_ + k)] = m.exponent(kappa_ + m_ + k);
    return Monomial(std::move(e));
  }

  Monomial embedW(const Monomial& m) const {
    std::vector<int> e(static_cast<std::size_t>(xw_.size()), 0);
    for (int i = 0; i < kappa_; ++i) e[static_cast<std::size_t>(i)] = m.exponent(i);
    for (int k = 0; k < cspace_.params(); ++k)
      e[static_cast<std::size_t>(kappa_ + m_ + k)] = m.exponent(kappa_ + k);
    return Monomial(std::move(e));
  }

  ScalarPoly embed(const ScalarPoly& a) const {
    ScalarPoly out(xw_);
    for (const auto& [m, c] : a.terms()) out.addTerm(embedW(m), c);
    return out;
  }

  // Terms of the x-equation at w = 0 and total (x, mu) degree j.
  VectorPoly centerSlice(int j) const {
    VectorPoly out(cspace_, kappa_);
    for (int c = 0; c < kappa_; ++c) {
      for (const auto& [m, coef] : xfield_.comp(c).terms()) {
        if (wFree(m) && m.degree() == j) out.comp(c).addTerm(dropW(m), coef);
      }
    }
    return out;
  }

  // --- the reduction -----------------------------------------------------

  void setup() {
    const MatC E = buildE(model_.spec, model_.positions);
    // v_i = (E x)_i + w_i, parameters map to themselves.
    std::vector<ScalarPoly> repl;
    for (int i = 0; i < m_; ++i) {
      ScalarPoly v(xw_);
      for (int c = 0; c < kappa_; ++c)
        v += E(i, c) * ScalarPoly::variable(xw_, c);
      v += ScalarPoly::variable(xw_, kappa_ + i);
      repl.push_back(v);
    }
    for (int k = 0; k < cspace_.params(); ++k)
      repl.push_back(ScalarPoly::variable(xw_, kappa_ + m_ + k));

    const ScalarPoly Fxw = substitute(model_.nonlinearity, xw_, repl, ell_);

    xfield_ = VectorPoly(xw_, kappa_);
    for (int c = 0; c < kappa_; ++c) xfield_.comp(c) = truncateWeighted(u_(c) * Fxw);

    // The complement forcing of a scalar jump c is c * (profile, 1) with a
    // fixed smooth profile -Phi(theta) Psi(0).
    profile_ = ExpPoly::zero();
    const std::vector<Complex> crit = model_.spec.centerEigenvalues();
    for (int c = 0; c < kappa_; ++c)
      profile_ += ExpPoly::exponential(crit[static_cast<std::size_t>(c)], -u_(c));
    for (const auto& [m, c] : Fxw.terms()) {
      if (weightedDegree(m) > ell_) continue;
      QCoeff qc;
      qc.G = c * profile_;
      qc.jump = c;
      yfield_[m] = std::move(qc);
    }
  }

  void step(int j) {
    // Split the order-j slice of the x-equation into resonant and removable
    // parts; the removable part fixes the center substitution.
    const VectorPoly slice = centerSlice(j);
    const VectorPoly g = projectA(slice);
    const VectorPoly n = slice - g;

    VectorPoly U1(cspace_, kappa_);
    for (int c = 0; c < kappa_; ++c) {
      for (const auto& [m, coef] : n.comp(c).terms()) {
        const Complex ev = homologicalEigenvalue(model_.spec, cspace_, m, c);
        if (std::abs(ev) < 1e-10)
          throw std::runtime_error("reduceToNormalForm: vanishing divisor on a non-resonant term");
        U1.comp(c).addTerm(m, coef / ev);
      }
    }

    // Solve the complement component of order j monomial by monomial.
    std::map<Monomial, ExpPoly> U2;
    for (const auto& [m, qc] : yfield_) {
      if (!wFree(m) || m.degree() != j) continue;
      const Monomial cm = dropW(m);
      const Complex lambda = homologicalEigenvalue(model_.spec, cspace_, cm, -1);
      QSolveReport rep;
      QForcing f;
      f.G = qc.G;
      f.jump = qc.jump;
      const ExpPoly h = solveQGeneral(model_.linear, model_.spec, lambda, f, &rep);
      maxResidual_ = std::max(maxResidual_, rep.consistencyResidual);
      U2.emplace(cm, h);
    }

    // Substitution on (x, w, mu): x_c -> x_c + U1_c, w_i -> w_i + U2(theta_i).
    std::vector<ScalarPoly> repl;
    for (int c = 0; c < kappa_; ++c)
      repl.push_back(ScalarPoly::variable(xw_, c) + embed(U1.comp(c)));
    for (int i = 0; i < m_; ++i) {
      ScalarPoly w = ScalarPoly::variable(xw_, kappa_ + i);
      for (const auto& [cm, h] : U2) {
        const Complex val = h.eval(model_.positions[static_cast<std::size_t>(i)]);
        if (std::abs(val) > ScalarPoly::kDropTol) w.addTerm(embedW(cm), val);
      }
      repl.push_back(w);
    }
    for (int k = 0; k < cspace_.params(); ++k)
      repl.push_back(ScalarPoly::variable(xw_, kappa_ + m_ + k));

    // x-equation: rhs = B U1 + (old field) o subst, then the inverse of
    // (I + D U1) applied as a Neumann series.
    std::vector<ScalarPoly> rhs;
    const std::vector<Complex> crit = model_.spec.centerEigenvalues();
    for (int c = 0; c < kappa_; ++c) {
      ScalarPoly r = substitute(xfield_.comp(c), xw_, repl, ell_);
      r += crit[static_cast<std::size_t>(c)] * embed(U1.comp(c));
      // The linear term rides through the series inversion: its product
      // with D U1 is what cancels the removable part of this order.
      r += crit[static_cast<std::size_t>(c)] * ScalarPoly::variable(xw_, c);
      rhs.push_back(truncateWeighted(r));
    }
    std::vector<std::vector<ScalarPoly>> DU1(
        static_cast<std::size_t>(kappa_),
        std::vector<ScalarPoly>(static_cast<std::size_t>(kappa_), ScalarPoly(xw_)));
    for (int c = 0; c < kappa_; ++c) {
      for (int d = 0; d < kappa_; ++d)
        DU1[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)] =
            embed(derivative(U1.comp(c), d));
    }
    std::vector<ScalarPoly> acc = rhs;
    std::vector<ScalarPoly> cur = rhs;
    for (int it = 0; it < ell_; ++it) {
      std::vector<ScalarPoly> next(static_cast<std::size_t>(kappa_), ScalarPoly(xw_));
      bool any = false;
      for (int c = 0; c < kappa_; ++c) {
        for (int d = 0; d < kappa_; ++d) {
          if (DU1[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)].isZero()) continue;
          next[static_cast<std::size_t>(c)] -=
              multiply(DU1[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)],
                       cur[static_cast<std::size_t>(d)], ell_);
        }
        next[static_cast<std::size_t>(c)] = truncateWeighted(next[static_cast<std::size_t>(c)]);
        if (!next[static_cast<std::size_t>(c)].isZero()) any = true;
        acc[static_cast<std::size_t>(c)] += next[static_cast<std::size_t>(c)];
      }
      cur = std::move(next);
      if (!any) break;
    }
    for (int c = 0; c < kappa_; ++c) {
      acc[static_cast<std::size_t>(c)] -=
          crit[static_cast<std::size_t>(c)] * ScalarPoly::variable(xw_, c);
      xfield_.comp(c) = truncateWeighted(acc[static_cast<std::size_t>(c)]);
    }

    // Complement equation: push the substitution through, cancel the solved
    // order exactly, then subtract D U2 . (x-equation nonlinearity).
    QPoly updated;
    for (const auto& [m, qc] : yfield_) {
      const ScalarPoly pushed =
          substitute(ScalarPoly::term(xw_, m, Complex(1.0, 0.0)), xw_, repl, ell_);
      for (const auto& [m2, c2] : pushed.terms()) {
        if (weightedDegree(m2) > ell_) continue;
        QCoeff& slot = updated[m2];
        ExpPoly add = qc.G;
        add *= c2;
        slot.G += add;
        slot.jump += c2 * qc.jump;
      }
    }
    for (auto it = updated.begin(); it != updated.end();) {
      if (wFree(it->first) && it->first.degree() == j) {
        it = updated.erase(it);
      } else {
        ++it;
      }
    }
    for (const auto& [cm, h] : U2) {
      for (int c = 0; c < kappa_; ++c) {
        const int ec = cm.exponent(c);
        if (ec == 0) continue;
        std::vector<int> de = cm.exponents();
        de[static_cast<std::size_t>(c)] -= 1;
        const Monomial dm = embedW(Monomial(std::move(de)));
        for (const auto& [m2, c2] : xfield_.comp(c).terms()) {
          const Monomial key = dm.times(m2);
          if (weightedDegree(key) > ell_) continue;
          ExpPoly add = h;
          add *= -static_cast<double>(ec) * c2;
          updated[key].G += add;
        }
      }
    }
    // Drop forcing entries that became negligible.
    for (auto it = updated.begin(); it != updated.end();) {
      if (it->second.G.maxAbsCoeff() < ScalarPoly::kDropTol &&
          std::abs(it->second.jump) < ScalarPoly::kDropTol) {
        it = updated.erase(it);
      } else {
        ++it;
      }
    }
    yfield_ = std::move(updated);
  }

  NormalFormResult finalize() const {
    NormalFormResult res;
    res.centerSpace = cspace_;
    res.order = ell_;
    res.maxConsistencyResidual = maxResidual_;
    VectorPoly field(cspace_, kappa_);
    for (int j = 2; j <= ell_; ++j) field += centerSlice(j);
    res.centerField = field;
    res.radialField = projectPi(field, model_.spec, 1e-7);
    res.angularField = angularPart(field, model_.spec, 1e-7);
    return res;
  }

  const DDEModel& model_;
  int ell_;
  VariableSpace cspace_;
  VariableSpace xw_;
  int kappa_;
  int m_;
  VecC u_;
  VectorPoly xfield_;
  QPoly yfield_;
  ExpPoly profile_;
  double maxResidual_ = 0.0;
};

}  // namespace

void validateModel(const DDEModel& model) {
  model.spec.validate();
  const VariableSpace& sp = model.nonlinearity.space();
  const int m = static_cast<int>(model.positions.size());
  if (m < 1) throw std::invalid_argument("validateModel: at least one sampling point required");
  if (sp.numDelayed() != m || sp.size() != m + sp.params())
    throw std::invalid_argument("validateModel: nonlinearity must live over delayed(m, s)");
  for (double pos : model.positions) {
    if (pos < -model.spec.r - 1e-12 || pos > 1e-12)
      throw std::invalid_argument("validateModel: sampling point outside the history interval");
  }
  for (const auto& [mono, coef] : model.nonlinearity.terms()) {
    if (std::abs(coef.imag()) > 1e-12 * std::max(1.0, std::abs(coef)))
      throw std::invalid_argument("validateModel: nonlinearity coefficients must be real");
    const int vdeg = mono.degreeOfKind(sp, VarKind::Delayed);
    const int pdeg = mono.degreeOfKind(sp, VarKind::Param);
    if (vdeg + pdeg < 2)
      throw std::invalid_argument("validateModel: nonlinearity must start at total degree two");
    if (vdeg == 1 && pdeg == 0)
      throw std::invalid_argument(
          "validateModel: terms linear in the state must carry a parameter factor");
    if (vdeg == 0 && !model.spec.includesZero)
      throw std::invalid_argument(
          "validateModel: state-free forcing requires a zero critical root");
  }
}

MatC buildE(const SpectrumSpec& spec, const std::vector<double>& positions) {
  const std::vector<Complex> crit = spec.centerEigenvalues();
  MatC E(static_cast<Index>(positions.size()), static_cast<Index>(crit.size()));
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t c = 0; c < crit.size(); ++c) {
      E(static_cast<Index>(i), static_cast<Index>(c)) = std::exp(crit[c] * positions[i]);
    }
  }
  return E;
}

NormalFormResult reduceToNormalForm(const DDEModel& model, int order) {
  validateModel(model);
  if (order < 2) throw std::invalid_argument("reduceToNormalForm: order must be at least two");
  Engine engine(model, order);
  return engine.run();
}

VecD radialSlice(const NormalFormResult& result, const SpectrumSpec& spec, int grade,
                 RadialTag tag) {
  const int s = result.centerSpace.params();
  const RadialBasis full = enumerateRadialBasis(spec, RadialTag::All, grade, s);
  const VecD coords = radialCoordinates(gradeSlice(result.radialField, grade), full, 1e-7);
  if (tag == RadialTag::All) return coords;
  const RadialBasis sub = enumerateRadialBasis(spec, tag, grade, s);
  VecD out = VecD::Zero(static_cast<Index>(sub.elements.size()));
  for (std::size_t i = 0; i < sub.elements.size(); ++i) {
    for (std::size_t k = 0; k < full.elements.size(); ++k) {
      if (full.elements[k] == sub.elements[i]) {
        out(static_cast<Index>(i)) = coords(static_cast<Index>(k));
        break;
      }
    }
  }
  return out;
}

double hopfCubicCoefficient(const DelayOperator& op, const SpectrumSpec& spec, double position,
                            double A2, double A3) {
  if (spec.p != 1 || spec.includesZero)
    throw std::invalid_argument("hopfCubicCoefficient: single Hopf pair expected");
  const double w = spec.omegas[0];
  const Complex q = std::exp(kI * w * position);
  const Complex u1 = 1.0 / charDerivative(op, kI * w);

  const Complex F20 = 2.0 * A2 * q * q;
  const Complex F11 = 2.0 * A2;
  const Complex F02 = 2.0 * A2 * std::conj(q) * std::conj(q);
  const Complex g20 = u1 * F20;
  const Complex g11 = u1 * F11;
  const Complex g02 = u1 * F02;

  const Complex E1 = F20 / charValue(op, 2.0 * kI * w);
  const Complex E2 = F11 / charValue(op, Complex(0.0, 0.0));
  const Complex W20 = (kI * g20 / w) * q + (kI * std::conj(g02) / (3.0 * w)) * std::conj(q) +
                      E1 * q * q;
  const Complex W11 = (-kI * g11 / w) * q + (kI * std::conj(g11) / w) * std::conj(q) + E2;

  const Complex g21 = 2.0 * u1 * (3.0 * A3 * q + 2.0 * A2 * q * W11 + A2 * std::conj(q) * W20);
  const Complex c1 = (kI / (2.0 * w)) *
                         (g20 * g11 - 2.0 * std::norm(g11) - std::norm(g02) / 3.0) +
                     g21 / 2.0;
  return c1.real();
}

}  // namespace ddnf
