#include "ddnf/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace ddnf {

ScalarPoly ScalarPoly::constant(const VariableSpace& space, Complex c) {
  ScalarPoly p(space);
  p.addTerm(Monomial::unit(space.size()), c);
  return p;
}

ScalarPoly ScalarPoly::variable(const VariableSpace& space, int var) {
  ScalarPoly p(space);
  p.addTerm(Monomial::single(space.size(), var), Complex(1.0, 0.0));
  return p;
}

ScalarPoly ScalarPoly::term(const VariableSpace& space, const Monomial& m, Complex c) {
  ScalarPoly p(space);
  p.addTerm(m, c);
  return p;
}

Complex ScalarPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

void ScalarPoly::setCoeff(const Monomial& m, Complex c) {
  if (m.size() != space_.size()) throw std::invalid_argument("ScalarPoly: monomial size mismatch");
  if (std::abs(c) <= kDropTol) {
    terms_.erase(m);
  } else {
    terms_[m] = c;
  }
}

void ScalarPoly::addTerm(const Monomial& m, Complex c) {
  if (m.size() != space_.size()) throw std::invalid_argument("ScalarPoly: monomial size mismatch");
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) <= kDropTol) terms_.erase(it);
}

double ScalarPoly::maxAbsCoeff() const {
  double m = 0.0;
  for (const auto& [mono, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

int ScalarPoly::minDegree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

int ScalarPoly::maxDegree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

ScalarPoly& ScalarPoly::operator+=(const ScalarPoly& o) {
  if (!(space_ == o.space_)) {
    if (terms_.empty() && space_.size() == 0) {
      space_ = o.space_;
    } else if (!(space_ == o.space_)) {
      throw std::invalid_argument("ScalarPoly: space mismatch in addition");
    }
  }
  for (const auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

ScalarPoly& ScalarPoly::operator-=(const ScalarPoly& o) {
  if (!(space_ == o.space_)) {
    if (terms_.empty() && space_.size() == 0) {
      space_ = o.space_;
    } else if (!(space_ == o.space_)) {
      throw std::invalid_argument("ScalarPoly: space mismatch in subtraction");
    }
  }
  for (const auto& [m, c] : o.terms_) addTerm(m, -c);
  return *this;
}

ScalarPoly& ScalarPoly::operator*=(Complex c) {
  if (std::abs(c) <= kDropTol) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

ScalarPoly ScalarPoly::conj() const {
  ScalarPoly out(space_);
  for (const auto& [m, c] : terms_) out.addTerm(m, std::conj(c));
  return out;
}

Complex ScalarPoly::evaluate(const VecC& point) const {
  if (point.size() != space_.size()) throw std::invalid_argument("ScalarPoly: evaluation point size mismatch");
  Complex acc(0.0, 0.0);
  for (const auto& [m, c] : terms_) {
    Complex t = c;
    for (int i = 0; i < m.size(); ++i) {
      for (int k = 0; k < m.exponent(i); ++k) t *= point(i);
    }
    acc += t;
  }
  return acc;
}

std::string ScalarPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() >= 0 ? "+" : "") << c.imag() << "i)*" << m.str(space_);
  }
  return os.str();
}

ScalarPoly operator+(ScalarPoly a, const ScalarPoly& b) { return a += b; }
ScalarPoly operator-(ScalarPoly a, const ScalarPoly& b) { return a -= b; }
ScalarPoly operator*(Complex c, ScalarPoly a) { return a *= c; }

ScalarPoly multiply(const ScalarPoly& a, const ScalarPoly& b, int max_degree) {
  if (!(a.space() == b.space())) throw std::invalid_argument("ScalarPoly: space mismatch in multiply");
  ScalarPoly out(a.space());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if (max_degree >= 0 && ma.degree() + mb.degree() > max_degree) continue;
      out.addTerm(ma.times(mb), ca * cb);
    }
  }
  return out;
}

ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) { return multiply(a, b); }

ScalarPoly truncateGrade(const ScalarPoly& a, int max_degree) {
  ScalarPoly out(a.space());
  for (const auto& [m, c] : a.terms()) {
    if (m.degree() <= max_degree) out.addTerm(m, c);
  }
  return out;
}

ScalarPoly gradeSlice(const ScalarPoly& a, int degree) {
  ScalarPoly out(a.space());
  for (const auto& [m, c] : a.terms()) {
    if (m.degree() == degree) out.addTerm(m, c);
  }
  return out;
}

ScalarPoly derivative(const ScalarPoly& a, int var) {
  ScalarPoly out(a.space());
  for (const auto& [m, c] : a.terms()) {
    const int k = m.exponent(var);
    if (k == 0) continue;
    std::vector<int> e = m.exponents();
    e[static_cast<std::size_t>(var)] = k - 1;
    out.addTerm(Monomial(std::move(e)), c * static_cast<double>(k));
  }
  return out;
}

ScalarPoly power(const ScalarPoly& a, int k, int max_degree) {
  if (k < 0) throw std::invalid_argument("ScalarPoly: negative power");
  ScalarPoly out = ScalarPoly::constant(a.space(), Complex(1.0, 0.0));
  for (int i = 0; i < k; ++i) out = multiply(out, a, max_degree);
  return out;
}

ScalarPoly conjugateSwap(const ScalarPoly& a) {
  const VariableSpace& sp = a.space();
  // Locate the partner of each variable (x_j <-> conj(x_j), others fixed).
  std::vector<int> partner(static_cast<std::size_t>(sp.size()));
  for (int i = 0; i < sp.size(); ++i) partner[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < sp.size(); ++i) {
    if (sp.var(i).kind == VarKind::HopfPlus) {
      for (int j = 0; j < sp.size(); ++j) {
        if (sp.var(j).kind == VarKind::HopfMinus && sp.var(j).index == sp.var(i).index) {
          partner[static_cast<std::size_t>(i)] = j;
          partner[static_cast<std::size_t>(j)] = i;
        }
      }
    }
  }
  ScalarPoly out(sp);
  for (const auto& [m, c] : a.terms()) {
    std::vector<int> e(static_cast<std::size_t>(sp.size()), 0);
    for (int i = 0; i < sp.size(); ++i) e[static_cast<std::size_t>(partner[static_cast<std::size_t>(i)])] = m.exponent(i);
    out.addTerm(Monomial(std::move(e)), std::conj(c));
  }
  return out;
}

bool isRealValued(const ScalarPoly& a, double tol) {
  ScalarPoly d = a - conjugateSwap(a);
  return d.maxAbsCoeff() <= tol;
}

ScalarPoly substitute(const ScalarPoly& a, const VariableSpace& target,
                      const std::vector<ScalarPoly>& replacement, int max_degree) {
  if (static_cast<int>(replacement.size()) != a.space().size())
    throw std::invalid_argument("substitute: one replacement per source variable required");
  ScalarPoly out(target);
  // Cache powers of each replacement polynomial as they are needed.
  std::vector<std::vector<ScalarPoly>> pow_cache(replacement.size());
  auto powerOf = [&](int var, int k) -> const ScalarPoly& {
    auto& cache = pow_cache[static_cast<std::size_t>(var)];
    if (cache.empty()) cache.push_back(ScalarPoly::constant(target, Complex(1.0, 0.0)));
    while (static_cast<int>(cache.size()) <= k)
      cache.push_back(multiply(cache.back(), replacement[static_cast<std::size_t>(var)], max_degree));
    return cache[static_cast<std::size_t>(k)];
  };
  for (const auto& [m, c] : a.terms()) {
    ScalarPoly t = ScalarPoly::constant(target, c);
    for (int i = 0; i < m.size() && !t.isZero(); ++i) {
      if (m.exponent(i) == 0) continue;
      t = multiply(t, powerOf(i, m.exponent(i)), max_degree);
    }
    out += t;
  }
  return out;
}

ScalarPoly composeLinear(const ScalarPoly& a, const MatC& M, const VariableSpace& target,
                         int max_degree) {
  const VariableSpace& src = a.space();
  const int s = src.params();
  const int nsub = src.size() - s;
  if (M.rows() != nsub)
    throw std::invalid_argument("composeLinear: matrix must have one row per non-parameter variable");
  if (target.params() != s)
    throw std::invalid_argument("composeLinear: parameter counts must agree");
  const int tgt_sub = target.size() - s;
  if (M.cols() != tgt_sub)
    throw std::invalid_argument("composeLinear: matrix column count must match target variables");
  std::vector<ScalarPoly> repl;
  repl.reserve(static_cast<std::size_t>(src.size()));
  for (int i = 0; i < nsub; ++i) {
    ScalarPoly r(target);
    for (int c = 0; c < tgt_sub; ++c) {
      if (std::abs(M(i, c)) > ScalarPoly::kDropTol)
        r.addTerm(Monomial::single(target.size(), c), M(i, c));
    }
    repl.push_back(std::move(r));
  }
  for (int k = 0; k < s; ++k)
    repl.push_back(ScalarPoly::variable(target, target.paramOffset() + k));
  return substitute(a, target, repl, max_degree);
}

VectorPoly::VectorPoly(VariableSpace domain, int ncomp) : domain_(std::move(domain)) {
  comp_.assign(static_cast<std::size_t>(ncomp), ScalarPoly(domain_));
}

bool VectorPoly::isZero() const {
  for (const ScalarPoly& c : comp_) {
    if (!c.isZero()) return false;
  }
  return true;
}

double VectorPoly::maxAbsCoeff() const {
  double m = 0.0;
  for (const ScalarPoly& c : comp_) m = std::max(m, c.maxAbsCoeff());
  return m;
}

VectorPoly& VectorPoly::operator+=(const VectorPoly& o) {
  if (components() != o.components()) throw std::invalid_argument("VectorPoly: component mismatch");
  for (int c = 0; c < components(); ++c) comp_[static_cast<std::size_t>(c)] += o.comp(c);
  return *this;
}

VectorPoly& VectorPoly::operator-=(const VectorPoly& o) {
  if (components() != o.components()) throw std::invalid_argument("VectorPoly: component mismatch");
  for (int c = 0; c < components(); ++c) comp_[static_cast<std::size_t>(c)] -= o.comp(c);
  return *this;
}

VectorPoly& VectorPoly::operator*=(Complex c) {
  for (ScalarPoly& sc : comp_) sc *= c;
  return *this;
}

std::string VectorPoly::str() const {
  std::string out;
  for (int c = 0; c < components(); ++c) {
    out += "[" + std::to_string(c) + "] " + comp_[static_cast<std::size_t>(c)].str() + "\n";
  }
  return out;
}

VectorPoly operator+(VectorPoly a, const VectorPoly& b) { return a += b; }
VectorPoly operator-(VectorPoly a, const VectorPoly& b) { return a -= b; }

VectorPoly truncateGrade(const VectorPoly& a, int max_degree) {
  VectorPoly out(a.space(), a.components());
  for (int c = 0; c < a.components(); ++c) out.comp(c) = truncateGrade(a.comp(c), max_degree);
  return out;
}

VectorPoly gradeSlice(const VectorPoly& a, int degree) {
  VectorPoly out(a.space(), a.components());
  for (int c = 0; c < a.components(); ++c) out.comp(c) = gradeSlice(a.comp(c), degree);
  return out;
}

bool isRealField(const VectorPoly& f, double tol) {
  const VariableSpace& sp = f.space();
  const int kappa = sp.centerCount();
  if (f.components() != kappa) return false;
  for (int c = 0; c < kappa; ++c) {
    const Variable& vc = sp.var(c);
    if (vc.kind == VarKind::Zero) {
      if ((f.comp(c) - conjugateSwap(f.comp(c))).maxAbsCoeff() > tol) return false;
    } else if (vc.kind == VarKind::HopfPlus) {
      // Partner component is the next one by layout: [.., x_j, conj(x_j), ..].
      if ((f.comp(c + 1) - conjugateSwap(f.comp(c))).maxAbsCoeff() > tol) return false;
    }
  }
  return true;
}

}  // namespace ddnf
