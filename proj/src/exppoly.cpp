#include "ddnf/exppoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace ddnf {

namespace {

// Trims trailing (near-)zero polynomial coefficients.
void trim(std::vector<Complex>& coef) {
  while (!coef.empty() && std::abs(coef.back()) <= ExpPoly::kDropTol) coef.pop_back();
}

bool lambdaLess(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

ExpPoly ExpPoly::constant(Complex c) { return monomial(Complex(0.0, 0.0), 0, c); }

ExpPoly ExpPoly::exponential(Complex lambda, Complex c) { return monomial(lambda, 0, c); }

ExpPoly ExpPoly::monomial(Complex lambda, int k, Complex c) {
  if (k < 0) throw std::invalid_argument("ExpPoly: negative power");
  ExpPoly p;
  std::vector<Complex> coef(static_cast<std::size_t>(k) + 1, Complex(0.0, 0.0));
  coef.back() = c;
  p.addTerm(lambda, coef);
  p.normalize();
  return p;
}

double ExpPoly::maxAbsCoeff() const {
  double m = 0.0;
  for (const Term& t : terms_) {
    for (Complex c : t.coef) m = std::max(m, std::abs(c));
  }
  return m;
}

Complex ExpPoly::eval(double theta) const {
  Complex acc(0.0, 0.0);
  for (const Term& t : terms_) {
    Complex poly(0.0, 0.0);
    for (std::size_t k = t.coef.size(); k-- > 0;) poly = poly * theta + t.coef[k];
    acc += std::exp(t.lambda * theta) * poly;
  }
  return acc;
}

void ExpPoly::addTerm(Complex lambda, const std::vector<Complex>& coef) {
  for (Term& t : terms_) {
    if (std::abs(t.lambda - lambda) <= kMergeTol) {
      if (t.coef.size() < coef.size()) t.coef.resize(coef.size(), Complex(0.0, 0.0));
      for (std::size_t k = 0; k < coef.size(); ++k) t.coef[k] += coef[k];
      return;
    }
  }
  terms_.push_back({lambda, coef});
}

void ExpPoly::normalize() {
  for (Term& t : terms_) trim(t.coef);
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                              [](const Term& t) { return t.coef.empty(); }),
               terms_.end());
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return lambdaLess(a.lambda, b.lambda); });
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  for (const Term& t : o.terms_) addTerm(t.lambda, t.coef);
  normalize();
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
  for (const Term& t : o.terms_) {
    std::vector<Complex> neg(t.coef);
    for (Complex& c : neg) c = -c;
    addTerm(t.lambda, neg);
  }
  normalize();
  return *this;
}

ExpPoly& ExpPoly::operator*=(Complex c) {
  for (Term& t : terms_) {
    for (Complex& v : t.coef) v *= c;
  }
  normalize();
  return *this;
}

ExpPoly ExpPoly::derivative() const {
  ExpPoly out;
  for (const Term& t : terms_) {
    // d/dtheta [e^{l t} p(t)] = e^{l t} (l p + p').
    std::vector<Complex> coef(t.coef.size() + 1, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < t.coef.size(); ++k) {
      coef[k] += t.lambda * t.coef[k];
      if (k > 0) coef[k - 1] += static_cast<double>(k) * t.coef[k];
    }
    out.addTerm(t.lambda, coef);
  }
  out.normalize();
  return out;
}

ExpPoly ExpPoly::antiderivative() const {
  ExpPoly out;
  for (const Term& t : terms_) {
    if (std::abs(t.lambda) <= kMergeTol) {
      // Plain polynomial: integrate term-wise.
      std::vector<Complex> coef(t.coef.size() + 1, Complex(0.0, 0.0));
      for (std::size_t k = 0; k < t.coef.size(); ++k)
        coef[k + 1] = t.coef[k] / static_cast<double>(k + 1);
      out.addTerm(Complex(0.0, 0.0), coef);
    } else {
      // int theta^k e^{l theta} = e^{l theta} sum_{i<=k} (-1)^{k-i} k!/(i!) theta^i / l^{k-i+1},
      // assembled by integrating the coefficient polynomial by parts.
      std::vector<Complex> coef(t.coef.size(), Complex(0.0, 0.0));
      for (std::size_t k = 0; k < t.coef.size(); ++k) {
        Complex factor = t.coef[k] / t.lambda;
        for (std::size_t i = k + 1; i-- > 0;) {
          coef[i] += factor;
          if (i > 0) factor *= -static_cast<double>(i) / t.lambda;
        }
      }
      out.addTerm(t.lambda, coef);
    }
  }
  out.normalize();
  return out;
}

ExpPoly ExpPoly::shifted(double a) const {
  ExpPoly out;
  for (const Term& t : terms_) {
    // e^{l (theta + a)} p(theta + a): binomial-expand the polynomial part.
    std::vector<Complex> coef(t.coef.size(), Complex(0.0, 0.0));
    for (std::size_t k = 0; k < t.coef.size(); ++k) {
      double binom = 1.0;
      double apow = 1.0;
      for (std::size_t i = 0; i <= k; ++i) {
        coef[k - i] += t.coef[k] * binom * apow;
        binom *= static_cast<double>(k - i) / static_cast<double>(i + 1);
        apow *= a;
      }
    }
    const Complex scale = std::exp(t.lambda * a);
    for (Complex& c : coef) c *= scale;
    out.addTerm(t.lambda, coef);
  }
  out.normalize();
  return out;
}

ExpPoly ExpPoly::conj() const {
  ExpPoly out;
  for (const Term& t : terms_) {
    std::vector<Complex> coef(t.coef);
    for (Complex& c : coef) c = std::conj(c);
    out.addTerm(std::conj(t.lambda), coef);
  }
  out.normalize();
  return out;
}

std::vector<Complex> ExpPoly::coefAt(Complex lambda) const {
  for (const Term& t : terms_) {
    if (std::abs(t.lambda - lambda) <= kMergeTol) return t.coef;
  }
  return {};
}

ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
ExpPoly operator*(Complex c, ExpPoly a) { return a *= c; }

ExpPoly multiply(const ExpPoly& a, const ExpPoly& b) {
  ExpPoly out;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      std::vector<Complex> coef(ta.coef.size() + tb.coef.size() - 1, Complex(0.0, 0.0));
      for (std::size_t i = 0; i < ta.coef.size(); ++i) {
        for (std::size_t j = 0; j < tb.coef.size(); ++j) coef[i + j] += ta.coef[i] * tb.coef[j];
      }
      for (std::size_t k = 0; k < coef.size(); ++k) {
        if (std::abs(coef[k]) > ExpPoly::kDropTol)
          out += ExpPoly::monomial(ta.lambda + tb.lambda, static_cast<int>(k), coef[k]);
      }
    }
  }
  return out;
}

Complex integrate(const ExpPoly& f, double a, double b) {
  ExpPoly F = f.antiderivative();
  return F.eval(b) - F.eval(a);
}

}  // namespace ddnf
