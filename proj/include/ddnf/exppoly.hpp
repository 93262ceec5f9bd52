#pragma once

#include <vector>

#include "ddnf/types.hpp"

namespace ddnf {

// Finite sum  sum_t e^{lambda_t * theta} * poly_t(theta)  with complex
// exponents and complex polynomial coefficients.  The class is closed under
// addition, multiplication, differentiation, antidifferentiation and
// argument shifts, all exact up to roundoff; this is the function algebra
// the infinite-dimensional complement of the center subspace is solved in.
class ExpPoly {
 public:
  struct Term {
    Complex lambda;
    std::vector<Complex> coef;  // coef[k] multiplies theta^k
  };

  // Exponents closer than this are merged into one term.
  static constexpr double kMergeTol = 1e-12;
  static constexpr double kDropTol = 1e-14;

  ExpPoly() = default;

  static ExpPoly zero() { return ExpPoly(); }
  static ExpPoly constant(Complex c);
  // c * e^{lambda * theta}
  static ExpPoly exponential(Complex lambda, Complex c);
  // c * theta^k * e^{lambda * theta}
  static ExpPoly monomial(Complex lambda, int k, Complex c);

  const std::vector<Term>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  double maxAbsCoeff() const;

  Complex eval(double theta) const;

  ExpPoly& operator+=(const ExpPoly& o);
  ExpPoly& operator-=(const ExpPoly& o);
  ExpPoly& operator*=(Complex c);

  ExpPoly derivative() const;
  // Exact antiderivative with no integration constant added; the lambda = 0
  // term integrates to a pure polynomial with zero constant coefficient.
  ExpPoly antiderivative() const;
  // theta -> theta + a
  ExpPoly shifted(double a) const;
  ExpPoly conj() const;  // complex conjugate function: conj(f(theta))

  // Coefficient polynomial attached to exponent lambda (empty if absent).
  std::vector<Complex> coefAt(Complex lambda) const;

 private:
  void addTerm(Complex lambda, const std::vector<Complex>& coef);
  void normalize();
  std::vector<Term> terms_;
};

ExpPoly operator+(ExpPoly a, const ExpPoly& b);
ExpPoly operator-(ExpPoly a, const ExpPoly& b);
ExpPoly operator*(Complex c, ExpPoly a);
ExpPoly multiply(const ExpPoly& a, const ExpPoly& b);

// Definite integral over [a, b] via the exact antiderivative.
Complex integrate(const ExpPoly& f, double a, double b);

}  // namespace ddnf
