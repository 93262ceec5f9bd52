#include <doctest.h>

#include <cmath>

#include "ddnf/exppoly.hpp"

using namespace ddnf;

namespace {
const Complex I(0.0, 1.0);

// Composite-Simpson reference quadrature for cross-checking exact integrals.
Complex simpson(const ExpPoly& f, double a, double b, int n = 4000) {
  Complex acc = f.eval(a) + f.eval(b);
  const double h = (b - a) / n;
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f.eval(a + i * h);
  return acc * (h / 3.0);
}
}  // namespace

TEST_CASE("evaluation of a pure exponential") {
  // 2 e^{i pi/2 theta} at theta = -1 equals -2i.
  ExpPoly f = ExpPoly::exponential(I * (std::acos(-1.0) / 2.0), Complex(2.0, 0.0));
  CHECK(std::abs(f.eval(-1.0) - Complex(0.0, -2.0)) < 1e-14);
  CHECK(std::abs(f.eval(0.0) - Complex(2.0, 0.0)) < 1e-14);
}

TEST_CASE("terms with matching exponents merge") {
  ExpPoly f = ExpPoly::exponential(Complex(1.0, 2.0), Complex(1.0, 0.0));
  f += ExpPoly::exponential(Complex(1.0, 2.0), Complex(2.0, 0.0));
  CHECK(f.terms().size() == 1);
  CHECK(std::abs(f.eval(0.3) - 3.0 * std::exp(Complex(1.0, 2.0) * 0.3)) < 1e-13);
  f -= ExpPoly::exponential(Complex(1.0, 2.0), Complex(3.0, 0.0));
  CHECK(f.isZero());
}

TEST_CASE("derivative and antiderivative invert each other") {
  ExpPoly f = ExpPoly::monomial(Complex(0.5, -1.0), 2, Complex(1.0, 1.0)) +
              ExpPoly::monomial(Complex(0.0, 0.0), 1, Complex(2.0, 0.0)) +
              ExpPoly::exponential(Complex(0.0, 1.3), Complex(0.0, -1.0));
  ExpPoly g = f.antiderivative().derivative();
  for (double th : {-1.0, -0.5, 0.0, 0.25}) CHECK(std::abs(g.eval(th) - f.eval(th)) < 1e-12);
}

TEST_CASE("exact integration matches quadrature") {
  // theta * e^{(1+2i) theta} over [-1, 0], plus a polynomial-only term.
  ExpPoly f = ExpPoly::monomial(Complex(1.0, 2.0), 1, Complex(1.0, 0.0)) +
              ExpPoly::monomial(Complex(0.0, 0.0), 2, Complex(0.5, -0.5));
  const Complex exact = integrate(f, -1.0, 0.0);
  const Complex ref = simpson(f, -1.0, 0.0);
  CHECK(std::abs(exact - ref) < 1e-10);
}

TEST_CASE("argument shift is exact") {
  ExpPoly f = ExpPoly::monomial(Complex(-0.3, 1.7), 2, Complex(1.0, -2.0));
  ExpPoly g = f.shifted(0.8);
  for (double th : {-1.0, -0.2, 0.1}) CHECK(std::abs(g.eval(th) - f.eval(th + 0.8)) < 1e-12);
}

TEST_CASE("products multiply pointwise") {
  ExpPoly a = ExpPoly::monomial(Complex(0.0, 1.0), 1, Complex(1.0, 0.0));
  ExpPoly b = ExpPoly::exponential(Complex(0.0, -1.0), Complex(2.0, 0.0)) +
              ExpPoly::monomial(Complex(0.0, 0.0), 1, Complex(1.0, 0.0));
  ExpPoly ab = multiply(a, b);
  for (double th : {-0.9, -0.4, 0.0}) CHECK(std::abs(ab.eval(th) - a.eval(th) * b.eval(th)) < 1e-12);
}

TEST_CASE("conjugation mirrors the function") {
  ExpPoly f = ExpPoly::monomial(Complex(0.2, 1.1), 1, Complex(1.0, -3.0));
  ExpPoly fc = f.conj();
  for (double th : {-0.7, 0.3}) CHECK(std::abs(fc.eval(th) - std::conj(f.eval(th))) < 1e-12);
}
