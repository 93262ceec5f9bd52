#pragma once

#include <functional>
#include <map>
#include <vector>

#include "ddnf/types.hpp"
#include "ddnf/variables.hpp"

namespace ddnf {

// Multivariate polynomial with complex coefficients over a fixed
// VariableSpace.  Terms are kept in a map ordered graded-lexicographically,
// which fixes the canonical serialization order.  Coefficients smaller than
// kDropTol in absolute value are pruned on normalization.
class ScalarPoly {
 public:
  static constexpr double kDropTol = 1e-14;

  ScalarPoly() = default;
  explicit ScalarPoly(VariableSpace space) : space_(std::move(space)) {}

  static ScalarPoly zero(const VariableSpace& space) { return ScalarPoly(space); }
  static ScalarPoly constant(const VariableSpace& space, Complex c);
  static ScalarPoly variable(const VariableSpace& space, int var);
  static ScalarPoly term(const VariableSpace& space, const Monomial& m, Complex c);

  const VariableSpace& space() const { return space_; }
  const std::map<Monomial, Complex>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  int termCount() const { return static_cast<int>(terms_.size()); }

  Complex coeff(const Monomial& m) const;
  void setCoeff(const Monomial& m, Complex c);
  void addTerm(const Monomial& m, Complex c);

  // Largest |coefficient|, zero for the empty polynomial.
  double maxAbsCoeff() const;
  int minDegree() const;  // degree of the lowest-grade term, 0 if empty
  int maxDegree() const;

  ScalarPoly& operator+=(const ScalarPoly& o);
  ScalarPoly& operator-=(const ScalarPoly& o);
  ScalarPoly& operator*=(Complex c);

  ScalarPoly conj() const;  // conjugate coefficients only

  Complex evaluate(const VecC& point) const;

  std::string str() const;

 private:
  VariableSpace space_;
  std::map<Monomial, Complex> terms_;
};

ScalarPoly operator+(ScalarPoly a, const ScalarPoly& b);
ScalarPoly operator-(ScalarPoly a, const ScalarPoly& b);
ScalarPoly operator*(Complex c, ScalarPoly a);
ScalarPoly multiply(const ScalarPoly& a, const ScalarPoly& b, int max_degree = -1);
ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b);

// Drops every term of total degree > max_degree (keeps lower grades).
ScalarPoly truncateGrade(const ScalarPoly& a, int max_degree);
// Keeps only terms of total degree exactly `degree`.
ScalarPoly gradeSlice(const ScalarPoly& a, int degree);
// Partial derivative with respect to variable index `var`.
ScalarPoly derivative(const ScalarPoly& a, int var);
// a^k with optional grade truncation.
ScalarPoly power(const ScalarPoly& a, int k, int max_degree = -1);

// Swaps x_j <-> conj(x_j) exponents and conjugates coefficients.  A
// polynomial represents a real-valued function of (x, mu) iff it equals its
// own conjugate swap.
ScalarPoly conjugateSwap(const ScalarPoly& a);
bool isRealValued(const ScalarPoly& a, double tol);

// Substitutes variable i of the source space by the given polynomial over
// the target space (all replacements share one target space).  Used for the
// linear maps v -> x*M^T as well as near-identity changes of variables.
ScalarPoly substitute(const ScalarPoly& a, const VariableSpace& target,
                      const std::vector<ScalarPoly>& replacement, int max_degree = -1);

// Linear substitution v_i -> sum_c M(i,c) * (target variable c), parameters
// mapped identically onto the trailing parameter block of the target space.
// M has one row per non-parameter source variable.
ScalarPoly composeLinear(const ScalarPoly& a, const MatC& M, const VariableSpace& target,
                         int max_degree = -1);

// Vector-valued polynomial; component c is a ScalarPoly over a shared
// domain.  For center fields the components are aligned with the center
// variables of a center-type space (same order).
class VectorPoly {
 public:
  VectorPoly() = default;
  VectorPoly(VariableSpace domain, int ncomp);

  const VariableSpace& space() const { return domain_; }
  int components() const { return static_cast<int>(comp_.size()); }
  ScalarPoly& comp(int c) { return comp_[static_cast<std::size_t>(c)]; }
  const ScalarPoly& comp(int c) const { return comp_[static_cast<std::size_t>(c)]; }

  bool isZero() const;
  double maxAbsCoeff() const;

  VectorPoly& operator+=(const VectorPoly& o);
  VectorPoly& operator-=(const VectorPoly& o);
  VectorPoly& operator*=(Complex c);

  std::string str() const;

 private:
  VariableSpace domain_;
  std::vector<ScalarPoly> comp_;
};

VectorPoly operator+(VectorPoly a, const VectorPoly& b);
VectorPoly operator-(VectorPoly a, const VectorPoly& b);
VectorPoly truncateGrade(const VectorPoly& a, int max_degree);
VectorPoly gradeSlice(const VectorPoly& a, int degree);

// Component-wise reality of a center field: the component attached to
// conj(x_j) must be the conjugate swap of the one attached to x_j, and the
// x0 component must be invariant.
bool isRealField(const VectorPoly& f, double tol);

}  // namespace ddnf
