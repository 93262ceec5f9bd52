#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddnf/types.hpp"

namespace ddnf {

// Role of a single polynomial variable.  Center variables carry a torus
// weight and a linear eigenvalue; all other kinds are neutral under both.
enum class VarKind : std::uint8_t {
  Zero,       // x0, coordinate of a simple zero eigenvalue
  HopfPlus,   // x_j, coordinate of +i*omega_j
  HopfMinus,  // conj(x_j), coordinate of -i*omega_j
  Delayed,    // v_i or w_i, a delayed value of the scalar state
  RadialZero, // rho_0, radial coordinate of the zero-eigenvalue direction
  Radial,     // rho_j, radial coordinate of the j-th Hopf pair
  Param       // mu_k, unfolding parameter
};

struct Variable {
  VarKind kind;
  int index;  // pair index j >= 1, delay index i >= 1, or parameter index k >= 1
};

// Ordered list of variables a polynomial lives over.  Fixed layouts:
//   center:        [x0?, x1, conj(x1), .., xp, conj(xp), mu1..mus]
//   centerDelayed: center variables, then [w1..wm], then parameters
//   delayed:       [v1..vd, mu1..mus]
//   radial:        [rho0?, rho1..rhop, mu1..mus]
class VariableSpace {
 public:
  VariableSpace() = default;

  static VariableSpace center(int p, bool includes_zero, int s);
  static VariableSpace centerDelayed(int p, bool includes_zero, int num_delayed, int s);
  static VariableSpace delayed(int num_delayed, int s);
  static VariableSpace radial(int p, bool includes_zero, int s);

  int size() const { return static_cast<int>(vars_.size()); }
  const Variable& var(int i) const { return vars_[static_cast<std::size_t>(i)]; }
  int p() const { return p_; }
  bool includesZero() const { return includes_zero_; }
  int params() const { return s_; }
  int numDelayed() const { return num_delayed_; }

  // Number of leading center variables (kappa), zero for non-center spaces.
  int centerCount() const;
  // Index of the first parameter variable, or size() if s == 0.
  int paramOffset() const;

  // Torus weight of variable i as a vector in Z^p (+e_j / -e_j / 0).
  std::vector<int> weightOf(int i) const;

  std::string varName(int i) const;
  bool operator==(const VariableSpace& o) const;

 private:
  std::vector<Variable> vars_;
  int p_ = 0;
  bool includes_zero_ = false;
  int s_ = 0;
  int num_delayed_ = 0;
};

// Exponent vector over a fixed VariableSpace.  Ordering is graded
// lexicographic: lower total degree first, then ascending lexicographic
// comparison of the exponent vectors.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);
  static Monomial unit(int nvars);           // the constant monomial 1
  static Monomial single(int nvars, int var, int power = 1);

  int degree() const;
  int exponent(int i) const { return e_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(e_.size()); }
  const std::vector<int>& exponents() const { return e_; }

  Monomial times(const Monomial& o) const;
  // Torus weight of the monomial in Z^p over the given space.
  std::vector<int> weight(const VariableSpace& space) const;
  // Total degree restricted to variables of one kind.
  int degreeOfKind(const VariableSpace& space, VarKind kind) const;

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator<(const Monomial& o) const;

  std::string str(const VariableSpace& space) const;

 private:
  std::vector<int> e_;
};

}  // namespace ddnf
