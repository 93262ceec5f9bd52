#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ddnf/poly.hpp"
#include "ddnf/spectrum.hpp"

namespace ddnf {

// Subspaces of scalar polynomials in the delayed values (and parameters)
// that realization coefficients are drawn from:
//   Full       every (v, mu) monomial of the grade
//   FullMuFree every v-only monomial of the grade
//   V          conjugate-pair-even elements mu^q v^{2k} v_c (+ even sector
//              with a zero root), the image of the radial basis
//   VMuFree/W  mu-free respectively mu-vanishing parts of V
//   Vhat...    the corresponding spaces pulled back through the K matrix
enum class BasisTag { Full, FullMuFree, V, VMuFree, W, Vhat, VhatMuFree, What };

// Which parameter sector of the radial target space to enumerate.
enum class RadialTag { All, MuFree, MuVanishing };

// Basis of a realization subspace: scalar polynomials in (v, mu) of one
// grade, enumerated in a fixed deterministic order that is aligned with
// enumerateRadialBasis (element i of V corresponds to radial element i).
struct RealizationBasis {
  VariableSpace space;  // delayed(d, s)
  std::vector<ScalarPoly> elements;
};

// Basis of the radial target space H_j(R^d, Z_{2,p}): (component, monomial)
// pairs over radial(p, includesZero, s).
struct RadialBasis {
  VariableSpace space;
  std::vector<std::pair<int, Monomial>> elements;
};

RealizationBasis enumerateBasis(const SpectrumSpec& spec, BasisTag tag, int grade, int s);
RadialBasis enumerateRadialBasis(const SpectrumSpec& spec, RadialTag tag, int grade, int s);

// Coordinates of a radial vector polynomial in the enumerated radial basis.
// Throws if the polynomial has terms outside the basis (non-equivariant
// residue above tol).
VecD radialCoordinates(const VectorPoly& radial, const RadialBasis& basis, double tol = 1e-9);
VectorPoly radialFromCoordinates(const VecD& coords, const RadialBasis& basis);

// Eigenvalue of the linear-part homological operator on monomial * e_c:
// sum_i e_i * lambda(var_i) - lambda_c.  Pass component = -1 for the plain
// flow weight with no component offset.
Complex homologicalEigenvalue(const SpectrumSpec& spec, const VariableSpace& space,
                              const Monomial& m, int component);

// Resonance filter: keeps exactly the monomials whose torus weight matches
// the weight of their component.  Input must be a center field over a
// center-type space with no delayed variables.
VectorPoly projectA(const VectorPoly& f);

// Action of the homological operator Lb f = D_x f . B x - B f (diagonal on
// monomials).
VectorPoly applyHomological(const SpectrumSpec& spec, const VectorPoly& f);

// Projection of an equivariant center field onto the radial normal form:
// component c receives Re(a_c) rho_c-style data via the substitution
// x0 -> rho0, x_j -> rho_j, conj(x_j) -> rho_j.  Throws if the input is not
// equivariant (projectA(f) != f beyond tol) or not a real field.
VectorPoly projectPi(const VectorPoly& f, const SpectrumSpec& spec, double tol = 1e-9);

// Imaginary counterparts for the angular equations (one per Hopf pair).
VectorPoly angularPart(const VectorPoly& f, const SpectrumSpec& spec, double tol = 1e-9);

// Test helper for well-definedness: same projection computed through an
// explicit torus element gamma = (phase_1..phase_p).
VectorPoly projectPiViaTorusPoint(const VectorPoly& f, const SpectrumSpec& spec,
                                  const std::vector<double>& phases, double tol = 1e-9);

// Sign matrix K with K(j,k) = -1 iff j+k > d+1 (1-indexed), else +1.
MatD kMatrix(int d);

// Numerical Haar average (1/T) int_0^T e^{Bs} f(e^{-Bs} x) ds evaluated by
// Gauss-Legendre panels; converges to projectA(f)(x) at rate 1/T.
VecC timeAverageOfFlow(const VectorPoly& f, const SpectrumSpec& spec, const VecC& x, double T);

// Dimension bookkeeping for a given delay count m (number of distinct
// nonlinearity delays), per grade.
struct GradeDims {
  int grade = 0;
  int full = 0;       // dim H^m_grade(R), v-only monomials
  int v = 0;          // dim V_grade (equals vhat)
  int vMuFree = 0;
  int w = 0;
  int radial = 0;     // dim H_grade(R^d, Z_{2,p}) including parameters
  int radialMuFree = 0;
  int radialMuVanishing = 0;
};

struct DimsReport {
  int p = 0;
  bool includesZero = false;
  int s = 0;
  int ell = 0;
  int numDelays = 0;
  std::vector<GradeDims> grades;
  int fullTotal = 0;       // sum over grades 2..ell of `full`
  int radialMuFreeTotal = 0;
  // Closed form binom(m + ell, m) - m - 1 for the graded sum of v-only
  // monomials of degrees 2..ell in m variables.
  long long fullTotalClosedForm = 0;
  // Double-Hopf special form L(L+3), L = ell/2 (integer division); matches
  // enumeration for odd ell only, so the enumerated value is authoritative.
  long long doubleHopfFormula = -1;
  bool doubleHopfFormulaMatches = false;
  bool sourceCoversTarget = false;  // fullTotal >= radialMuFreeTotal
};

DimsReport dims(const SpectrumSpec& spec, int numDelays, int ell, int s);

}  // namespace ddnf
