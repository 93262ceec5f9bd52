#pragma once

#include "ddnf/exppoly.hpp"
#include "ddnf/spectrum.hpp"

namespace ddnf {

// Inhomogeneous data for one monomial coefficient of the complement-space
// homological equation: a smooth interior forcing G(theta) plus a scalar
// jump carried by the discontinuous direction at theta = 0.
struct QForcing {
  ExpPoly G;
  Complex jump{0.0, 0.0};
};

struct QSolveReport {
  bool resonant = false;            // lambda coincides with a critical root
  double consistencyResidual = 0.0; // |jump - beta| in the resonant branch
  Complex xi{0.0, 0.0};             // coefficient of the homogeneous mode
};

// |lambda - lambda_c| below this counts as resonance with a critical root;
// the same threshold detects interior exponents colliding with lambda, in
// which case the particular solution is upgraded to theta * e^{lambda theta}.
inline constexpr double kResonanceTol = 1e-8;

// Solve the two-point problem on the history interval
//     h'(theta) = lambda h(theta) - G(theta),
//     h'(0)     = L0 h + jump.
// For non-resonant lambda the solution is unique.  For resonant lambda the
// forcing must be consistent (residual beyond tolerance throws) and the
// returned representative is normalized by (psi_lambda, h) = 0, i.e. it lies
// in the complement of the center subspace.
ExpPoly solveQGeneral(const DelayOperator& op, const SpectrumSpec& spec, Complex lambda,
                      const QForcing& forcing, QSolveReport* report = nullptr);

// Forcing obtained by projecting a jump of size c out of the center
// subspace: G = -Phi(theta) Psi(0) c, jump = c.  This is the right-hand
// side produced by each monomial of the nonlinearity in the recursion.
QForcing projectedConstantForcing(const DelayOperator& op, const SpectrumSpec& spec, Complex c);

ExpPoly solveQHomological(const DelayOperator& op, const SpectrumSpec& spec, Complex lambda,
                          Complex c, QSolveReport* report = nullptr);

}  // namespace ddnf
