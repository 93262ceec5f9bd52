#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ddnf/exppoly.hpp"
#include "ddnf/types.hpp"
#include "ddnf/variables.hpp"

namespace ddnf {

// Prescribed critical spectrum: p Hopf pairs +-i*omega_j, optionally a
// simple zero root, for a scalar delay equation on the history interval
// [-r, 0].  The omegas must pass a bounded integer-relation independence
// check (|n_j| <= kIndependenceRange, |sum n_j omega_j| > kIndependenceTol).
struct SpectrumSpec {
  int p = 1;
  bool includesZero = false;
  std::vector<double> omegas;
  double r = 1.0;

  int kappa() const { return 2 * p + (includesZero ? 1 : 0); }  // # critical roots
  int d() const { return p + (includesZero ? 1 : 0); }          // # radial slots

  static constexpr int kIndependenceRange = 50;
  static constexpr double kIndependenceTol = 1e-9;

  // Throws std::invalid_argument on malformed or rationally dependent input.
  void validate() const;

  // Critical eigenvalues in center-variable order [0?, i*w1, -i*w1, ...].
  std::vector<Complex> centerEigenvalues() const;
};

// Linear part L0 phi = sum_k b_k phi(theta_k) with point delays
// theta_k in [-r, 0].
struct DelayTerm {
  double theta = 0.0;
  double b = 0.0;
};

struct DelayOperator {
  std::vector<DelayTerm> terms;

  // L0 applied to an exponential-polynomial history segment.
  Complex apply(const ExpPoly& phi) const;
  double apply(const std::vector<double>& values) const;  // values aligned with terms
};

// Characteristic function Delta(lambda) = lambda - sum_k b_k e^{lambda theta_k}
// and its derivative Delta'(lambda) = 1 - sum_k b_k theta_k e^{lambda theta_k}.
Complex charValue(const DelayOperator& op, Complex lambda);
Complex charDerivative(const DelayOperator& op, Complex lambda);

// Solves for real coefficients b_k placed at the given delay positions so
// that Delta vanishes on the prescribed spectrum.  Accepts any number of
// positions; the (possibly rectangular) real system is solved by
// column-pivoted QR and the residual is checked.  Throws on duplicate
// positions, positions outside [-r, 0], or an inconsistent/singular system.
DelayOperator designLinear(const SpectrumSpec& spec, const std::vector<double>& positions);

// Number of characteristic roots (with multiplicity) inside the open
// rectangle with corners lo and hi, computed as the boundary winding number
// of Delta with adaptive phase tracking.  Throws if a root lies on (or
// numerically touches) the contour after jitter retries, or if the winding
// residual exceeds the rejection threshold.
int countRootsInRectangle(const DelayOperator& op, Complex lo, Complex hi);

struct SpectrumReport {
  bool pass = false;
  std::vector<double> rootResiduals;      // |Delta(lambda_j)| per prescribed root
  std::vector<double> derivativeMagnitudes;  // |Delta'(lambda_j)|
  int stripCount = -1;                    // roots in the vertical strip |Re| <= delta
  int expectedCount = 0;
  std::string message;
};

// Confirms the prescribed roots are simple roots of Delta and that the
// critical strip contains exactly kappa of them.
SpectrumReport verifySpectrum(const DelayOperator& op, const SpectrumSpec& spec,
                              double tol = 1e-8, double strip_half_width = 1e-3);

// Row vector Psi(0) in center-variable order: [u0?, u1, conj(u1), ...] with
// u_j = 1 / Delta'(i omega_j) and u_0 = 1 / Delta'(0).  Throws if any
// |Delta'| falls below tol (non-simple root).
VecC adjointVector(const DelayOperator& op, const SpectrumSpec& spec, double tol = 1e-6);

// Center-subspace eigenfunction e^{lambda_c theta} for center variable c.
ExpPoly centerEigenfunction(const SpectrumSpec& spec, int c);
// Normalized adjoint eigenfunction psi_c(s) = u_c e^{-lambda_c s} on [0, r].
ExpPoly adjointEigenfunction(const DelayOperator& op, const SpectrumSpec& spec, int c);

// Bilinear pairing (psi, phi) = psi(0) phi(0) - sum_k b_k
// int_0^{theta_k} psi(zeta - theta_k) phi(zeta) dzeta, evaluated exactly in
// the exponential-polynomial algebra.
Complex bilinearForm(const ExpPoly& psi, const ExpPoly& phi, const DelayOperator& op);

}  // namespace ddnf
