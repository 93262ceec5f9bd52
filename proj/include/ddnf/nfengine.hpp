#pragma once

#include <map>
#include <vector>

#include "ddnf/poly.hpp"
#include "ddnf/qsolver.hpp"
#include "ddnf/spectrum.hpp"
#include "ddnf/symmetry.hpp"

namespace ddnf {

// Scalar delay equation  z'(t) = L0 z_t + F(z(t + theta_1), ..., z(t + theta_m), mu)
// with critical spectrum described by `spec`.  The nonlinearity is a
// polynomial over delayed(positions.size(), s) with every term of total
// degree >= 2; terms linear in the delayed values must carry a parameter
// factor (they unfold the linear part), and terms free of delayed values
// are only meaningful when a zero root is present.
struct DDEModel {
  DelayOperator linear;
  SpectrumSpec spec;
  std::vector<double> positions;  // sampling points of the nonlinearity, in [-r, 0]
  ScalarPoly nonlinearity;
};

// Throws std::invalid_argument when the model is structurally inconsistent.
void validateModel(const DDEModel& model);

// Matrix of center eigenfunction values at the sampling points:
// E(i, c) = exp(lambda_c * positions[i]).  On the center subspace the i-th
// delayed value is (E x)_i.
MatC buildE(const SpectrumSpec& spec, const std::vector<double>& positions);

struct NormalFormResult {
  VariableSpace centerSpace;   // center(p, includesZero, s)
  VectorPoly centerField;      // resonant nonlinear terms, grades 2..order
  VectorPoly radialField;      // radial projection of centerField
  VectorPoly angularField;     // angular corrections (one component per pair)
  int order = 0;
  // Largest solvability residual met in the complement-space solves; a
  // healthy reduction keeps this at roundoff level.
  double maxConsistencyResidual = 0.0;
};

// Order-by-order reduction of the model to its normal form on the center
// manifold: non-resonant terms of the projected equation are removed by
// polynomial changes of the center coordinates, the manifold expansion is
// solved in the complement space, and both are pushed through the remaining
// equations before the next order is processed.
NormalFormResult reduceToNormalForm(const DDEModel& model, int order);

// Radial coefficients of one grade of the reduced field, in the order fixed
// by enumerateRadialBasis(spec, tag, grade, s).
VecD radialSlice(const NormalFormResult& result, const SpectrumSpec& spec, int grade,
                 RadialTag tag = RadialTag::All);

// Closed-form first Lyapunov quantity for a single-Hopf scalar equation
// with nonlinearity A2 v^2 + A3 v^3 sampled at one point: returns the
// radial cubic coefficient Re c1(0) computed along the classical projection
// route, fully independent of the recursive machinery.
double hopfCubicCoefficient(const DelayOperator& op, const SpectrumSpec& spec, double position,
                            double A2, double A3);

}  // namespace ddnf
