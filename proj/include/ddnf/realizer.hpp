#pragma once

#include <cstdint>
#include <vector>

#include "ddnf/nfengine.hpp"
#include "ddnf/symmetry.hpp"

namespace ddnf {

// First-order response of the reduction: matrix taking coefficients over
// `source` (polynomials in the sampled values and parameters) to radial
// coordinates over `target`.  Column i is the radial projection of the
// resonant part of Psi(0) * source_i evaluated on the center subspace.
// This equals the per-grade derivative of the full reduction, at any base
// nonlinearity, because a grade-j term influences its own grade only
// through this map.
MatD assembleOperator(const DelayOperator& op, const SpectrumSpec& spec,
                      const std::vector<double>& positions, const RealizationBasis& source,
                      const RadialBasis& target);

// Square operator of one grade on the aligned pattern bases (hatted source,
// full radial target).  positions.size() must equal spec.d().
MatD assembleN(const DelayOperator& op, const SpectrumSpec& spec,
               const std::vector<double>& positions, int grade, int s);

// Same composite built from a synthetic ideal structure: the i-th sampled
// value is replaced by the pure pattern e^{i sigma_c} x_c + conjugate (or
// x0 for the zero slot) and the adjoint row is `u`.  The result is diagonal
// on the aligned (unhatted) pattern bases; idealDiagonal gives its
// closed-form entries
//   pair c:  Re(e^{i sigma_c} u_c) * C(2k_c + 1, k_c) * prod_{i != c} C(2k_i, k_i)
//   even:    Re(u_0) * prod_i C(2k_i, k_i).
// `u` must be conjugate-symmetric across each pair (a real structure).
MatD idealRealizationMatrix(const SpectrumSpec& spec, int grade, int s, const VecC& u,
                            const std::vector<double>& sigma);
VecD idealDiagonal(const SpectrumSpec& spec, int grade, int s, const VecC& u,
                   const std::vector<double>& sigma);

// Search for sampling positions in [-r, 0]^d: the quality of a tuple is
// the worst normalized determinant of the per-grade operators over grades
// 2..ell, where "normalized" means the n-th root of |det| over the product
// of row norms (geometric-mean orthogonality defect, scale- and
// dimension-free in [0, 1]).  Random samples are derived from the seed and
// the sample index alone, so results do not depend on the thread count;
// the grid sampler sweeps a uniform lattice.
enum class ScanSampler { Random, Grid };

struct TauScanResult {
  std::vector<double> best;
  double bestScore = 0.0;
  double viableFraction = 0.0;  // share of samples above kViableScore
  int samples = 0;
};
inline constexpr double kViableScore = 1e-6;

TauScanResult scanPositions(const DelayOperator& op, const SpectrumSpec& spec, int ell, int s,
                            int samples, std::uint64_t seed, int threads = 1,
                            ScanSampler sampler = ScanSampler::Random);

// Grade-by-grade construction of a nonlinearity whose reduced radial field
// equals `target` (grades 2..ell over radial(p, includesZero, s), both the
// parameter-free and the parameter-vanishing sector).  Each grade is
// corrected over the hatted pattern basis after re-reducing the model built
// so far; an optional base nonlinearity (pinned coefficients) is kept fixed
// and its contributions absorbed by the corrections.  Throws when a
// per-grade operator is numerically singular or a solve misses tolerance.
struct RealizationResult {
  DDEModel model;
  VectorPoly achieved;                    // radial field of the final reduction
  double residual = 0.0;                  // largest coefficient mismatch vs target
  std::vector<VecD> corrections;          // solved coefficients, grades 2..ell
  std::vector<double> conditionNumbers;   // per-grade operator conditioning
};
inline constexpr double kMaxRealizeCondition = 1e8;

RealizationResult realize(const DelayOperator& op, const SpectrumSpec& spec,
                          const std::vector<double>& positions, const VectorPoly& target,
                          int ell, const ScalarPoly* base = nullptr);

// Unfolding of an already-realized model: finds a parameter-vanishing
// addition xi (over the mu-vanishing pattern basis) such that the radial
// field of model + xi equals `unfolded`.  The mu = 0 slice of `unfolded`
// must agree with the radial field of the base model, which is preserved
// exactly because xi never sheds its parameter factors.
struct UnfoldingResult {
  DDEModel model;          // base model with xi added (parameters appended)
  ScalarPoly xi;           // the mu-vanishing correction alone
  VectorPoly achieved;
  double residual = 0.0;
  std::vector<VecD> corrections;
  std::vector<double> conditionNumbers;
};
UnfoldingResult realizeUnfolding(const DDEModel& base, const VectorPoly& unfolded, int ell);

// Jacobian of the map from parameter-free nonlinearity coefficients (all
// monomials of grades 2..ell in the sampled values) to the stacked radial
// coordinates, at the base nonlinearity `eta`: central finite differences
// through the full reduction, together with the exact per-grade linear
// response (which the diagonal blocks must reproduce at any base).  The map
// is a submersion at eta iff rank equals the target dimension.
struct SubmersionReport {
  MatD jacobian;           // finite-difference Jacobian, stacked by grade
  MatD exactBlocks;        // block-diagonal first-order response
  int rank = 0;
  int sourceDim = 0;
  int targetDim = 0;
  bool submersion = false;
  double step = 0.0;
};
SubmersionReport submersionJacobian(const DelayOperator& op, const SpectrumSpec& spec,
                                    const std::vector<double>& positions, const ScalarPoly& eta,
                                    int ell, double step = 1e-6);

// Reach of a single sampled value at a double-Hopf point, cubic order: the
// quadratic coefficient acts quadratically and the cubic one linearly, so
// the attainable cubic coefficient vectors form the two-parameter ruled set
// a(b2, b3) = b2^2 * quadraticResponse + b3 * linearResponse.  The analysis
// verifies that structure, then counts the distinct full-sign patterns of
// the four cubic coefficients over a grid.  The flow classification at a
// non-resonant double-Hopf point distinguishes twelve sign combinations;
// reaching fewer means the delay structure restricts the local dynamics.
struct OneDelayRestriction {
  VecD quadraticResponse;        // response to b2^2
  VecD linearResponse;           // response to b3
  double structureResidual = 0.0;
  int jacobianRank = 0;          // rank of the reachable surface's tangent
  int targetDimension = 0;
  int distinctSignPatterns = 0;
  int requiredSignPatterns = 12;
  bool restricted = false;
};
OneDelayRestriction doubleHopfOneDelayAnalysis(const DelayOperator& op, const SpectrumSpec& spec,
                                               double position, double b2max, double b3max,
                                               int gridN);

}  // namespace ddnf
