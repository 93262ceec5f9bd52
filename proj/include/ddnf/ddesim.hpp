#pragma once

#include <functional>
#include <vector>

#include "ddnf/nfengine.hpp"

namespace ddnf {

// Scalar trajectory with a C^1 piecewise-cubic record: one value and one
// derivative per knot, interpolated by Hermite cubics in between.  For a
// smooth solution the evaluation error between knots is O(dt^4), matching
// the order of the integrator that produced it.
struct Trajectory {
  std::vector<double> times;   // increasing knots, starting at 0
  std::vector<double> values;  // z(times[i])
  std::vector<double> derivs;  // z'(times[i])
  bool diverged = false;       // overflow guard tripped; record is partial

  // Hermite interpolation; t must lie within [times.front(), times.back()].
  double eval(double t) const;
};

using HistoryFn = std::function<double(double)>;

// |z| beyond which integration stops and flags the trajectory.
inline constexpr double kOverflowGuard = 1e8;

// Method-of-steps RK4 for
//   z'(t) = sum_k b_k z(t + theta_k) + F(z(t + tau_1), ..., z(t + tau_m), mu).
// Delayed stage values are read from the Hermite record of the solution so
// far, or from `history` for arguments at or before 0; a delay of exactly
// zero uses the stage value itself, so undelayed terms integrate as a plain
// ODE.  dt <= 0 selects the default min(0.01, r / 100).  Nonzero delays
// shorter than the step are rejected because the lookup would need values
// ahead of the record.  The run stops early (with `diverged` set) when |z|
// exceeds kOverflowGuard or stops being finite.
Trajectory integrate(const DDEModel& model, const VecD& mu, const HistoryFn& history,
                     double tEnd, double dt = 0.0);
Trajectory integrate(const DDEModel& model, const VecD& mu, double history, double tEnd,
                     double dt = 0.0);

// Tail statistics of an oscillating trajectory.
struct OscillationSummary {
  double amplitude = 0.0;  // mean |extremum|; 0 when the tail is not oscillating
  double frequency = 0.0;  // 2 pi / mean spacing of consecutive maxima
  int extrema = 0;         // extrema located in the retained tail
};

// Drops the leading `discardFraction` of the time span as transient, then
// locates interior extrema by a three-point parabolic fit around each sign
// change of the discrete slope.  Fewer than four extrema (or two maxima)
// counts as no oscillation, as does a tail whose last extremum has shrunk
// below half the first: both report amplitude 0.  The caller is responsible
// for supplying a run long enough for the tail statistics to be meaningful
// (twenty extrema is a comfortable floor).
OscillationSummary measureOscillation(const Trajectory& traj, double discardFraction = 0.5);

}  // namespace ddnf
