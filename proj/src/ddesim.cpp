#include "ddnf/ddesim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddnf {

namespace {

// Hermite cubic on [t0, t1] through (y0, d0) and (y1, d1).
double hermite(double t, double t0, double t1, double y0, double d0, double y1, double d1) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * h * d0 +
         (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * h * d1;
}

// Right-hand side of the model at one stage.  `lookup` resolves z at a past
// time; a delay of exactly zero means the stage value itself.
class Stepper {
 public:
  Stepper(const DDEModel& model, const VecD& mu, const HistoryFn& history, Trajectory& out)
      : model_(model), history_(history), out_(out) {
    const int m = static_cast<int>(model.positions.size());
    const int s = model.nonlinearity.space().params();
    point_.resize(m + s);
    for (int j = 0; j < s; ++j) point_(m + j) = Complex(mu(j), 0.0);
  }

  double rhs(double t, double y) {
    double dz = 0.0;
    for (const DelayTerm& term : model_.linear.terms)
      dz += term.b * argument(t, y, term.theta);
    if (!model_.nonlinearity.isZero()) {
      for (std::size_t i = 0; i < model_.positions.size(); ++i)
        point_(static_cast<Index>(i)) = Complex(argument(t, y, model_.positions[i]), 0.0);
      dz += model_.nonlinearity.evaluate(point_).real();
    }
    return dz;
  }

 private:
  double argument(double t, double y, double theta) {
    return theta == 0.0 ? y : lookup(t + theta);
  }

  double lookup(double t) const {
    if (t <= 0.0) return history_(t);
    const std::vector<double>& ts = out_.times;
    // Knots are appended as integration proceeds, so t is at most the last
    // knot time here (the step guard enforces it).
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - ts.begin());
    if (i >= ts.size()) return out_.values.back();
    return hermite(t, ts[i - 1], ts[i], out_.values[i - 1], out_.derivs[i - 1], out_.values[i],
                   out_.derivs[i]);
  }

  const DDEModel& model_;
  const HistoryFn& history_;
  Trajectory& out_;
  VecC point_;
};

}  // namespace

double Trajectory::eval(double t) const {
  if (times.size() < 2 || t < times.front() - 1e-12 || t > times.back() + 1e-12)
    throw std::invalid_argument("Trajectory::eval: time outside the recorded span");
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t i = static_cast<std::size_t>(it - times.begin());
  if (i == 0) ++i;
  if (i >= times.size()) i = times.size() - 1;
  return hermite(t, times[i - 1], times[i], values[i - 1], derivs[i - 1], values[i], derivs[i]);
}

Trajectory integrate(const DDEModel& model, const VecD& mu, const HistoryFn& history,
                     double tEnd, double dt) {
  validateModel(model);
  if (mu.size() != model.nonlinearity.space().params())
    throw std::invalid_argument("integrate: parameter count mismatch");
  if (!(tEnd > 0.0)) throw std::invalid_argument("integrate: tEnd must be positive");
  if (dt <= 0.0) dt = std::min(0.01, model.spec.r / 100.0);

  // Every nonzero delay must reach at least one step into the past, or the
  // stage lookups would run ahead of the record.
  std::vector<double> delays = model.positions;
  for (const DelayTerm& term : model.linear.terms) delays.push_back(term.theta);
  for (double theta : delays) {
    if (theta > 1e-12 || theta < -model.spec.r - 1e-12)
      throw std::invalid_argument("integrate: delay outside [-r, 0]");
    if (theta != 0.0 && -theta < dt - 1e-12)
      throw std::invalid_argument("integrate: step larger than the shortest nonzero delay");
  }

  Trajectory out;
  const std::size_t steps = static_cast<std::size_t>(std::ceil(tEnd / dt - 1e-9));
  out.times.reserve(steps + 1);
  out.values.reserve(steps + 1);
  out.derivs.reserve(steps + 1);

  Stepper stepper(model, mu, history, out);
  double t = 0.0;
  double y = history(0.0);
  double k1 = stepper.rhs(t, y);
  out.times.push_back(t);
  out.values.push_back(y);
  out.derivs.push_back(k1);

  for (std::size_t i = 1; i <= steps; ++i) {
    // Knot times come from the step index, not accumulation, so the final
    // knot lands exactly on tEnd without a stray roundoff-length step.
    const double tNext = std::min(tEnd, static_cast<double>(i) * dt);
    const double h = tNext - t;
    const double k2 = stepper.rhs(t + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = stepper.rhs(t + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = stepper.rhs(t + h, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = tNext;
    if (!std::isfinite(y) || std::abs(y) > kOverflowGuard) {
      out.diverged = true;
      break;
    }
    k1 = stepper.rhs(t, y);
    out.times.push_back(t);
    out.values.push_back(y);
    out.derivs.push_back(k1);
  }
  return out;
}

Trajectory integrate(const DDEModel& model, const VecD& mu, double history, double tEnd,
                     double dt) {
  return integrate(
      model, mu, [history](double) { return history; }, tEnd, dt);
}

OscillationSummary measureOscillation(const Trajectory& traj, double discardFraction) {
  if (discardFraction < 0.0 || discardFraction >= 1.0)
    throw std::invalid_argument("measureOscillation: discard fraction must lie in [0, 1)");
  OscillationSummary sum;
  const std::size_t n = traj.times.size();
  if (n < 3) return sum;
  const double tCut =
      traj.times.front() + discardFraction * (traj.times.back() - traj.times.front());

  std::vector<double> extremeVals;
  std::vector<double> maximaTimes;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (traj.times[i] < tCut) continue;
    const double d1 = traj.values[i] - traj.values[i - 1];
    const double d2 = traj.values[i + 1] - traj.values[i];
    if (d1 * d2 >= 0.0) continue;
    // Parabola through the three samples around the slope change.
    const double hA = traj.times[i - 1] - traj.times[i];
    const double hC = traj.times[i + 1] - traj.times[i];
    const double vA = traj.values[i - 1] - traj.values[i];
    const double vC = traj.values[i + 1] - traj.values[i];
    const double det = hA * hA * hC - hC * hC * hA;
    const double a = (vA * hC - vC * hA) / det;
    const double b = (hA * hA * vC - hC * hC * vA) / det;
    const double tStar = traj.times[i] - b / (2.0 * a);
    const double vStar = traj.values[i] - b * b / (4.0 * a);
    extremeVals.push_back(vStar);
    if (a < 0.0) maximaTimes.push_back(tStar);
  }

  sum.extrema = static_cast<int>(extremeVals.size());
  if (extremeVals.size() < 4 || maximaTimes.size() < 2) return sum;

  const double spacing =
      (maximaTimes.back() - maximaTimes.front()) / (static_cast<double>(maximaTimes.size()) - 1.0);
  sum.frequency = 2.0 * M_PI / spacing;

  // A tail that is still shrinking is decay, not a limit cycle.
  if (std::abs(extremeVals.back()) < 0.5 * std::abs(extremeVals.front())) return sum;
  double acc = 0.0;
  for (double v : extremeVals) acc += std::abs(v);
  sum.amplitude = acc / static_cast<double>(extremeVals.size());
  if (sum.amplitude < 1e-10) sum.amplitude = 0.0;
  return sum;
}

}  // namespace ddnf
