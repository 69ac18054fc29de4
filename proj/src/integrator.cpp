#include "bhlab/integrator.hpp"

#include "bhlab/numdiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bhlab {

namespace {

constexpr double kInitialTolerance = 1e-8;

std::string drift_message(int step, double drift, double tolerance) {
  std::ostringstream os;
  os << "drift " << drift << " exceeds tolerance " << tolerance << " at step " << step;
  return os.str();
}

Matrix increment(const CurveFamily& family, LieMethod method, double t, double h) {
  switch (method) {
    case LieMethod::LieEuler:
      return h * family.value(t);
    case LieMethod::LieMidpoint:
      return h * family.value(t + 0.5 * h);
    case LieMethod::RKMK4: {
      // Linear right-invariant equation: K2 = K3, and the dexp correction reduces to a
      // single commutator.
      const Matrix k1 = h * family.value(t);
      const Matrix k2 = h * family.value(t + 0.5 * h);
      const Matrix k4 = h * family.value(t + h);
      return (k1 + 4.0 * k2 + k4) / 6.0 + bracket(k1, k4) / 12.0;
    }
  }
  throw std::logic_error("unknown integration method");
}

void record(LiftTrajectory& traj, double t, const GroupElement& g) {
  traj.times.push_back(t);
  traj.psi.push_back(g);
  traj.points.push_back(
      traj.space.project_point(g, std::numeric_limits<double>::infinity()));
  traj.drift.push_back(drift(g));
}

}  // namespace

std::string_view to_string(LieMethod m) {
  switch (m) {
    case LieMethod::LieEuler:
      return "lie-euler";
    case LieMethod::LieMidpoint:
      return "lie-midpoint";
    case LieMethod::RKMK4:
      return "rk-mk4";
  }
  return "unknown";
}

std::optional<LieMethod> parse_lie_method(std::string_view name) {
  for (LieMethod m : {LieMethod::LieEuler, LieMethod::LieMidpoint, LieMethod::RKMK4}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

void IntegratorConfig::validate() const {
  if (steps < 1) throw std::invalid_argument("integrator: step count must be >= 1");
  if (drift_cadence < 1) throw std::invalid_argument("integrator: drift cadence must be >= 1");
  if (!(drift_tolerance > 0.0)) {
    throw std::invalid_argument("integrator: drift tolerance must be positive");
  }
}

DriftExceeded::DriftExceeded(LiftTrajectory partial, int step, double drift, double tolerance)
    : std::runtime_error(drift_message(step, drift, tolerance)),
      partial_(std::move(partial)),
      step_(step),
      drift_(drift) {}

LiftTrajectory solve_lift(const CurveFamily& family, const GroupElement& x, double t0,
                          double t1, const IntegratorConfig& cfg) {
  cfg.validate();
  const SymmetricSpace& space = family.space();
  if (x.matrix.rows() != space.dim() || x.matrix.cols() != space.dim()) {
    throw DimensionMismatch("solve_lift: initial element has the wrong size");
  }
  if (x.kind != space.group_kind()) {
    throw std::invalid_argument("solve_lift: initial element has the wrong constraint tag");
  }
  const double d0 = drift(x);
  if (!(d0 <= kInitialTolerance)) {
    throw ConstraintViolation("solve_lift: initial element violates the group constraint", d0);
  }

  LiftTrajectory traj;
  traj.space = space;
  traj.times.reserve(cfg.steps + 1);
  traj.psi.reserve(cfg.steps + 1);
  const double h = (t1 - t0) / cfg.steps;
  GroupElement g = x;
  record(traj, t0, g);
  for (int n = 0; n < cfg.steps; ++n) {
    const double t = t0 + n * h;
    const Matrix theta = increment(family, cfg.method, t, h);
    g.matrix = g.matrix * expm(theta);
    if (cfg.polar_repair) g = polar_repair(g);
    const double t_next = n + 1 == cfg.steps ? t1 : t0 + (n + 1) * h;
    record(traj, t_next, g);
    const int step = n + 1;
    if (step % cfg.drift_cadence == 0 || step == cfg.steps) {
      const double d = traj.drift.back();
      if (!(d <= cfg.drift_tolerance)) throw DriftExceeded(std::move(traj), step, d, cfg.drift_tolerance);
    }
  }
  return traj;
}

CurveFamily pullback(const LiftTrajectory& traj, double derivative_spacing) {
  const std::size_t count = traj.times.size();
  if (count < 5) throw std::invalid_argument("pullback: at least 5 samples are required");

  // Work on increasing times regardless of the integration direction.
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  if (traj.times.back() < traj.times.front()) std::reverse(order.begin(), order.end());
  std::vector<double> times(count);
  for (std::size_t i = 0; i < count; ++i) times[i] = traj.times[order[i]];

  std::vector<Matrix> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t start = std::min(i >= 2 ? i - 2 : 0, count - 5);
    const auto w = fd_weights(times[i], std::span<const double>(times).subspan(start, 5), 1);
    const Matrix& psi = traj.psi[order[i]].matrix;
    Matrix d = Matrix::Zero(psi.rows(), psi.cols());
    for (std::size_t j = 0; j < 5; ++j) d += w[1][j] * traj.psi[order[start + j]].matrix;
    values[i] = psi.partialPivLu().solve(d);
  }

  const double step = (times.back() - times.front()) / static_cast<double>(count - 1);
  const int stride = std::max(1, static_cast<int>(std::lround(derivative_spacing / step)));
  return CurveFamily::gridded(traj.space, std::move(times), std::move(values), stride);
}

}  // namespace bhlab
