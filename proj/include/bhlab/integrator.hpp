#pragma once

#include "bhlab/curves.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bhlab {

enum class LieMethod { LieEuler, LieMidpoint, RKMK4 };

std::string_view to_string(LieMethod m);

/// Parses "lie-euler", "lie-midpoint" or "rk-mk4"; nullopt otherwise.
std::optional<LieMethod> parse_lie_method(std::string_view name);

struct IntegratorConfig {
  LieMethod method = LieMethod::RKMK4;
  int steps = 1000;
  /// Drift is enforced every `drift_cadence` steps and at the final step.
  int drift_cadence = 1;
  double drift_tolerance = 1e-8;
  /// Replace psi by its polar projection after each step. Off by default: drift is
  /// monitored, not corrected.
  bool polar_repair = false;

  /// Throws std::invalid_argument unless steps >= 1, cadence >= 1, tolerance > 0.
  void validate() const;
};

struct LiftTrajectory {
  SymmetricSpace space = SymmetricSpace::sphere(1);
  std::vector<double> times;
  std::vector<GroupElement> psi;
  std::vector<HomogeneousPoint> points;
  std::vector<double> drift;
};

class DriftExceeded : public std::runtime_error {
 public:
  DriftExceeded(LiftTrajectory partial, int step, double drift, double tolerance);
  const LiftTrajectory& partial() const { return partial_; }
  int step() const { return step_; }
  double drift() const { return drift_; }

 private:
  LiftTrajectory partial_;
  int step_;
  double drift_;
};

/// Integrates psi' = psi F(t) from psi(t0) = x to t1 (t1 < t0 allowed) with
/// cfg.steps uniform steps, each a right multiplication by expm of the method's
/// increment. Throws ConstraintViolation if x violates the group constraint (1e-8).
LiftTrajectory solve_lift(const CurveFamily& family, const GroupElement& x, double t0,
                          double t1, const IntegratorConfig& cfg);

/// F(t_i) ~ psi(t_i)^{-1} psi'(t_i) with 5-point 4th-order differences (one-sided
/// near the ends). The result is a gridded family whose derivative stencils use node
/// spacing close to `derivative_spacing`. Requires >= 5 samples.
CurveFamily pullback(const LiftTrajectory& traj, double derivative_spacing = 2e-2);

}  // namespace bhlab
