#pragma once

#include "bhlab/curves.hpp"

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bhlab {

/// Curve derivatives at one parameter value: {p, p', p'', p'''} in R^2 or R^3.
using CurveDerivatives = std::array<RealVector, 4>;
using ParametricCurve = std::function<CurveDerivatives(double)>;

struct FrenetData {
  int ambient = 2;
  DerivativeSource source = DerivativeSource::Analytic;
  std::vector<double> s;
  std::vector<double> kappa;  // signed in the plane
  std::vector<double> tau;    // empty for plane curves
  std::vector<RealVector> e1;
  std::vector<RealVector> e2;
  std::vector<RealVector> e3;
  double min_speed = 1.0;
  double max_speed = 1.0;
};

class NotUnitSpeed : public std::domain_error {
 public:
  NotUnitSpeed(double min_speed, double max_speed);
  double min_speed() const { return min_speed_; }
  double max_speed() const { return max_speed_; }

 private:
  double min_speed_;
  double max_speed_;
};

class VanishingCurvature : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// e1 = p', e2 = e1 rotated by +90 degrees, kappa = <e1', e2>.
FrenetData frenet_plane(const ParametricCurve& p, std::span<const double> s_grid,
                        double speed_tolerance = 1e-8);

/// kappa = |e1'|, e2 = e1'/kappa, e3 = e1 x e2, tau = -<e3', e2> = det(p', p'', p''')/kappa^2.
FrenetData frenet_space(const ParametricCurve& p, std::span<const double> s_grid,
                        double speed_tolerance = 1e-8);

/// Frenet data from sampled points (rows of `points`, one per arc-length value). Derivatives
/// come from 7-node finite-difference stencils on the arc-length grid. Requires >= 7
/// strictly increasing samples; speed tolerance 1e-4.
FrenetData frenet_from_samples(std::span<const double> s, const Eigen::MatrixXd& points);

enum class TangentVerdict { HarmonicLine, Biharmonic, NotBiharmonic };

std::string_view to_string(TangentVerdict v);

struct TangentClassification {
  TangentVerdict verdict = TangentVerdict::NotBiharmonic;
  double kappa_mean = 0.0;
  double kappa_spread = 0.0;  // max |kappa - mean|
  double tau_mean = 0.0;
  double tau_spread = 0.0;
  double tolerance = 0.0;
  std::string diagnostic;
};

/// Constancy tolerance: 1e-7 for analytic data, 1e-4 for finite-difference data.
double default_constancy_tolerance(DerivativeSource source);

/// Plane: kappa constant in {0, 1, -1}. Space: kappa = 0, or kappa and tau constant with
/// kappa^2 + tau^2 = 1.
TangentClassification classify_biharmonic_tangent(const FrenetData& data, int ambient,
                                                  std::optional<double> tolerance = {});

}  // namespace bhlab
