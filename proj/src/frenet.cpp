#include "bhlab/frenet.hpp"

#include "bhlab/numdiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace bhlab {

namespace {

constexpr double kSampledSpeedTolerance = 1e-4;
constexpr double kMinCurvature = 1e-10;
constexpr double kSampledFlatThreshold = 1e-6;

std::string speed_message(double lo, double hi) {
  std::ostringstream os;
  os.precision(12);
  os << "curve is not unit speed: |p'| in [" << lo << ", " << hi << "]";
  return os.str();
}

Eigen::Vector3d lift3(const RealVector& v) {
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  out.head(v.size()) = v;
  return out;
}

void fill_plane(FrenetData& data, double s, const RealVector& d1, const RealVector& d2) {
  RealVector e2(2);
  e2 << -d1(1), d1(0);
  data.s.push_back(s);
  data.kappa.push_back(d2.dot(e2));
  data.e1.push_back(d1);
  data.e2.push_back(e2);
}

void fill_space(FrenetData& data, const std::vector<double>& s,
                const std::vector<CurveDerivatives>& derivs, double zero_threshold) {
  bool all_flat = true;
  for (const auto& d : derivs) all_flat = all_flat && d[2].norm() <= zero_threshold;
  if (all_flat) {
    // Straight line: curvature is zero everywhere and torsion is not reported.
    for (std::size_t i = 0; i < derivs.size(); ++i) {
      data.s.push_back(s[i]);
      data.kappa.push_back(0.0);
      data.e1.push_back(lift3(derivs[i][1]));
    }
    return;
  }
  for (std::size_t i = 0; i < derivs.size(); ++i) {
    const Eigen::Vector3d a = lift3(derivs[i][1]);
    const Eigen::Vector3d b = lift3(derivs[i][2]);
    const Eigen::Vector3d c = lift3(derivs[i][3]);
    const double kappa = b.norm();
    if (kappa <= kMinCurvature) {
      std::ostringstream os;
      os << "curvature vanishes at s = " << s[i] << "; torsion is undefined";
      throw VanishingCurvature(os.str());
    }
    const Eigen::Vector3d e2 = b / kappa;
    const Eigen::Vector3d e3 = a.cross(e2);
    data.s.push_back(s[i]);
    data.kappa.push_back(kappa);
    data.tau.push_back(e3.dot(c) / kappa);
    data.e1.push_back(a);
    data.e2.push_back(e2);
    data.e3.push_back(e3);
  }
}

void reset_speed(FrenetData& data) {
  data.min_speed = std::numeric_limits<double>::infinity();
  data.max_speed = -std::numeric_limits<double>::infinity();
}

void track_speed(FrenetData& data, double speed) {
  data.min_speed = std::min(data.min_speed, speed);
  data.max_speed = std::max(data.max_speed, speed);
}

void check_speed(const FrenetData& data, double tol) {
  if (data.min_speed < 1.0 - tol || data.max_speed > 1.0 + tol) {
    throw NotUnitSpeed(data.min_speed, data.max_speed);
  }
}

std::pair<double, double> mean_spread(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double spread = 0.0;
  for (double x : v) spread = std::max(spread, std::abs(x - mean));
  return {mean, spread};
}

}  // namespace

NotUnitSpeed::NotUnitSpeed(double min_speed, double max_speed)
    : std::domain_error(speed_message(min_speed, max_speed)),
      min_speed_(min_speed),
      max_speed_(max_speed) {}

FrenetData frenet_plane(const ParametricCurve& p, std::span<const double> s_grid,
                        double speed_tolerance) {
  FrenetData data;
  data.ambient = 2;
  reset_speed(data);
  for (double s : s_grid) {
    const CurveDerivatives d = p(s);
    if (d[1].size() != 2) throw DimensionMismatch("frenet_plane: curve must lie in R^2");
    track_speed(data, d[1].norm());
    fill_plane(data, s, d[1], d[2]);
  }
  check_speed(data, speed_tolerance);
  return data;
}

FrenetData frenet_space(const ParametricCurve& p, std::span<const double> s_grid,
                        double speed_tolerance) {
  FrenetData data;
  data.ambient = 3;
  reset_speed(data);
  std::vector<double> grid(s_grid.begin(), s_grid.end());
  std::vector<CurveDerivatives> derivs;
  for (double s : grid) {
    derivs.push_back(p(s));
    if (derivs.back()[1].size() != 3) {
      throw DimensionMismatch("frenet_space: curve must lie in R^3");
    }
    track_speed(data, derivs.back()[1].norm());
  }
  check_speed(data, speed_tolerance);
  fill_space(data, grid, derivs, kMinCurvature);
  return data;
}

FrenetData frenet_from_samples(std::span<const double> s, const Eigen::MatrixXd& points) {
  const auto count = static_cast<std::size_t>(points.rows());
  const int dim = static_cast<int>(points.cols());
  if (dim != 2 && dim != 3) throw DimensionMismatch("frenet_from_samples: dimension must be 2 or 3");
  if (s.size() != count) throw DimensionMismatch("frenet_from_samples: arc-length column length");
  if (count < 7) throw std::invalid_argument("frenet_from_samples: at least 7 samples required");
  for (std::size_t i = 1; i < count; ++i) {
    if (!(s[i] > s[i - 1])) {
      throw std::invalid_argument("frenet_from_samples: arc length must be strictly increasing");
    }
  }

  std::vector<CurveDerivatives> derivs(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t start = std::min(i >= 3 ? i - 3 : 0, count - 7);
    const auto w = fd_weights(s[i], s.subspan(start, 7), 3);
    CurveDerivatives d;
    for (int k = 0; k < 4; ++k) {
      d[k] = RealVector::Zero(dim);
      for (std::size_t j = 0; j < 7; ++j) d[k] += w[k][j] * points.row(start + j).transpose();
    }
    derivs[i] = std::move(d);
  }

  FrenetData data;
  data.ambient = dim;
  data.source = DerivativeSource::FiniteDifference;
  reset_speed(data);
  for (const auto& d : derivs) track_speed(data, d[1].norm());
  check_speed(data, kSampledSpeedTolerance);
  if (dim == 2) {
    for (std::size_t i = 0; i < count; ++i) fill_plane(data, s[i], derivs[i][1], derivs[i][2]);
  } else {
    fill_space(data, std::vector<double>(s.begin(), s.end()), derivs, kSampledFlatThreshold);
  }
  return data;
}

std::string_view to_string(TangentVerdict v) {
  switch (v) {
    case TangentVerdict::HarmonicLine:
      return "harmonic-line";
    case TangentVerdict::Biharmonic:
      return "biharmonic";
    case TangentVerdict::NotBiharmonic:
      return "not-biharmonic";
  }
  return "unknown";
}

double default_constancy_tolerance(DerivativeSource source) {
  return source == DerivativeSource::Analytic ? 1e-7 : 1e-4;
}

TangentClassification classify_biharmonic_tangent(const FrenetData& data, int ambient,
                                                  std::optional<double> tolerance) {
  if (ambient != 2 && ambient != 3) {
    throw std::invalid_argument("classify_biharmonic_tangent: ambient must be 2 or 3");
  }
  TangentClassification out;
  out.tolerance = tolerance.value_or(default_constancy_tolerance(data.source));
  const double tol = out.tolerance;
  std::tie(out.kappa_mean, out.kappa_spread) = mean_spread(data.kappa);
  std::tie(out.tau_mean, out.tau_spread) = mean_spread(data.tau);

  if (out.kappa_spread > tol) {
    out.verdict = TangentVerdict::NotBiharmonic;
    out.diagnostic = "curvature is not constant";
    return out;
  }
  const double k = out.kappa_mean;
  if (std::abs(k) <= tol) {
    out.verdict = TangentVerdict::HarmonicLine;
    out.diagnostic = "curvature vanishes: straight line";
    return out;
  }
  if (ambient == 2) {
    if (std::abs(std::abs(k) - 1.0) <= tol) {
      out.verdict = TangentVerdict::Biharmonic;
      out.diagnostic = "constant curvature +-1";
    } else {
      out.verdict = TangentVerdict::NotBiharmonic;
      out.diagnostic = "constant curvature is not in {0, 1, -1}";
    }
    return out;
  }
  if (data.tau.size() != data.kappa.size()) {
    out.verdict = TangentVerdict::NotBiharmonic;
    out.diagnostic = "torsion unavailable for a space curve";
    return out;
  }
  if (out.tau_spread > tol) {
    out.verdict = TangentVerdict::NotBiharmonic;
    out.diagnostic = "torsion is not constant";
    return out;
  }
  const double defect = k * k + out.tau_mean * out.tau_mean - 1.0;
  if (std::abs(defect) <= tol) {
    out.verdict = TangentVerdict::Biharmonic;
    out.diagnostic = "constant curvature and torsion with kappa^2 + tau^2 = 1";
  } else {
    out.verdict = TangentVerdict::NotBiharmonic;
    std::ostringstream os;
    os << "kappa^2 + tau^2 - 1 = " << defect;
    out.diagnostic = os.str();
  }
  return out;
}

}  // namespace bhlab
