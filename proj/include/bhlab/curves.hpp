#pragma once

#include "bhlab/spaces.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace bhlab {

/// F(t) and its first three derivatives.
struct CurveJet {
  Matrix value;
  Matrix d1;
  Matrix d2;
  Matrix d3;
};

enum class DerivativeSource { Analytic, FiniteDifference };

class MissingDerivatives : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A curve t -> F(t) in the model's Lie algebra, F = psi^{-1} dpsi/dt for a lift psi.
class CurveFamily {
 public:
  using JetFn = std::function<CurveJet(double)>;
  using ValueFn = std::function<Matrix(double)>;

  /// Closed-form derivatives through order 3.
  static CurveFamily analytic(SymmetricSpace space, JetFn jet);

  /// Values only. Derivatives come from Richardson-extrapolated central differences
  /// unless `fallback_enabled` is false, in which case jet() throws MissingDerivatives.
  static CurveFamily finite_difference(SymmetricSpace space, ValueFn value,
                                       bool fallback_enabled = true);

  /// Samples on a (possibly non-uniform) increasing grid. Values at off-grid t use
  /// degree-6 local interpolation; derivatives use 7-node stencils whose node spacing is
  /// `derivative_stride` grid steps.
  static CurveFamily gridded(SymmetricSpace space, std::vector<double> times,
                             std::vector<Matrix> values, int derivative_stride = 1);

  const SymmetricSpace& space() const { return space_; }
  DerivativeSource source() const { return source_; }

  /// Closed interval on which the family is defined; nullopt means all of R.
  std::optional<std::pair<double, double>> domain() const;

  Matrix value(double t) const;
  CurveJet jet(double t) const;

  /// t -> F(t + s0).
  CurveFamily shifted(double s0) const;

  /// ||F'(t) - central difference of F at t||; analytic families only.
  double derivative_mismatch(double t) const;

 private:
  struct Grid {
    std::vector<double> times;
    std::vector<Matrix> values;
    int stride = 1;
  };

  CurveFamily(SymmetricSpace space, DerivativeSource source)
      : space_(space), source_(source) {}

  void check_domain(double t) const;
  CurveJet grid_jet(double t, bool derivatives) const;
  CurveJet central_jet(double t) const;

  SymmetricSpace space_;
  DerivativeSource source_;
  JetFn jet_;
  ValueFn value_;
  std::shared_ptr<const Grid> grid_;
  bool fallback_enabled_ = true;
  double offset_ = 0.0;
};

/// Jet of a chart-coordinate curve; mapped into m linearly by SymmetricSpace::m_from_coords.
struct CoordinateJet {
  ComplexVector value;
  ComplexVector d1;
  ComplexVector d2;
  ComplexVector d3;
};

/// Horizontal family F = F_m with F_m(t) = chart(coords(t)).
CurveFamily horizontal_family(const SymmetricSpace& space,
                              std::function<CoordinateJet(double)> coords);

/// F_m'(t) + [F_k(t), F_m(t)], an m-valued element.
Matrix harmonic_residual(const CurveFamily& family, double t);

/// -d^2/dt^2 (harmonic expression) + [[harmonic expression, F_m], F_m]. The second
/// derivative is expanded by the product rule from the jet.
Matrix biharmonic_residual(const CurveFamily& family, double t);

/// Horizontal closed form -F_m''' + [[F_m', F_m], F_m] on the m-part of a jet.
Matrix horizontal_biharmonic_residual(const SymmetricSpace& space, const CurveJet& jet);

struct RealVectorJet {
  RealVector value;
  RealVector d1;
  RealVector d2;
  RealVector d3;
};

/// -u''' + <u', u> u - <u, u> u'.
RealVector reduced_residual_sphere(const RealVectorJet& u);

/// Componentwise -z_i''' + sum_j {(z_i conj(z_j') - z_i' conj(z_j)) z_j
///                                - z_i (conj(z_j) z_j' - conj(z_j') z_j)}.
ComplexVector reduced_residual_cpn(const CoordinateJet& z);

/// Third-order reduction of the bitension for the HP^n chart (Z, W):
///   R_Z = -Z''' - (|Z|^2 + |W|^2) Z' + c Z - 3 e conj(W)
///   R_W = -W''' - (|Z|^2 + |W|^2) W' + c W + 3 e conj(Z)
/// with c = 2<Z,Z'> + 2<W,W'> - <Z',Z> - <W',W>, e = <Z',conj(W)> - <W',conj(Z)>,
/// <a,b> = sum a_i conj(b_i).
std::pair<ComplexVector, ComplexVector> reduced_residual_hpn(const CoordinateJet& z,
                                                             const CoordinateJet& w);

}  // namespace bhlab
