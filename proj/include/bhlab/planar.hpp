#pragma once

#include "bhlab/curves.hpp"

#include <array>
#include <functional>
#include <utility>
#include <vector>

namespace bhlab {

/// Partials of one field A(x, y) through total order 3.
struct PlanarJet {
  Matrix v, x, y, xx, xy, yy, xxx, xxy, xyy, yyy;

  /// d^{i+j} A / dx^i dy^j, i + j <= 3.
  const Matrix& d(int i, int j) const;
  Matrix& d(int i, int j);
};

/// Conformal factor mu of g = mu^2 g0 with partials through order 2.
struct ConformalJet {
  double v = 1.0, x = 0.0, y = 0.0, xx = 0.0, xy = 0.0, yy = 0.0;
};

/// The coefficient fields (A_x, A_y) of alpha = A_x dx + A_y dy on a plane domain.
class PlanarFieldPair {
 public:
  using JetFn = std::function<std::pair<PlanarJet, PlanarJet>(double, double)>;
  using ValueFn = std::function<std::pair<Matrix, Matrix>(double, double)>;
  using ConformalFn = std::function<ConformalJet(double, double)>;

  static PlanarFieldPair analytic(SymmetricSpace space, JetFn jet, bool horizontal = false);

  /// Values only; partials come from tensor-product central differences (4th order
  /// through second partials, 2nd order for pure third partials) unless the fallback is
  /// disabled, in which case jet() throws MissingDerivatives.
  static PlanarFieldPair finite_difference(SymmetricSpace space, ValueFn value,
                                           bool horizontal = false,
                                           bool fallback_enabled = true);

  /// Same fields with conformal factor mu (default mu = 1).
  PlanarFieldPair with_conformal(ConformalFn mu) const;

  const SymmetricSpace& space() const { return space_; }
  DerivativeSource source() const { return source_; }
  bool horizontal() const { return horizontal_; }

  std::pair<Matrix, Matrix> value(double x, double y) const;

  /// Throws ConstraintViolation when a horizontal pair has a k-part above 1e-12.
  std::pair<PlanarJet, PlanarJet> jet(double x, double y) const;

  /// Throws std::domain_error unless mu > 0.
  ConformalJet conformal(double x, double y) const;

 private:
  PlanarFieldPair(SymmetricSpace space, DerivativeSource source, bool horizontal)
      : space_(space), source_(source), horizontal_(horizontal) {}

  std::pair<PlanarJet, PlanarJet> central_jet(double x, double y) const;

  SymmetricSpace space_;
  DerivativeSource source_;
  bool horizontal_;
  JetFn jet_;
  ValueFn value_;
  ConformalFn mu_;
  bool fallback_enabled_ = true;
};

/// dA_{x,m}/dx + dA_{y,m}/dy + [A_{x,k}, A_{x,m}] + [A_{y,k}, A_{y,m}]. The mu^{-2}
/// prefactor is not applied.
Matrix harmonic_residual_planar(const PlanarFieldPair& fields, double x, double y);

/// mu^{-2} times harmonic_residual_planar.
Matrix scaled_harmonic_residual_planar(const PlanarFieldPair& fields, double x, double y);

/// With H the harmonic expression:
///   -mu^{-2} (d_xx + d_yy)(mu^{-2} H) + mu^{-4} ([[H, A_{x,m}], A_{x,m}] + [[H, A_{y,m}], A_{y,m}]).
/// The Laplacian is expanded by the product rule from third partials of the fields.
Matrix biharmonic_residual_planar(const PlanarFieldPair& fields, double x, double y);

/// Horizontal, mu = 1 closed form on P = A_{x,m}, Q = A_{y,m}:
///   -P_xxx - P_xyy - Q_xxy - Q_yyy + [[P_x + Q_y, P], P] + [[P_x + Q_y, Q], Q].
Matrix horizontal_biharmonic_residual_planar(const SymmetricSpace& space, const PlanarJet& p,
                                             const PlanarJet& q);

struct IntegrabilityResiduals {
  Matrix k;  // -dA_{x,k}/dy + dA_{y,k}/dx + [A_{x,k}, A_{y,k}] + [A_{x,m}, A_{y,m}]
  Matrix m;  // -dA_{x,m}/dy + dA_{y,m}/dx + [A_{x,k}, A_{y,m}] + [A_{x,m}, A_{y,k}]
};

IntegrabilityResiduals integrability_residuals(const PlanarFieldPair& fields, double x,
                                               double y);

/// Norms of [[Q_y, P], P] and [[P_x, Q], Q]; both vanish when [P, Q] = 0 identically.
std::pair<double, double> separable_cross_terms(const PlanarFieldPair& fields, double x,
                                                double y);

/// Uniform rectangular grid.
struct GridSpec {
  double x0 = -1.0, x1 = 1.0;
  int nx = 21;
  double y0 = -1.0, y1 = 1.0;
  int ny = 21;

  /// Throws std::invalid_argument unless nx, ny >= 3 and both intervals are non-empty.
  void validate() const;
  double x(int i) const;
  double y(int j) const;
};

/// (a1, b1, c1, a2, b2, c2): P = (a1 x^2 + b1 x + c1) X, Q = (a2 y^2 + b2 y + c2) Y.
using SeparableCoefficients = std::array<double, 6>;

/// d = (a/3) s^3 + (b/2) s^2 + c s and its first three derivatives.
std::array<double, 4> cubic_phase(double a, double b, double c, double s);

/// Horizontal analytic pair P = d_x' X, Q = d_y' Y (mu = 1). X and Y need not commute;
/// jet() rejects directions with a k-part.
PlanarFieldPair separable_fields(const SymmetricSpace& space, const Matrix& X, const Matrix& Y,
                                 const SeparableCoefficients& coeffs);

/// psi(x, y) = x0 exp(d_x X + d_y Y) for a commuting pair X, Y in m.
class SeparableMap {
 public:
  /// Throws ConstraintViolation if X or Y leaves m or ||[X, Y]|| > 1e-12, and
  /// DimensionMismatch if x0 has the wrong size.
  SeparableMap(SymmetricSpace space, Matrix x_dir, Matrix y_dir, SeparableCoefficients coeffs,
               GroupElement x0);

  const SymmetricSpace& space() const { return space_; }
  const SeparableCoefficients& coefficients() const { return coeffs_; }

  GroupElement psi(double x, double y) const;
  HomogeneousPoint point(double x, double y) const;

  /// Horizontal analytic pair (P, Q), mu = 1.
  PlanarFieldPair fields() const;

 private:
  SymmetricSpace space_;
  Matrix x_dir_;
  Matrix y_dir_;
  SeparableCoefficients coeffs_;
  GroupElement x0_;
};

SeparableMap build_separable_map(const SymmetricSpace& space, const Matrix& x_dir,
                                 const Matrix& y_dir, const SeparableCoefficients& coeffs,
                                 const GroupElement& x0);

}  // namespace bhlab
