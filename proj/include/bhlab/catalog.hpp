#pragma once

#include "bhlab/integrator.hpp"
#include "bhlab/planar.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace bhlab {

class UnknownFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Identifies one catalogued family.
///
///   sphere/axis              F_m = D_t A(e_i)
///   sphere/great-circle      F_m = A(a, b, 0, ...) constant
///   sphere/circle            F_m = A(-sin t, cos t, 0, ...)
///   sphere/circle-reversed   F_m = A(-sin t, -cos t, 0, ...)
///   sphere/helix             F_m = A(-a sin t, a cos t, b, 0, ...)
///   cpn/case-i..iii          F_m = D_t B(z0 (1, ..., 1)), z0 = 1, i, 1 + i
///   hpn/case-i..iv           F_m = D_t C(Z, W) with (Z, W) = (1, 0), (i, 0), (0, 1), (0, i)
///   euclidean/poly           F_m = A t^2 + B t + C, translations
///   planar/separable         P = (a1 x^2 + b1 x + c1) X, Q = (a2 y^2 + b2 y + c2) Y
///
/// D_t = a t^2 + b t + c with (a, b, c) = params.
struct FamilySpec {
  std::string id;
  SpaceKind space = SpaceKind::Sphere;
  int n = 3;
  std::array<double, 3> params{0.0, 0.0, 1.0};
  /// Direction index for sphere/axis, 1..n.
  int index = 1;
  /// euclidean/poly: translation vectors A, B, C. Unset means (a, b, c) e_index.
  std::optional<std::array<RealVector, 3>> vectors;
  /// planar/separable coefficients (a1, b1, c1, a2, b2, c2).
  SeparableCoefficients planar{0.0, 0.0, 1.0, 0.0, 0.0, 1.0};
  /// planar/separable directions; unset means the default commuting pair of the space.
  std::optional<std::pair<Matrix, Matrix>> directions;
  /// Base point x0 of the lift; unset means the identity.
  std::optional<GroupElement> base;

  /// Throws std::invalid_argument for non-finite parameters, an index outside 1..n, or a
  /// dimension the case does not support.
  void validate() const;
};

std::vector<std::string> catalog_ids();

/// Defaults for an id. planar/separable uses `planar_space` (sphere when unset).
/// Throws UnknownFamily.
FamilySpec default_spec(const std::string& id,
                        std::optional<SpaceKind> planar_space = std::nullopt);

bool is_planar(const FamilySpec& spec);

SymmetricSpace spec_space(const FamilySpec& spec);
GroupElement spec_base(const FamilySpec& spec);

/// Curve families with analytic derivatives through order 3, horizontal.
CurveFamily make_family(const FamilySpec& spec);

PlanarFieldPair make_planar_fields(const FamilySpec& spec);
SeparableMap make_separable_map(const FamilySpec& spec);

/// Default commuting direction pair for separable planar maps: equal rank-one directions
/// for sphere, CP^n and HP^n, and the first two translations for the Euclidean type.
std::pair<Matrix, Matrix> default_planar_directions(const SymmetricSpace& space);

/// Horizontal family with polynomial chart coordinates:
/// coords_k(t) = sum_j coeffs[k][j] t^j.
CurveFamily polynomial_family(const SymmetricSpace& space,
                              const std::vector<std::vector<Complex>>& coeffs);

bool has_closed_form(const FamilySpec& spec);

/// The displayed point formula, acted on by the base point. Throws std::logic_error for
/// cases without one.
HomogeneousPoint closed_form_point(const FamilySpec& spec, double t);
HomogeneousPoint closed_form_point(const FamilySpec& spec, double x, double y);

enum class Verdict { Harmonic, Biharmonic, NotBiharmonic, NotIntegrable };

std::string_view to_string(Verdict v);

Verdict expected_verdict(const FamilySpec& spec);

struct Tolerances {
  double harmonic = 1e-10;
  double biharmonic = 1e-8;
  double integrability = 1e-8;
  double closed_form = 1e-7;

  /// Every tolerance set to `tol`.
  static Tolerances uniform(double tol);
};

struct Window {
  double t0 = -2.0;
  double t1 = 2.0;
  int samples = 401;

  double at(int i) const;
  void validate() const;
};

struct ResidualStats {
  double max = 0.0;
  double mean = 0.0;
  int count = 0;

  void add(double v);
  void finish();
};

struct ResidualReport {
  FamilySpec spec;
  std::string space_name;
  bool planar = false;
  Verdict verdict = Verdict::NotBiharmonic;
  Verdict expected = Verdict::NotBiharmonic;
  ResidualStats harmonic;
  ResidualStats biharmonic;
  ResidualStats integrability;  // planar only
  ResidualStats cross_terms;    // planar only
  std::optional<double> closed_form_distance;
  Tolerances tolerances;
  bool matches = false;
};

struct VerifyOptions {
  Window window;
  GridSpec grid;
  Tolerances tolerances;
  /// Integration step for the closed-form agreement check; <= 0 skips the check.
  double closed_form_step = 1e-3;
};

/// Residual sweep over the window (curves) or grid (planar), classification, and the
/// integrator/closed-form agreement where a displayed formula exists.
ResidualReport verify_family(const FamilySpec& spec, const VerifyOptions& options = {});

/// Classification from residual maxima: not-integrable, then not-biharmonic, then
/// harmonic, else biharmonic.
Verdict classify(double harmonic_max, double biharmonic_max,
                 std::optional<double> integrability_max, const Tolerances& tol);

/// Lifts a planar field pair by integrating along x from (0, 0) and then along y, and
/// returns the projected point at (x, y) for every grid node (row-major in x, then y).
std::vector<HomogeneousPoint> integrate_planar_grid(const PlanarFieldPair& fields,
                                                    const GroupElement& x0,
                                                    const GridSpec& grid, double step);

}  // namespace bhlab
