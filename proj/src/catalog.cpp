#include "bhlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bhlab {

namespace {

const std::vector<std::string> kIds = {
    "sphere/axis",  "sphere/great-circle", "sphere/circle", "sphere/circle-reversed",
    "sphere/helix", "cpn/case-i",          "cpn/case-ii",   "cpn/case-iii",
    "hpn/case-i",   "hpn/case-ii",         "hpn/case-iii",  "hpn/case-iv",
    "euclidean/poly", "planar/separable"};

const Complex kI{0.0, 1.0};

bool starts_with(const std::string& s, std::string_view prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

// D_t = a t^2 + b t + c and its derivatives.
std::array<double, 4> quadratic(const std::array<double, 3>& p, double t) {
  return {(p[0] * t + p[1]) * t + p[2], 2.0 * p[0] * t + p[1], 2.0 * p[0], 0.0};
}

double phase(const std::array<double, 3>& p, double t) {
  return cubic_phase(p[0], p[1], p[2], t)[0];
}

// Unit chart direction for the rank-one cubic-phase cases, scaled so that F_m = D_t m(v).
ComplexVector case_direction(const FamilySpec& spec) {
  const Eigen::Index n = spec.n;
  const std::string& id = spec.id;
  if (id == "sphere/axis") {
    ComplexVector v = ComplexVector::Zero(n);
    v(spec.index - 1) = 1.0;
    return v;
  }
  if (id == "cpn/case-i") return ComplexVector::Constant(n, 1.0);
  if (id == "cpn/case-ii") return ComplexVector::Constant(n, kI);
  if (id == "cpn/case-iii") return ComplexVector::Constant(n, 1.0 + kI);
  ComplexVector v = ComplexVector::Zero(2 * n);
  if (id == "hpn/case-i") v.head(n).setConstant(1.0);
  if (id == "hpn/case-ii") v.head(n).setConstant(kI);
  if (id == "hpn/case-iii") v.tail(n).setConstant(1.0);
  if (id == "hpn/case-iv") v.tail(n).setConstant(kI);
  return v;
}

bool cubic_phase_case(const std::string& id) {
  return id == "sphere/axis" || starts_with(id, "cpn/") || starts_with(id, "hpn/") ||
         id == "euclidean/poly";
}

std::array<RealVector, 3> euclid_vectors(const FamilySpec& spec) {
  if (spec.vectors) return *spec.vectors;
  std::array<RealVector, 3> out;
  for (int k = 0; k < 3; ++k) {
    out[k] = RealVector::Zero(spec.n);
    out[k](spec.index - 1) = spec.params[k];
  }
  return out;
}

CurveFamily trig_family(const SymmetricSpace& space, double a, double b, double sign) {
  // u = (-a sin t, sign * a cos t, b, 0, ...).
  return horizontal_family(space, [n = space.n(), a, b, sign](double t) {
    const double s = std::sin(t);
    const double c = std::cos(t);
    CoordinateJet j;
    j.value = j.d1 = j.d2 = j.d3 = ComplexVector::Zero(n);
    j.value(0) = -a * s;
    j.value(1) = sign * a * c;
    j.d1(0) = -a * c;
    j.d1(1) = -sign * a * s;
    j.d2(0) = a * s;
    j.d2(1) = -sign * a * c;
    j.d3(0) = a * c;
    j.d3(1) = sign * a * s;
    if (n >= 3) j.value(2) = b;
    return j;
  });
}

HomogeneousPoint rank_one_point(SpaceKind kind, int n, double angle, const ComplexVector& dir) {
  // cos(angle) at the base coordinate, sin(angle) dir elsewhere.
  const Eigen::Index size = kind == SpaceKind::QuaternionProjective ? 2 * n + 2 : n + 1;
  ComplexVector v = ComplexVector::Zero(size);
  v(0) = std::cos(angle);
  if (kind == SpaceKind::QuaternionProjective) {
    v.segment(1, n) = std::sin(angle) * dir.head(n);
    v.segment(n + 2, n) = std::sin(angle) * dir.tail(n);
  } else {
    v.tail(n) = std::sin(angle) * dir;
  }
  return {kind, v};
}

HomogeneousPoint with_base(const FamilySpec& spec, const HomogeneousPoint& p) {
  if (!spec.base) return p;
  return spec_space(spec).act(spec.base->matrix, p);
}

}  // namespace

void FamilySpec::validate() const {
  for (double p : params) {
    if (!std::isfinite(p)) throw std::invalid_argument(id + ": non-finite parameter");
  }
  for (double p : planar) {
    if (!std::isfinite(p)) throw std::invalid_argument(id + ": non-finite planar coefficient");
  }
  if (n < 1) throw std::invalid_argument(id + ": dimension must be >= 1");
  if (std::find(kIds.begin(), kIds.end(), id) == kIds.end()) {
    throw UnknownFamily("unknown family id '" + id + "'");
  }
  if (!is_planar(*this)) {
    const std::string prefix = std::string(to_string(space)) + "/";
    if (!starts_with(id, prefix)) throw std::invalid_argument(id + ": space does not match the id");
  }
  if (index < 1 || index > n) {
    std::ostringstream os;
    os << id << ": direction index " << index << " outside 1.." << n;
    throw std::invalid_argument(os.str());
  }
  if ((id == "sphere/great-circle" || id == "sphere/circle" || id == "sphere/circle-reversed") &&
      n < 2) {
    throw std::invalid_argument(id + ": needs n >= 2");
  }
  if (id == "sphere/helix" && n < 3) throw std::invalid_argument(id + ": needs n >= 3");
  if (vectors) {
    for (const RealVector& v : *vectors) {
      if (v.size() != n) throw DimensionMismatch(id + ": translation vectors must have length n");
      if (!v.allFinite()) throw std::invalid_argument(id + ": non-finite translation vector");
    }
  }
}

std::vector<std::string> catalog_ids() { return kIds; }

FamilySpec default_spec(const std::string& id, std::optional<SpaceKind> planar_space) {
  if (std::find(kIds.begin(), kIds.end(), id) == kIds.end()) {
    throw UnknownFamily("unknown family id '" + id + "'");
  }
  FamilySpec spec;
  spec.id = id;
  if (starts_with(id, "sphere/")) {
    spec.space = SpaceKind::Sphere;
    spec.n = id == "sphere/axis" || id == "sphere/helix" ? 3 : 2;
  } else if (starts_with(id, "cpn/")) {
    spec.space = SpaceKind::ComplexProjective;
    spec.n = 2;
  } else if (starts_with(id, "hpn/")) {
    spec.space = SpaceKind::QuaternionProjective;
    spec.n = 2;
  } else if (id == "euclidean/poly") {
    spec.space = SpaceKind::EuclideanType;
    spec.n = 3;
  } else {
    spec.space = planar_space.value_or(SpaceKind::Sphere);
    spec.n = spec.space == SpaceKind::Sphere || spec.space == SpaceKind::EuclideanType ? 3 : 2;
  }
  if (id == "sphere/great-circle") spec.params = {1.0, 0.0, 0.0};
  if (id == "sphere/helix") spec.params = {0.6, 0.8, 0.0};
  return spec;
}

bool is_planar(const FamilySpec& spec) { return spec.id == "planar/separable"; }

SymmetricSpace spec_space(const FamilySpec& spec) {
  switch (spec.space) {
    case SpaceKind::Sphere:
      return SymmetricSpace::sphere(spec.n);
    case SpaceKind::ComplexProjective:
      return SymmetricSpace::complex_projective(spec.n);
    case SpaceKind::QuaternionProjective:
      return SymmetricSpace::quaternion_projective(spec.n);
    case SpaceKind::EuclideanType:
      return SymmetricSpace::euclidean(spec.n);
  }
  throw std::logic_error("unknown space kind");
}

GroupElement spec_base(const FamilySpec& spec) {
  const SymmetricSpace space = spec_space(spec);
  if (spec.base) return *spec.base;
  return identity_element(space.dim(), space.group_kind());
}

CurveFamily make_family(const FamilySpec& spec) {
  spec.validate();
  if (is_planar(spec)) throw std::invalid_argument(spec.id + ": planar family, not a curve");
  const SymmetricSpace space = spec_space(spec);
  const std::string& id = spec.id;
  const auto [a, b, c] = spec.params;

  if (id == "sphere/great-circle") {
    ComplexVector u = ComplexVector::Zero(spec.n);
    u(0) = a;
    u(1) = b;
    return horizontal_family(space, [u](double) {
      const ComplexVector z = ComplexVector::Zero(u.size());
      return CoordinateJet{u, z, z, z};
    });
  }
  if (id == "sphere/circle") return trig_family(space, 1.0, 0.0, 1.0);
  if (id == "sphere/circle-reversed") return trig_family(space, 1.0, 0.0, -1.0);
  if (id == "sphere/helix") return trig_family(space, a, b, 1.0);
  if (id == "euclidean/poly") {
    const auto v = euclid_vectors(spec);
    return horizontal_family(space, [v](double t) {
      auto cast = [](const RealVector& x) { return ComplexVector(x.cast<Complex>()); };
      return CoordinateJet{cast(v[0] * t * t + v[1] * t + v[2]), cast(2.0 * v[0] * t + v[1]),
                           cast(2.0 * v[0]), cast(RealVector::Zero(v[0].size()))};
    });
  }
  if (!cubic_phase_case(id)) throw UnknownFamily("unknown family id '" + id + "'");
  const ComplexVector dir = case_direction(spec);
  const std::array<double, 3> p = spec.params;
  return horizontal_family(space, [dir, p](double t) {
    const auto d = quadratic(p, t);
    return CoordinateJet{d[0] * dir, d[1] * dir, d[2] * dir, d[3] * dir};
  });
}

std::pair<Matrix, Matrix> default_planar_directions(const SymmetricSpace& space) {
  const Eigen::Index n = space.n();
  switch (space.kind()) {
    case SpaceKind::Sphere: {
      const Matrix x = space.m_from_coords(ComplexVector::Constant(n, 1.0));
      return {x, x};
    }
    case SpaceKind::ComplexProjective: {
      const Matrix x = space.m_from_coords(ComplexVector::Constant(n, kI));
      return {x, x};
    }
    case SpaceKind::QuaternionProjective: {
      ComplexVector v = ComplexVector::Zero(2 * n);
      v.tail(n).setConstant(kI);
      const Matrix x = space.m_from_coords(v);
      return {x, x};
    }
    case SpaceKind::EuclideanType: {
      ComplexVector e1 = ComplexVector::Zero(n);
      e1(0) = 1.0;
      ComplexVector e2 = ComplexVector::Zero(n);
      e2(n >= 2 ? 1 : 0) = 1.0;
      return {space.m_from_coords(e1), space.m_from_coords(e2)};
    }
  }
  throw std::logic_error("unknown space kind");
}

SeparableMap make_separable_map(const FamilySpec& spec) {
  spec.validate();
  if (!is_planar(spec)) throw std::invalid_argument(spec.id + ": not a planar family");
  const SymmetricSpace space = spec_space(spec);
  const auto dirs = spec.directions ? *spec.directions : default_planar_directions(space);
  return build_separable_map(space, dirs.first, dirs.second, spec.planar, spec_base(spec));
}

PlanarFieldPair make_planar_fields(const FamilySpec& spec) {
  // Built without the commuting check so that verification can report non-commuting
  // directions as not integrable.
  spec.validate();
  if (!is_planar(spec)) throw std::invalid_argument(spec.id + ": not a planar family");
  const SymmetricSpace space = spec_space(spec);
  const auto dirs = spec.directions ? *spec.directions : default_planar_directions(space);
  return separable_fields(space, dirs.first, dirs.second, spec.planar);
}

CurveFamily polynomial_family(const SymmetricSpace& space,
                              const std::vector<std::vector<Complex>>& coeffs) {
  if (static_cast<Eigen::Index>(coeffs.size()) != space.chart_size()) {
    throw DimensionMismatch("polynomial family: one coefficient list per chart coordinate");
  }
  return horizontal_family(space, [coeffs](double t) {
    const Eigen::Index n = static_cast<Eigen::Index>(coeffs.size());
    CoordinateJet j;
    j.value = j.d1 = j.d2 = j.d3 = ComplexVector::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      // Repeated synthetic division: p_k ends as the k-th Taylor coefficient at t.
      const auto& c = coeffs[k];
      Complex p0 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) {
        p3 = p3 * t + p2;
        p2 = p2 * t + p1;
        p1 = p1 * t + p0;
        p0 = p0 * t + *it;
      }
      j.value(k) = p0;
      j.d1(k) = p1;
      j.d2(k) = 2.0 * p2;
      j.d3(k) = 6.0 * p3;
    }
    return j;
  });
}

bool has_closed_form(const FamilySpec& spec) {
  return cubic_phase_case(spec.id) || spec.id == "sphere/great-circle" || is_planar(spec);
}

HomogeneousPoint closed_form_point(const FamilySpec& spec, double t) {
  spec.validate();
  if (!has_closed_form(spec) || is_planar(spec)) {
    throw std::logic_error(spec.id + ": no displayed closed-form curve");
  }
  const int n = spec.n;
  const std::string& id = spec.id;
  const double d = phase(spec.params, t);
  const double rn = std::sqrt(static_cast<double>(n));

  HomogeneousPoint p;
  if (id == "sphere/great-circle") {
    const auto [a, b, c] = spec.params;
    const double r = std::hypot(a, b);
    ComplexVector v = ComplexVector::Zero(n + 1);
    v(0) = std::cos(t * r);
    if (r > 0.0) {
      v(1) = a / r * std::sin(t * r);
      v(2) = b / r * std::sin(t * r);
    }
    p = {SpaceKind::Sphere, v};
  } else if (id == "sphere/axis") {
    ComplexVector dir = ComplexVector::Zero(n);
    dir(spec.index - 1) = 1.0;
    p = rank_one_point(SpaceKind::Sphere, n, d, dir);
  } else if (id == "cpn/case-i") {
    p = rank_one_point(SpaceKind::ComplexProjective, n, rn * d,
                       ComplexVector::Constant(n, 1.0 / rn));
  } else if (id == "cpn/case-ii") {
    p = rank_one_point(SpaceKind::ComplexProjective, n, rn * d,
                       ComplexVector::Constant(n, kI / rn));
  } else if (id == "cpn/case-iii") {
    const double r2n = std::sqrt(2.0 * n);
    p = rank_one_point(SpaceKind::ComplexProjective, n, r2n * d,
                       ComplexVector::Constant(n, (1.0 + kI) / r2n));
  } else if (starts_with(id, "hpn/")) {
    // Quaternion coefficients -1, i, -j, k for cases i..iv, as (complex, j) parts.
    ComplexVector dir = ComplexVector::Zero(2 * n);
    if (id == "hpn/case-i") dir.head(n).setConstant(-1.0 / rn);
    if (id == "hpn/case-ii") dir.head(n).setConstant(kI / rn);
    if (id == "hpn/case-iii") dir.tail(n).setConstant(-1.0 / rn);
    if (id == "hpn/case-iv") dir.tail(n).setConstant(kI / rn);
    p = rank_one_point(SpaceKind::QuaternionProjective, n, rn * d, dir);
  } else {
    const auto v = euclid_vectors(spec);
    const RealVector x = v[0] * (t * t * t / 3.0) + v[1] * (t * t / 2.0) + v[2] * t;
    p = {SpaceKind::EuclideanType, x.cast<Complex>()};
  }
  return with_base(spec, p);
}

HomogeneousPoint closed_form_point(const FamilySpec& spec, double x, double y) {
  spec.validate();
  if (!is_planar(spec)) throw std::logic_error(spec.id + ": not a planar family");
  if (spec.directions) {
    throw std::logic_error(spec.id + ": no displayed formula for custom directions");
  }
  const auto& c = spec.planar;
  const double dx = cubic_phase(c[0], c[1], c[2], x)[0];
  const double dy = cubic_phase(c[3], c[4], c[5], y)[0];
  const int n = spec.n;
  const double rn = std::sqrt(static_cast<double>(n));
  const double angle = rn * (dx + dy);

  HomogeneousPoint p;
  switch (spec.space) {
    case SpaceKind::Sphere:
      p = rank_one_point(SpaceKind::Sphere, n, angle, ComplexVector::Constant(n, 1.0 / rn));
      break;
    case SpaceKind::ComplexProjective:
      p = rank_one_point(SpaceKind::ComplexProjective, n, angle,
                         ComplexVector::Constant(n, kI / rn));
      break;
    case SpaceKind::QuaternionProjective: {
      ComplexVector dir = ComplexVector::Zero(2 * n);
      dir.tail(n).setConstant(kI / rn);  // quaternion k / sqrt(n)
      p = rank_one_point(SpaceKind::QuaternionProjective, n, angle, dir);
      break;
    }
    case SpaceKind::EuclideanType: {
      ComplexVector v = ComplexVector::Zero(n);
      v(0) += dx;
      v(n >= 2 ? 1 : 0) += dy;
      p = {SpaceKind::EuclideanType, v};
      break;
    }
  }
  return with_base(spec, p);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Harmonic:
      return "harmonic";
    case Verdict::Biharmonic:
      return "biharmonic";
    case Verdict::NotBiharmonic:
      return "not-biharmonic";
    case Verdict::NotIntegrable:
      return "not-integrable";
  }
  return "unknown";
}

Verdict expected_verdict(const FamilySpec& spec) {
  const std::string& id = spec.id;
  const auto [a, b, c] = spec.params;
  if (id == "sphere/great-circle") return Verdict::Harmonic;
  if (id == "sphere/circle" || id == "sphere/circle-reversed") return Verdict::Biharmonic;
  if (id == "sphere/helix") {
    if (a == 0.0) return Verdict::Harmonic;
    return std::abs(a * a + b * b - 1.0) <= 1e-12 ? Verdict::Biharmonic : Verdict::NotBiharmonic;
  }
  if (id == "euclidean/poly") {
    const auto v = euclid_vectors(spec);
    return v[0].isZero(0.0) && v[1].isZero(0.0) ? Verdict::Harmonic : Verdict::Biharmonic;
  }
  if (is_planar(spec)) {
    const auto& p = spec.planar;
    return p[0] == 0.0 && p[1] == 0.0 && p[3] == 0.0 && p[4] == 0.0 ? Verdict::Harmonic
                                                                      : Verdict::Biharmonic;
  }
  return a == 0.0 && b == 0.0 ? Verdict::Harmonic : Verdict::Biharmonic;
}

Tolerances Tolerances::uniform(double tol) { return {tol, tol, tol, tol}; }

double Window::at(int i) const {
  if (samples == 1) return t0;
  return t0 + (t1 - t0) * i / (samples - 1);
}

void Window::validate() const {
  if (samples < 1) throw std::invalid_argument("window: at least one sample");
  if (!(t1 >= t0)) throw std::invalid_argument("window: t1 must not precede t0");
}

void ResidualStats::add(double v) {
  max = std::max(max, v);
  mean += v;
  ++count;
}

void ResidualStats::finish() {
  if (count > 0) mean /= count;
}

Verdict classify(double harmonic_max, double biharmonic_max,
                 std::optional<double> integrability_max, const Tolerances& tol) {
  if (integrability_max && !(*integrability_max <= tol.integrability)) {
    return Verdict::NotIntegrable;
  }
  if (!(biharmonic_max <= tol.biharmonic)) return Verdict::NotBiharmonic;
  if (harmonic_max <= tol.harmonic) return Verdict::Harmonic;
  return Verdict::Biharmonic;
}

std::vector<HomogeneousPoint> integrate_planar_grid(const PlanarFieldPair& fields,
                                                    const GroupElement& x0,
                                                    const GridSpec& grid, double step) {
  grid.validate();
  if (!(step > 0.0)) throw std::invalid_argument("planar grid integration: step must be positive");
  const SymmetricSpace& space = fields.space();
  IntegratorConfig cfg;
  cfg.method = LieMethod::RKMK4;

  // Lift values at every target, integrating outward from 0 in each direction so that
  // each sweep passes through the targets in order.
  auto sweep = [&](const CurveFamily& fam, const GroupElement& start, int count,
                   auto&& target) {
    std::vector<GroupElement> out(static_cast<std::size_t>(count), start);
    for (double sign : {1.0, -1.0}) {
      std::vector<int> order;
      for (int i = 0; i < count; ++i) {
        if (sign * target(i) > 0.0) order.push_back(i);
      }
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return std::abs(target(a)) < std::abs(target(b)); });
      GroupElement g = start;
      double t = 0.0;
      for (int i : order) {
        const double next = target(i);
        if (next != t) {
          cfg.steps = std::max(1, static_cast<int>(std::ceil(std::abs(next - t) / step - 1e-9)));
          g = solve_lift(fam, g, t, next, cfg).psi.back();
          t = next;
        }
        out[static_cast<std::size_t>(i)] = g;
      }
    }
    return out;
  };

  const auto along_x = CurveFamily::finite_difference(
      space, [&fields](double t) { return fields.value(t, 0.0).first; });
  const auto gx = sweep(along_x, x0, grid.nx, [&](int i) { return grid.x(i); });

  std::vector<HomogeneousPoint> out;
  out.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x(i);
    const auto along_y = CurveFamily::finite_difference(
        space, [&fields, x](double t) { return fields.value(x, t).second; });
    const auto gy = sweep(along_y, gx[static_cast<std::size_t>(i)], grid.ny,
                          [&](int j) { return grid.y(j); });
    for (const auto& g : gy) out.push_back(space.project_point(g));
  }
  return out;
}

ResidualReport verify_family(const FamilySpec& spec, const VerifyOptions& options) {
  spec.validate();
  const Tolerances& tol = options.tolerances;
  ResidualReport report;
  report.spec = spec;
  report.space_name = spec_space(spec).name();
  report.planar = is_planar(spec);
  report.expected = expected_verdict(spec);
  report.tolerances = tol;

  bool closed_form_ok = true;
  if (report.planar) {
    const GridSpec& grid = options.grid;
    grid.validate();
    const PlanarFieldPair fields = make_planar_fields(spec);
    for (int i = 0; i < grid.nx; ++i) {
      for (int j = 0; j < grid.ny; ++j) {
        const double x = grid.x(i);
        const double y = grid.y(j);
        report.harmonic.add(norm(harmonic_residual_planar(fields, x, y)));
        report.biharmonic.add(norm(biharmonic_residual_planar(fields, x, y)));
        const auto r = integrability_residuals(fields, x, y);
        report.integrability.add(std::hypot(norm(r.k), norm(r.m)));
        const auto [c1, c2] = separable_cross_terms(fields, x, y);
        report.cross_terms.add(std::max(c1, c2));
      }
    }
    report.integrability.finish();
    report.cross_terms.finish();
    if (options.closed_form_step > 0.0 && !spec.directions) {
      const auto pts = integrate_planar_grid(fields, spec_base(spec), grid,
                                             options.closed_form_step);
      double worst = 0.0;
      for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.ny; ++j) {
          const auto& p = pts[static_cast<std::size_t>(i) * grid.ny + j];
          worst = std::max(worst, point_distance(p, closed_form_point(spec, grid.x(i), grid.y(j))));
        }
      }
      report.closed_form_distance = worst;
      closed_form_ok = worst <= tol.closed_form;
    }
    closed_form_ok = closed_form_ok && report.cross_terms.max <= tol.biharmonic;
  } else {
    const Window& w = options.window;
    w.validate();
    const CurveFamily fam = make_family(spec);
    for (int i = 0; i < w.samples; ++i) {
      const double t = w.at(i);
      report.harmonic.add(norm(harmonic_residual(fam, t)));
      report.biharmonic.add(norm(biharmonic_residual(fam, t)));
    }
    if (options.closed_form_step > 0.0 && has_closed_form(spec)) {
      IntegratorConfig cfg;
      cfg.method = LieMethod::RKMK4;
      double worst = 0.0;
      const GroupElement x0 = spec_base(spec);
      for (double end : {w.t0, w.t1}) {
        if (end == 0.0) continue;
        cfg.steps = std::max(1, static_cast<int>(std::ceil(std::abs(end) / options.closed_form_step - 1e-9)));
        const LiftTrajectory traj = solve_lift(fam, x0, 0.0, end, cfg);
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
          const double t = traj.times[k];
          if (t < w.t0 || t > w.t1) continue;
          worst = std::max(worst, point_distance(traj.points[k], closed_form_point(spec, t)));
        }
      }
      report.closed_form_distance = worst;
      closed_form_ok = worst <= tol.closed_form;
    }
  }
  report.harmonic.finish();
  report.biharmonic.finish();

  report.verdict = classify(report.harmonic.max, report.biharmonic.max,
                            report.planar ? std::optional<double>(report.integrability.max)
                                          : std::nullopt,
                            tol);
  report.matches = report.verdict == report.expected && closed_form_ok;
  return report;
}

}  // namespace bhlab
