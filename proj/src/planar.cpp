#include "bhlab/planar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bhlab {

namespace {

constexpr double kHorizontalTolerance = 1e-12;
constexpr double kCommuteTolerance = 1e-12;

// 5-point central stencils on offsets -2..2 (unscaled by h).
constexpr std::array<double, 5> kD0 = {0.0, 0.0, 1.0, 0.0, 0.0};
constexpr std::array<double, 5> kD1 = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
constexpr std::array<double, 5> kD2 = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
constexpr std::array<double, 5> kD3 = {-0.5, 1.0, 0.0, -1.0, 0.5};
constexpr const std::array<double, 5>* kStencil[] = {&kD0, &kD1, &kD2, &kD3};

PlanarJet split_jet(const PlanarJet& a, bool k_part, const SymmetricSpace& space) {
  PlanarJet out;
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; i + j <= 3; ++j) {
      out.d(i, j) = k_part ? space.proj_k(a.d(i, j)) : space.proj_m(a.d(i, j));
    }
  }
  return out;
}

// Partials of [A, B] with A, B given by jets: sum over Leibniz terms.
Matrix bracket_partial(const PlanarJet& a, const PlanarJet& b, int i, int j) {
  auto binom = [](int n, int k) {
    int r = 1;
    for (int s = 1; s <= k; ++s) r = r * (n - k + s) / s;
    return r;
  };
  Matrix out = Matrix::Zero(a.v.rows(), a.v.cols());
  for (int p = 0; p <= i; ++p) {
    for (int q = 0; q <= j; ++q) {
      out += static_cast<double>(binom(i, p) * binom(j, q)) *
             bracket(a.d(p, q), b.d(i - p, j - q));
    }
  }
  return out;
}

struct Split {
  PlanarJet xk, xm, yk, ym;
};

Split split_fields(const PlanarFieldPair& fields, double x, double y) {
  const auto [ax, ay] = fields.jet(x, y);
  const SymmetricSpace& s = fields.space();
  return {split_jet(ax, true, s), split_jet(ax, false, s), split_jet(ay, true, s),
          split_jet(ay, false, s)};
}

// Partial (i, j) of the harmonic expression H, for i + j <= 2.
Matrix harmonic_partial(const Split& f, int i, int j) {
  return f.xm.d(i + 1, j) + f.ym.d(i, j + 1) + bracket_partial(f.xk, f.xm, i, j) +
         bracket_partial(f.yk, f.ym, i, j);
}

}  // namespace

const Matrix& PlanarJet::d(int i, int j) const {
  return const_cast<PlanarJet*>(this)->d(i, j);
}

Matrix& PlanarJet::d(int i, int j) {
  switch (i * 4 + j) {
    case 0: return v;
    case 4: return x;
    case 1: return y;
    case 8: return xx;
    case 5: return xy;
    case 2: return yy;
    case 12: return xxx;
    case 9: return xxy;
    case 6: return xyy;
    case 3: return yyy;
    default: throw std::out_of_range("PlanarJet::d: total order must be at most 3");
  }
}

PlanarFieldPair PlanarFieldPair::analytic(SymmetricSpace space, JetFn jet, bool horizontal) {
  PlanarFieldPair f(space, DerivativeSource::Analytic, horizontal);
  f.jet_ = std::move(jet);
  return f;
}

PlanarFieldPair PlanarFieldPair::finite_difference(SymmetricSpace space, ValueFn value,
                                                   bool horizontal, bool fallback_enabled) {
  PlanarFieldPair f(space, DerivativeSource::FiniteDifference, horizontal);
  f.value_ = std::move(value);
  f.fallback_enabled_ = fallback_enabled;
  return f;
}

PlanarFieldPair PlanarFieldPair::with_conformal(ConformalFn mu) const {
  PlanarFieldPair copy = *this;
  copy.mu_ = std::move(mu);
  return copy;
}

std::pair<Matrix, Matrix> PlanarFieldPair::value(double x, double y) const {
  if (jet_) {
    auto j = jet_(x, y);
    return {std::move(j.first.v), std::move(j.second.v)};
  }
  return value_(x, y);
}

std::pair<PlanarJet, PlanarJet> PlanarFieldPair::jet(double x, double y) const {
  std::pair<PlanarJet, PlanarJet> j;
  if (jet_) {
    j = jet_(x, y);
  } else if (fallback_enabled_) {
    j = central_jet(x, y);
  } else {
    throw MissingDerivatives("planar fields provide no partials and the finite-difference "
                             "fallback is disabled");
  }
  if (horizontal_) {
    const double kx = norm(space_.proj_k(j.first.v));
    const double ky = norm(space_.proj_k(j.second.v));
    if (kx > kHorizontalTolerance || ky > kHorizontalTolerance) {
      std::ostringstream os;
      os << "horizontal planar fields have a k-part of norm " << std::max(kx, ky) << " at ("
         << x << ", " << y << ")";
      throw ConstraintViolation(os.str(), std::max(kx, ky));
    }
  }
  return j;
}

std::pair<PlanarJet, PlanarJet> PlanarFieldPair::central_jet(double x, double y) const {
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  std::pair<PlanarJet, PlanarJet> out;

  auto sweep = [&](double h, const std::vector<std::pair<int, int>>& orders) {
    std::array<std::array<std::pair<Matrix, Matrix>, 5>, 5> f;
    for (int a = 0; a < 5; ++a) {
      for (int b = 0; b < 5; ++b) f[a][b] = value_(x + (a - 2) * h, y + (b - 2) * h);
    }
    for (auto [i, j] : orders) {
      const auto& wx = *kStencil[i];
      const auto& wy = *kStencil[j];
      Matrix sx = Matrix::Zero(f[2][2].first.rows(), f[2][2].first.cols());
      Matrix sy = sx;
      for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) {
          const double w = wx[a] * wy[b];
          if (w == 0.0) continue;
          sx += w * f[a][b].first;
          sy += w * f[a][b].second;
        }
      }
      const double denom = std::pow(h, i + j);
      out.first.d(i, j) = sx / denom;
      out.second.d(i, j) = sy / denom;
    }
  };
  sweep(1e-3 * scale, {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
  sweep(5e-3 * scale, {{3, 0}, {2, 1}, {1, 2}, {0, 3}});
  return out;
}

ConformalJet PlanarFieldPair::conformal(double x, double y) const {
  if (!mu_) return {};
  const ConformalJet m = mu_(x, y);
  if (!(m.v > 0.0)) {
    std::ostringstream os;
    os << "conformal factor must be positive, got " << m.v << " at (" << x << ", " << y << ")";
    throw std::domain_error(os.str());
  }
  return m;
}

Matrix harmonic_residual_planar(const PlanarFieldPair& fields, double x, double y) {
  const Split f = split_fields(fields, x, y);
  return fields.space().proj_m(harmonic_partial(f, 0, 0));
}

Matrix scaled_harmonic_residual_planar(const PlanarFieldPair& fields, double x, double y) {
  const ConformalJet mu = fields.conformal(x, y);
  return harmonic_residual_planar(fields, x, y) / (mu.v * mu.v);
}

Matrix biharmonic_residual_planar(const PlanarFieldPair& fields, double x, double y) {
  const Split f = split_fields(fields, x, y);
  const ConformalJet mu = fields.conformal(x, y);

  const Matrix h = harmonic_partial(f, 0, 0);
  const Matrix hx = harmonic_partial(f, 1, 0);
  const Matrix hy = harmonic_partial(f, 0, 1);
  const Matrix hxx = harmonic_partial(f, 2, 0);
  const Matrix hyy = harmonic_partial(f, 0, 2);

  // g = mu^{-2} and its partials.
  const double m1 = 1.0 / mu.v;
  const double g = m1 * m1;
  const double gx = -2.0 * m1 * m1 * m1 * mu.x;
  const double gy = -2.0 * m1 * m1 * m1 * mu.y;
  const double gxx = 6.0 * g * g * mu.x * mu.x - 2.0 * m1 * m1 * m1 * mu.xx;
  const double gyy = 6.0 * g * g * mu.y * mu.y - 2.0 * m1 * m1 * m1 * mu.yy;

  const Matrix lap = (gxx + gyy) * h + 2.0 * gx * hx + 2.0 * gy * hy + g * (hxx + hyy);
  const Matrix curvature =
      bracket(bracket(h, f.xm.v), f.xm.v) + bracket(bracket(h, f.ym.v), f.ym.v);
  return fields.space().proj_m(-g * lap + g * g * curvature);
}

Matrix horizontal_biharmonic_residual_planar(const SymmetricSpace& space, const PlanarJet& p,
                                             const PlanarJet& q) {
  const Matrix P = space.proj_m(p.v);
  const Matrix Q = space.proj_m(q.v);
  const Matrix div = space.proj_m(p.x + q.y);
  const Matrix third = space.proj_m(p.xxx + p.xyy + q.xxy + q.yyy);
  return -third + bracket(bracket(div, P), P) + bracket(bracket(div, Q), Q);
}

IntegrabilityResiduals integrability_residuals(const PlanarFieldPair& fields, double x,
                                               double y) {
  const Split f = split_fields(fields, x, y);
  IntegrabilityResiduals r;
  r.k = -f.xk.y + f.yk.x + bracket(f.xk.v, f.yk.v) + bracket(f.xm.v, f.ym.v);
  r.m = -f.xm.y + f.ym.x + bracket(f.xk.v, f.ym.v) + bracket(f.xm.v, f.yk.v);
  return r;
}

std::pair<double, double> separable_cross_terms(const PlanarFieldPair& fields, double x,
                                                double y) {
  const Split f = split_fields(fields, x, y);
  const double a = norm(bracket(bracket(f.ym.y, f.xm.v), f.xm.v));
  const double b = norm(bracket(bracket(f.xm.x, f.ym.v), f.ym.v));
  return {a, b};
}

void GridSpec::validate() const {
  if (nx < 3 || ny < 3) throw std::invalid_argument("grid: at least 3 samples per axis");
  if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("grid: empty rectangle");
}

double GridSpec::x(int i) const { return x0 + (x1 - x0) * i / (nx - 1); }
double GridSpec::y(int j) const { return y0 + (y1 - y0) * j / (ny - 1); }

std::array<double, 4> cubic_phase(double a, double b, double c, double s) {
  return {((a / 3.0) * s + b / 2.0) * s * s + c * s, (a * s + b) * s + c, 2.0 * a * s + b,
          2.0 * a};
}

SeparableMap::SeparableMap(SymmetricSpace space, Matrix x_dir, Matrix y_dir,
                           SeparableCoefficients coeffs, GroupElement x0)
    : space_(space),
      x_dir_(std::move(x_dir)),
      y_dir_(std::move(y_dir)),
      coeffs_(coeffs),
      x0_(std::move(x0)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw NonFiniteEntry("separable map: non-finite coefficient");
  }
  if (x0_.matrix.rows() != space_.dim() || x0_.matrix.cols() != space_.dim()) {
    throw DimensionMismatch("separable map: base element has the wrong size");
  }
  for (const Matrix* d : {&x_dir_, &y_dir_}) {
    require_same_shape(*d, x0_.matrix, "separable map direction");
    const auto [k, m] = space_.project(*d);
    if (norm(k) > kCommuteTolerance) {
      throw ConstraintViolation("separable map: direction is not in m", norm(k));
    }
  }
  const double c = norm(bracket(x_dir_, y_dir_));
  if (c > kCommuteTolerance) {
    std::ostringstream os;
    os << "separable map: directions do not commute, ||[X, Y]|| = " << c;
    throw ConstraintViolation(os.str(), c);
  }
}

GroupElement SeparableMap::psi(double x, double y) const {
  const double dx = cubic_phase(coeffs_[0], coeffs_[1], coeffs_[2], x)[0];
  const double dy = cubic_phase(coeffs_[3], coeffs_[4], coeffs_[5], y)[0];
  return x0_ * exp_group(dx * x_dir_ + dy * y_dir_, x0_.kind);
}

HomogeneousPoint SeparableMap::point(double x, double y) const {
  return space_.project_point(psi(x, y));
}

PlanarFieldPair SeparableMap::fields() const {
  return separable_fields(space_, x_dir_, y_dir_, coeffs_);
}

PlanarFieldPair separable_fields(const SymmetricSpace& space, const Matrix& X, const Matrix& Y,
                                 const SeparableCoefficients& c) {
  require_same_shape(X, Y, "separable fields");
  if (X.rows() != space.dim()) throw DimensionMismatch("separable fields: wrong matrix size");
  return PlanarFieldPair::analytic(
      space,
      [X, Y, c](double x, double y) {
        const Matrix zero = Matrix::Zero(X.rows(), X.cols());
        const auto px = cubic_phase(c[0], c[1], c[2], x);
        const auto qy = cubic_phase(c[3], c[4], c[5], y);
        // P = d_x' X depends on x only, Q = d_y' Y on y only.
        auto coef = [](const std::array<double, 4>& phase, int order) {
          return order < 3 ? phase[order + 1] : 0.0;
        };
        PlanarJet p;
        PlanarJet q;
        for (int i = 0; i <= 3; ++i) {
          for (int j = 0; i + j <= 3; ++j) {
            p.d(i, j) = j == 0 ? Matrix(coef(px, i) * X) : zero;
            q.d(i, j) = i == 0 ? Matrix(coef(qy, j) * Y) : zero;
          }
        }
        return std::make_pair(std::move(p), std::move(q));
      },
      true);
}

SeparableMap build_separable_map(const SymmetricSpace& space, const Matrix& x_dir,
                                 const Matrix& y_dir, const SeparableCoefficients& coeffs,
                                 const GroupElement& x0) {
  return SeparableMap(space, x_dir, y_dir, coeffs, x0);
}

}  // namespace bhlab
