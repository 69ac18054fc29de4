#include <doctest.h>

#include "bhlab/catalog.hpp"
#include "bhlab/planar.hpp"
#include "support.hpp"

#include <cmath>

using namespace bhlab;

namespace {

/// A(x, y) = sum_{i + j <= 3} C_ij x^i y^j with exact partials.
struct PolynomialField {
  std::array<std::array<Matrix, 4>, 4> c;

  PlanarJet jet(double x, double y) const {
    auto falling = [](int n, int k) {
      double r = 1.0;
      for (int s = 0; s < k; ++s) r *= n - s;
      return r;
    };
    PlanarJet out;
    const Eigen::Index dim = c[0][0].rows();
    for (int p = 0; p <= 3; ++p) {
      for (int q = 0; p + q <= 3; ++q) {
        Matrix m = Matrix::Zero(dim, dim);
        for (int i = p; i <= 3; ++i) {
          for (int j = q; i + j <= 3; ++j) {
            m += falling(i, p) * falling(j, q) * std::pow(x, i - p) * std::pow(y, j - q) *
                 c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          }
        }
        out.d(p, q) = m;
      }
    }
    return out;
  }
};

PolynomialField random_field(const SymmetricSpace& space, std::mt19937_64& rng,
                             bool horizontal) {
  PolynomialField f;
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      f.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          horizontal ? space.random_m(rng, 0.5) : space.random_algebra(rng, 0.5);
    }
  }
  return f;
}

PlanarFieldPair polynomial_pair(const SymmetricSpace& space, PolynomialField a,
                                PolynomialField b, bool horizontal) {
  return PlanarFieldPair::analytic(
      space, [a, b](double x, double y) { return std::pair{a.jet(x, y), b.jet(x, y)}; },
      horizontal);
}

/// P = p(x) X and Q = q(y) Y with cubic coefficient polynomials.
PlanarFieldPair separable_pair(const SymmetricSpace& space, const Matrix& xd, const Matrix& yd,
                               std::array<double, 4> p, std::array<double, 4> q) {
  PolynomialField a, b;
  for (auto& row : a.c) row.fill(Matrix::Zero(space.dim(), space.dim()));
  for (auto& row : b.c) row.fill(Matrix::Zero(space.dim(), space.dim()));
  for (std::size_t k = 0; k < 4; ++k) {
    a.c[k][0] = p[k] * xd;
    b.c[0][k] = q[k] * yd;
  }
  return polynomial_pair(space, a, b, true);
}

double poly(const std::array<double, 4>& c, double s, int order = 0) {
  double out = 0.0;
  for (int k = order; k < 4; ++k) {
    double f = 1.0;
    for (int r = 0; r < order; ++r) f *= k - r;
    out += f * c[static_cast<std::size_t>(k)] * std::pow(s, k - order);
  }
  return out;
}

ConformalJet bump(double x, double y) {
  // mu = 1 + 0.1 x^2 + 0.05 x y + 0.2 y
  return {1.0 + 0.1 * x * x + 0.05 * x * y + 0.2 * y, 0.2 * x + 0.05 * y, 0.05 * x + 0.2,
          0.2, 0.05, 0.0};
}

}  // namespace

TEST_SUITE("planar") {
  TEST_CASE("constant horizontal fields are harmonic and biharmonic") {
    const auto s = SymmetricSpace::sphere(3);
    std::mt19937_64 rng(31);
    const Matrix x = s.random_m(rng), y = s.random_m(rng);
    const auto f = separable_pair(s, x, y, {1.3, 0, 0, 0}, {-0.4, 0, 0, 0});
    CHECK(norm(harmonic_residual_planar(f, 0.3, -0.2)) == 0.0);
    CHECK(norm(biharmonic_residual_planar(f, 0.3, -0.2)) < 1e-14);
  }

  TEST_CASE("harmonic residual of a quadratic coefficient") {
    const auto s = SymmetricSpace::sphere(2);
    std::mt19937_64 rng(32);
    const Matrix xd = s.random_m(rng);
    const double a1 = 0.7, b1 = -1.1, c1 = 0.3;
    const auto f = separable_pair(s, xd, xd, {c1, b1, a1, 0.0}, {0, 0, 0, 0});
    for (auto [x, y] : {std::pair{0.5, 1.0}, std::pair{-1.2, 0.1}}) {
      CHECK(norm(harmonic_residual_planar(f, x, y) - (2.0 * a1 * x + b1) * xd) < 1e-14);
    }
  }

  TEST_CASE("separable family with vanishing a and b is harmonic") {
    for (auto kind : {SpaceKind::Sphere, SpaceKind::ComplexProjective,
                      SpaceKind::QuaternionProjective, SpaceKind::EuclideanType}) {
      auto spec = default_spec("planar/separable", kind);
      spec.planar = {0.0, 0.0, 1.2, 0.0, 0.0, -0.7};
      const auto f = make_planar_fields(spec);
      for (int i = 0; i < 5; ++i) {
        const double x = -1.0 + 0.5 * i, y = 0.3 * i - 0.6;
        CHECK(norm(harmonic_residual_planar(f, x, y)) <= 1e-12);
        CHECK(norm(biharmonic_residual_planar(f, x, y)) <= 1e-8);
      }
    }
  }

  TEST_CASE("cubic-phase separable maps are biharmonic") {
    for (auto kind : {SpaceKind::Sphere, SpaceKind::ComplexProjective,
                      SpaceKind::QuaternionProjective, SpaceKind::EuclideanType}) {
      auto spec = default_spec("planar/separable", kind);
      spec.planar = {1.0, -0.5, 0.7, -0.3, 0.8, 1.1};
      const auto f = make_planar_fields(spec);
      const GridSpec g;
      for (int i = 1; i + 1 < g.nx; i += 3) {
        for (int j = 1; j + 1 < g.ny; j += 3) {
          CHECK(norm(biharmonic_residual_planar(f, g.x(i), g.y(j))) <= 1e-12);
          const auto r = integrability_residuals(f, g.x(i), g.y(j));
          CHECK(norm(r.k) <= 1e-12);
          CHECK(norm(r.m) <= 1e-12);
        }
      }
    }
  }

  TEST_CASE("general and horizontal biharmonic expressions agree") {
    std::mt19937_64 rng(33);
    for (const auto& space : test::all_models()) {
      for (int trial = 0; trial < 20; ++trial) {
        const Matrix xd = space.random_m(rng);
        std::array<double, 4> p, q;
        for (auto& v : p) v = test::uniform(rng);
        for (auto& v : q) v = test::uniform(rng);
        // Commuting pair: the same direction in both slots.
        const auto f = separable_pair(space, xd, 0.7 * xd, p, q);
        const double x = test::uniform(rng), y = test::uniform(rng);
        const auto [pj, qj] = f.jet(x, y);
        CHECK(norm(biharmonic_residual_planar(f, x, y) -
                   horizontal_biharmonic_residual_planar(space, pj, qj)) <= 1e-9);
      }
    }
  }

  TEST_CASE("general and horizontal expressions agree on arbitrary horizontal fields") {
    std::mt19937_64 rng(34);
    for (const auto& space : test::all_models()) {
      const auto f = polynomial_pair(space, random_field(space, rng, true),
                                     random_field(space, rng, true), true);
      const double x = test::uniform(rng), y = test::uniform(rng);
      const auto [pj, qj] = f.jet(x, y);
      CHECK(norm(biharmonic_residual_planar(f, x, y) -
                 horizontal_biharmonic_residual_planar(space, pj, qj)) <= 1e-9);
    }
  }

  TEST_CASE("biharmonic residual against a differenced Laplacian") {
    // Independent path for the conformal case: Laplacian of mu^-2 H by 4th-order
    // central differences of the harmonic residual.
    std::mt19937_64 rng(35);
    for (const auto& space : test::all_models()) {
      const auto f = polynomial_pair(space, random_field(space, rng, false),
                                     random_field(space, rng, false), false)
                         .with_conformal(bump);
      const double x = 0.3, y = -0.4, h = 5e-3;
      auto g = [&](double u, double v) { return scaled_harmonic_residual_planar(f, u, v); };
      const std::array<double, 5> w{-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
      Matrix lap = Matrix::Zero(space.dim(), space.dim());
      for (int k = 0; k < 5; ++k) {
        lap += w[static_cast<std::size_t>(k)] * (g(x + (k - 2) * h, y) + g(x, y + (k - 2) * h));
      }
      lap /= h * h;
      const double mu = bump(x, y).v;
      const Matrix hm = harmonic_residual_planar(f, x, y);
      const auto [ax, ay] = f.value(x, y);
      const Matrix pm = space.proj_m(ax), qm = space.proj_m(ay);
      const Matrix expected =
          -lap / (mu * mu) +
          (bracket(bracket(hm, pm), pm) + bracket(bracket(hm, qm), qm)) / std::pow(mu, 4);
      CHECK(norm(biharmonic_residual_planar(f, x, y) - expected) <= 1e-6);
    }
  }

  TEST_CASE("non-commuting directions leave a k-residual") {
    const auto s = SymmetricSpace::sphere(3);
    std::mt19937_64 rng(36);
    const Matrix xd = s.random_m(rng), yd = s.random_m(rng);
    const std::array<double, 4> p{0.2, 1.0, -0.5, 0.1}, q{-0.3, 0.4, 0.0, 0.6};
    const auto f = separable_pair(s, xd, yd, p, q);
    for (auto [x, y] : {std::pair{0.4, -0.9}, std::pair{1.0, 0.5}}) {
      const auto r = integrability_residuals(f, x, y);
      const Matrix expected = poly(p, x) * poly(q, y) * bracket(xd, yd);
      CHECK(norm(expected) > 1e-3);
      CHECK(norm(r.k - expected) < 1e-13);
      CHECK(norm(r.m) < 1e-13);
      const auto [c1, c2] = separable_cross_terms(f, x, y);
      CHECK(std::max(c1, c2) > 1e-6);
    }
  }

  TEST_CASE("commuting separable pairs have no cross terms") {
    const auto s = SymmetricSpace::complex_projective(2);
    std::mt19937_64 rng(37);
    const Matrix xd = s.random_m(rng);
    const auto f = separable_pair(s, xd, -2.0 * xd, {0.1, 0.2, 0.3, 0.4}, {1.0, -1.0, 0.5, 0.0});
    const auto [c1, c2] = separable_cross_terms(f, 0.7, -0.2);
    CHECK(c1 < 1e-13);
    CHECK(c2 < 1e-13);
  }

  TEST_CASE("pull-back of an actual lift is integrable") {
    // psi(x, y) = exp(x X) exp(y Y) with non-commuting X, Y; alpha = psi^-1 d psi by
    // 4th-order differences of psi, partials of alpha by the finite-difference fallback.
    std::mt19937_64 rng(38);
    for (const auto& space : test::all_models()) {
      const Matrix xd = space.random_algebra(rng), yd = space.random_algebra(rng);
      auto psi = [=](double x, double y) { return Matrix(expm(x * xd) * expm(y * yd)); };
      const auto f = PlanarFieldPair::finite_difference(space, [=](double x, double y) {
        const double h = 1e-3;
        auto d = [&](double dx, double dy) {
          return Matrix((psi(x - 2 * h * dx, y - 2 * h * dy) - 8.0 * psi(x - h * dx, y - h * dy) +
                         8.0 * psi(x + h * dx, y + h * dy) - psi(x + 2 * h * dx, y + 2 * h * dy)) /
                        (12.0 * h));
        };
        const Matrix inv = psi(x, y).inverse();
        return std::pair{Matrix(inv * d(1, 0)), Matrix(inv * d(0, 1))};
      });
      double worst = 0.0;
      for (double x : {-0.5, 0.0, 0.6}) {
        for (double y : {-0.3, 0.4}) {
          const auto r = integrability_residuals(f, x, y);
          worst = std::max({worst, norm(r.k), norm(r.m)});
        }
      }
      CHECK(worst <= 1e-8);
    }
  }

  TEST_CASE("finite-difference fallback matches analytic partials") {
    std::mt19937_64 rng(39);
    const auto s = SymmetricSpace::quaternion_projective(2);
    const auto a = polynomial_pair(s, random_field(s, rng, true), random_field(s, rng, true), true);
    const auto fd = PlanarFieldPair::finite_difference(
        s, [a](double x, double y) { return a.value(x, y); }, true);
    CHECK(fd.source() == DerivativeSource::FiniteDifference);
    const auto [ja, jb] = a.jet(0.2, -0.6);
    const auto [fa, fb] = fd.jet(0.2, -0.6);
    for (int i = 0; i <= 3; ++i) {
      for (int j = 0; i + j <= 3; ++j) {
        const double tol = i + j == 3 ? 1e-5 : 1e-8;
        CHECK(norm(ja.d(i, j) - fa.d(i, j)) < tol);
        CHECK(norm(jb.d(i, j) - fb.d(i, j)) < tol);
      }
    }
    CHECK(norm(biharmonic_residual_planar(a, 0.2, -0.6) -
               biharmonic_residual_planar(fd, 0.2, -0.6)) < 1e-5);
    const auto off = PlanarFieldPair::finite_difference(
        s, [a](double x, double y) { return a.value(x, y); }, true, false);
    CHECK_THROWS_AS(off.jet(0.0, 0.0), MissingDerivatives);
  }

  TEST_CASE("horizontal declaration is enforced") {
    const auto s = SymmetricSpace::sphere(2);
    std::mt19937_64 rng(40);
    const auto f = polynomial_pair(s, random_field(s, rng, false), random_field(s, rng, false),
                                   true);
    CHECK_THROWS_AS(f.jet(0.1, 0.1), ConstraintViolation);
  }

  TEST_CASE("conformal factor must be positive") {
    const auto s = SymmetricSpace::sphere(2);
    std::mt19937_64 rng(41);
    const auto f = separable_pair(s, s.random_m(rng), s.random_m(rng), {1, 0, 0, 0}, {1, 0, 0, 0})
                       .with_conformal([](double, double) { return ConformalJet{-1.0}; });
    CHECK_THROWS_AS(f.conformal(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(biharmonic_residual_planar(f, 0.0, 0.0), std::domain_error);
  }

  TEST_CASE("constant rescaling of mu scales the harmonic residual") {
    std::mt19937_64 rng(42);
    const auto s = SymmetricSpace::sphere(3);
    const auto base = separable_pair(s, s.random_m(rng), s.random_m(rng), {0.1, 0.5, -0.2, 0.3},
                                     {0.0, 1.0, 0.4, 0.0});
    for (double lambda : {0.5, 3.0}) {
      const auto scaled = base.with_conformal([lambda](double, double) {
        return ConformalJet{lambda};
      });
      for (double x : {-0.4, 0.8}) {
        const Matrix r0 = scaled_harmonic_residual_planar(base, x, 0.3);
        const Matrix r1 = scaled_harmonic_residual_planar(scaled, x, 0.3);
        CHECK(norm(r1 - r0 / (lambda * lambda)) < 1e-14);
      }
    }
  }

  TEST_CASE("separable residual splits into curve residuals") {
    std::mt19937_64 rng(43);
    for (const auto& space : test::all_models()) {
      const Matrix xd = space.random_m(rng);
      const std::array<double, 4> p{0.3, -0.2, 0.9, 0.0}, q{1.0, 0.5, -0.4, 0.0};
      const auto f = separable_pair(space, xd, xd, p, q);
      auto curve = [&](const std::array<double, 4>& c) {
        return CurveFamily::analytic(space, [=](double t) {
          return CurveJet{poly(c, t) * xd, poly(c, t, 1) * xd, poly(c, t, 2) * xd,
                          poly(c, t, 3) * xd};
        });
      };
      const auto cp = curve(p), cq = curve(q);
      for (auto [x, y] : {std::pair{0.2, 0.7}, std::pair{-0.9, -0.1}}) {
        const Matrix sum = biharmonic_residual(cp, x) + biharmonic_residual(cq, y);
        CHECK(norm(biharmonic_residual_planar(f, x, y) - sum) <= 1e-10);
      }
    }
  }

  TEST_CASE("separable map basics") {
    const auto spec = default_spec("planar/separable", SpaceKind::Sphere);
    auto with_coeffs = spec;
    with_coeffs.planar = {1.0, -0.5, 0.7, -0.3, 0.8, 1.1};
    const SeparableMap map = make_separable_map(with_coeffs);
    CHECK(norm(map.psi(0.0, 0.0).matrix - Matrix::Identity(4, 4)) < 1e-15);

    const double h = 1e-3;
    auto diff = [&](double x, double y, double ex, double ey) {
      auto at = [&](int k) { return map.psi(x + k * h * ex, y + k * h * ey).matrix; };
      return Matrix((at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) / (12.0 * h));
    };
    for (auto [x, y] : {std::pair{0.4, -0.3}, std::pair{-0.8, 0.6}}) {
      const Matrix psi = map.psi(x, y).matrix;
      const auto [pf, qf] = map.fields().value(x, y);
      CHECK(norm(diff(x, y, 1, 0) - psi * pf) < 1e-8);
      CHECK(norm(diff(x, y, 0, 1) - psi * qf) < 1e-8);
    }
  }

  TEST_CASE("sphere separable point formula") {
    auto spec = default_spec("planar/separable", SpaceKind::Sphere);
    spec.planar = {1.0, -0.5, 0.7, -0.3, 0.8, 1.1};
    const int n = spec.n;
    const SeparableMap map = make_separable_map(spec);
    for (auto [x, y] : {std::pair{0.4, -0.3}, std::pair{-1.0, 1.0}}) {
      const double d = cubic_phase(1.0, -0.5, 0.7, x)[0] + cubic_phase(-0.3, 0.8, 1.1, y)[0];
      const double r = std::sqrt(static_cast<double>(n));
      ComplexVector expected(n + 1);
      expected(0) = std::cos(r * d);
      for (int k = 1; k <= n; ++k) expected(k) = std::sin(r * d) / r;
      CHECK((map.point(x, y).coords - expected).norm() < 1e-9);
    }
  }

  TEST_CASE("cubic phase derivatives") {
    const auto d = cubic_phase(0.6, -1.0, 2.0, 1.5);
    CHECK(d[0] == doctest::Approx(0.2 * 3.375 - 0.5 * 2.25 + 3.0));
    CHECK(d[1] == doctest::Approx(0.6 * 2.25 - 1.5 + 2.0));
    CHECK(d[2] == doctest::Approx(1.8 - 1.0));
    CHECK(d[3] == doctest::Approx(1.2));
  }

  TEST_CASE("separable maps reject non-commuting directions") {
    const auto s = SymmetricSpace::sphere(3);
    std::mt19937_64 rng(44);
    const Matrix xd = s.random_m(rng), yd = s.random_m(rng);
    const GroupElement id = identity_element(4, GroupKind::Orthogonal);
    CHECK_THROWS_AS(build_separable_map(s, xd, yd, {}, id), ConstraintViolation);
    CHECK_THROWS_AS(build_separable_map(s, s.random_k(rng), s.random_k(rng), {}, id),
                    ConstraintViolation);
    CHECK_THROWS_AS(
        build_separable_map(s, xd, xd, {}, identity_element(3, GroupKind::Orthogonal)),
        DimensionMismatch);
  }

  TEST_CASE("grid validation") {
    GridSpec g;
    CHECK_NOTHROW(g.validate());
    CHECK(g.x(0) == -1.0);
    CHECK(g.y(20) == 1.0);
    g.nx = 2;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }
}
