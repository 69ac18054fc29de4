#include <doctest.h>

#include "bhlab/catalog.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <limits>

using namespace bhlab;

namespace {

bool has_cubic_phase(const std::string& id) {
  return id == "sphere/axis" || id.starts_with("cpn/") || id.starts_with("hpn/") ||
         id == "euclidean/poly";
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("ids resolve and unknown ids throw") {
    const auto ids = catalog_ids();
    CHECK(ids.size() == 14);
    for (const auto& id : ids) {
      const auto spec = default_spec(id);
      CHECK(spec.id == id);
      CHECK_NOTHROW(spec.validate());
    }
    CHECK_THROWS_AS(default_spec("sphere/nope"), UnknownFamily);
  }

  TEST_CASE("spec validation") {
    auto spec = default_spec("sphere/axis");
    spec.index = spec.n + 1;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = default_spec("sphere/axis");
    spec.params[1] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = default_spec("sphere/helix");
    spec.n = 2;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = default_spec("cpn/case-i");
    spec.space = SpaceKind::Sphere;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  }

  TEST_CASE("sphere axis with unit constant phase") {
    auto spec = default_spec("sphere/axis");
    spec.params = {0.0, 0.0, 1.0};
    const auto fam = make_family(spec);
    RealVector e1 = RealVector::Zero(spec.n);
    e1(0) = 1.0;
    for (double t : {-1.0, 0.0, 2.0}) {
      CHECK(norm(fam.value(t) - sphere_m(e1)) == 0.0);
      CHECK(norm(fam.jet(t).d1) == 0.0);
    }
  }

  TEST_CASE("complex projective case ii coordinates") {
    auto spec = default_spec("cpn/case-ii");
    spec.params = {0.5, -1.0, 2.0};
    const auto fam = make_family(spec);
    const auto& s = fam.space();
    for (double t : {-0.5, 1.5}) {
      const double d = 0.5 * t * t - t + 2.0;
      const ComplexVector expected = ComplexVector::Constant(spec.n, Complex(0.0, d));
      CHECK((s.m_coords(fam.value(t)) - expected).norm() < 1e-14);
    }
  }

  TEST_CASE("zero parameters give a zero family") {
    for (const auto& id : catalog_ids()) {
      if (!has_cubic_phase(id)) continue;
      auto spec = default_spec(id);
      spec.params = {0.0, 0.0, 0.0};
      const auto fam = make_family(spec);
      for (double t : {-1.0, 0.3}) {
        CHECK(norm(fam.value(t)) == 0.0);
        CHECK(norm(harmonic_residual(fam, t)) == 0.0);
        CHECK(norm(biharmonic_residual(fam, t)) == 0.0);
      }
    }
  }

  TEST_CASE("catalogued families are horizontal") {
    std::mt19937_64 rng(61);
    for (const auto& id : catalog_ids()) {
      if (id == "planar/separable") continue;
      const auto fam = make_family(default_spec(id));
      for (int k = 0; k < 5; ++k) {
        const double t = test::uniform(rng, -2.0, 2.0);
        CHECK(norm(fam.space().proj_k(fam.value(t))) == 0.0);
        CHECK(fam.derivative_mismatch(t) < 1e-6);
      }
    }
  }

  TEST_CASE("sphere axis closed form") {
    auto spec = default_spec("sphere/axis");
    spec.index = 2;
    spec.params = {0.0, 0.0, 1.0};
    CHECK(point_distance(closed_form_point(spec, 0.0), spec_space(spec).base_point()) == 0.0);
    for (double t : {0.4, -1.7}) {
      ComplexVector expected = ComplexVector::Zero(spec.n + 1);
      expected(0) = std::cos(t);
      expected(2) = std::sin(t);
      CHECK((closed_form_point(spec, t).coords - expected).norm() < 1e-15);
    }
  }

  TEST_CASE("closed forms have unit representatives") {
    for (const auto& id : catalog_ids()) {
      auto spec = default_spec(id);
      if (!has_closed_form(spec) || is_planar(spec) || id.starts_with("euclidean")) continue;
      spec.params = {1.0, -0.5, 0.7};
      for (double t : {-2.0, -0.3, 1.1}) {
        CHECK(std::abs(closed_form_point(spec, t).coords.norm() - 1.0) < 1e-14);
      }
    }
  }

  TEST_CASE("complex projective case iii amplitude identity") {
    for (int n : {1, 2, 5}) {
      const double amp = std::abs(Complex(1.0, 1.0) / std::sqrt(2.0 * n));
      for (double d : {0.0, 0.7, 2.9}) {
        const double lhs = std::pow(std::cos(std::sqrt(2.0 * n) * d), 2) +
                           n * amp * amp * std::pow(std::sin(std::sqrt(2.0 * n) * d), 2);
        CHECK(std::abs(lhs - 1.0) < 1e-15);
      }
    }
  }

  TEST_CASE("cases without a displayed curve") {
    for (const char* id : {"sphere/circle", "sphere/circle-reversed", "sphere/helix"}) {
      const auto spec = default_spec(id);
      CHECK(!has_closed_form(spec));
      CHECK_THROWS_AS(closed_form_point(spec, 0.5), std::logic_error);
    }
  }

  TEST_CASE("closed forms agree with the integrator") {
    for (const auto& id : catalog_ids()) {
      auto spec = default_spec(id);
      if (!has_closed_form(spec) || is_planar(spec)) continue;
      if (has_cubic_phase(id)) spec.params = {1.0, -0.5, 0.7};
      const auto fam = make_family(spec);
      IntegratorConfig cfg;
      cfg.steps = 2000;
      const auto up = solve_lift(fam, spec_base(spec), 0.0, 2.0, cfg);
      const auto down = solve_lift(fam, spec_base(spec), 0.0, -2.0, cfg);
      double worst = 0.0;
      for (const auto* traj : {&up, &down}) {
        for (std::size_t i = 0; i < traj->times.size(); i += 20) {
          worst = std::max(worst, point_distance(traj->points[i],
                                                 closed_form_point(spec, traj->times[i])));
        }
      }
      CAPTURE(id);
      CHECK(worst <= 1e-7);
    }
  }

  TEST_CASE("planar closed forms agree with the integrated grid") {
    for (auto kind : {SpaceKind::Sphere, SpaceKind::ComplexProjective,
                      SpaceKind::QuaternionProjective, SpaceKind::EuclideanType}) {
      auto spec = default_spec("planar/separable", kind);
      spec.planar = {1.0, -0.5, 0.7, -0.3, 0.8, 1.1};
      const GridSpec grid{-1.0, 1.0, 5, -1.0, 1.0, 5};
      const auto pts = integrate_planar_grid(make_planar_fields(spec), spec_base(spec), grid, 1e-3);
      REQUIRE(pts.size() == 25);
      double worst = 0.0;
      for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.ny; ++j) {
          worst = std::max(worst, point_distance(pts[static_cast<std::size_t>(i * grid.ny + j)],
                                                 closed_form_point(spec, grid.x(i), grid.y(j))));
        }
      }
      CHECK(worst <= 1e-7);
    }
  }

  TEST_CASE("expected verdicts") {
    auto spec = default_spec("sphere/axis");
    spec.params = {0.0, 0.0, 2.0};
    CHECK(expected_verdict(spec) == Verdict::Harmonic);
    spec.params = {0.0, 1e-3, 2.0};
    CHECK(expected_verdict(spec) == Verdict::Biharmonic);
    CHECK(expected_verdict(default_spec("sphere/great-circle")) == Verdict::Harmonic);
    CHECK(expected_verdict(default_spec("sphere/circle")) == Verdict::Biharmonic);
    auto helix = default_spec("sphere/helix");
    CHECK(expected_verdict(helix) == Verdict::Biharmonic);
    helix.params = {0.5, 0.5, 0.0};
    CHECK(expected_verdict(helix) == Verdict::NotBiharmonic);
    helix.params = {0.0, 0.3, 0.0};
    CHECK(expected_verdict(helix) == Verdict::Harmonic);
    auto planar = default_spec("planar/separable");
    CHECK(expected_verdict(planar) == Verdict::Harmonic);
    planar.planar[3] = 1.0;
    CHECK(expected_verdict(planar) == Verdict::Biharmonic);
  }

  TEST_CASE("classification order") {
    const Tolerances tol;
    CHECK(classify(1.0, 1.0, 1.0, tol) == Verdict::NotIntegrable);
    CHECK(classify(1.0, 1.0, 0.0, tol) == Verdict::NotBiharmonic);
    CHECK(classify(0.0, 0.0, std::nullopt, tol) == Verdict::Harmonic);
    CHECK(classify(1.0, 0.0, std::nullopt, tol) == Verdict::Biharmonic);
    CHECK(classify(2e-10, 1e-9, std::nullopt, tol) == Verdict::Biharmonic);
  }

  TEST_CASE("sphere axis verdicts") {
    auto spec = default_spec("sphere/axis");
    spec.params = {0.0, 0.0, 1.0};
    auto report = verify_family(spec);
    CHECK(report.verdict == Verdict::Harmonic);
    CHECK(report.matches);
    CHECK(report.harmonic.max <= 1e-10);
    CHECK(report.biharmonic.max <= 1e-10);

    spec.params = {1.0, 0.0, 0.0};
    report = verify_family(spec);
    CHECK(report.verdict == Verdict::Biharmonic);
    CHECK(report.matches);
    CHECK(report.biharmonic.max <= 1e-8);
    // Harmonic residual is |2 a t| |A(e_i)|, largest at the window ends.
    CHECK(report.harmonic.max == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));
    REQUIRE(report.closed_form_distance.has_value());
    CHECK(*report.closed_form_distance <= 1e-7);
  }

  TEST_CASE("euclidean polynomial family with commuting translations") {
    auto spec = default_spec("euclidean/poly");
    RealVector a(3), b(3), c(3);
    a << 1.0, 0.0, -2.0;
    b << 0.5, 0.5, 0.0;
    c << 0.0, 1.0, 1.0;
    spec.vectors = std::array<RealVector, 3>{a, b, c};
    const auto report = verify_family(spec);
    CHECK(report.biharmonic.max <= 1e-10);
    CHECK(report.verdict == Verdict::Biharmonic);
    CHECK(report.matches);
  }

  TEST_CASE("every catalogued family verifies at defaults") {
    for (const auto& id : catalog_ids()) {
      const auto report = verify_family(default_spec(id));
      CAPTURE(id);
      CHECK(report.matches);
      CHECK(report.verdict == report.expected);
    }
  }

  TEST_CASE("biharmonic parameters and harmonic degenerations") {
    for (const auto& id : catalog_ids()) {
      if (!has_cubic_phase(id)) continue;
      CAPTURE(id);
      auto spec = default_spec(id);
      spec.params = {1.0, -0.5, 0.7};
      VerifyOptions fast;
      fast.closed_form_step = 0.0;
      auto report = verify_family(spec, fast);
      CHECK(report.verdict == Verdict::Biharmonic);
      CHECK(report.matches);
      spec.params = {0.0, 0.0, -1.3};
      report = verify_family(spec, fast);
      CHECK(report.verdict == Verdict::Harmonic);
      CHECK(report.matches);
    }
  }

  TEST_CASE("planar verification on every model") {
    for (auto kind : {SpaceKind::Sphere, SpaceKind::ComplexProjective,
                      SpaceKind::QuaternionProjective, SpaceKind::EuclideanType}) {
      auto spec = default_spec("planar/separable", kind);
      spec.planar = {0.5, 1.0, -0.2, 0.0, 0.3, 1.0};
      const auto report = verify_family(spec);
      CHECK(report.planar);
      CHECK(report.verdict == Verdict::Biharmonic);
      CHECK(report.integrability.max <= 1e-12);
      CHECK(report.matches);
    }
  }

  TEST_CASE("non-commuting planar directions are not integrable") {
    auto spec = default_spec("planar/separable", SpaceKind::Sphere);
    const auto s = spec_space(spec);
    std::mt19937_64 rng(62);
    spec.directions = std::pair{s.random_m(rng), s.random_m(rng)};
    CHECK_THROWS_AS(make_separable_map(spec), ConstraintViolation);
    const auto report = verify_family(spec);
    CHECK(report.verdict == Verdict::NotIntegrable);
    CHECK(!report.matches);
  }

  TEST_CASE("window and stats") {
    Window w{-1.0, 1.0, 5};
    CHECK(w.at(0) == -1.0);
    CHECK(w.at(4) == 1.0);
    CHECK(w.at(2) == 0.0);
    w.samples = 0;
    CHECK_THROWS_AS(w.validate(), std::invalid_argument);
    ResidualStats st;
    for (double v : {1.0, 3.0, 2.0}) st.add(v);
    st.finish();
    CHECK(st.max == 3.0);
    CHECK(st.mean == 2.0);
    CHECK(st.count == 3);
  }

  TEST_CASE("polynomial family derivatives") {
    const auto s = SymmetricSpace::complex_projective(2);
    const std::vector<std::vector<Complex>> coeffs{{1.0, Complex(0, 2), 0.5, -1.0},
                                                   {0.0, 1.0}};
    const auto fam = polynomial_family(s, coeffs);
    const double t = 0.7;
    const auto j = fam.jet(t);
    ComplexVector v(2), d1(2), d2(2), d3(2);
    v << 1.0 + Complex(0, 2) * t + 0.5 * t * t - t * t * t, t;
    d1 << Complex(0, 2) + t - 3.0 * t * t, 1.0;
    d2 << 1.0 - 6.0 * t, 0.0;
    d3 << -6.0, 0.0;
    CHECK((s.m_coords(j.value) - v).norm() < 1e-14);
    CHECK((s.m_coords(j.d1) - d1).norm() < 1e-14);
    CHECK((s.m_coords(j.d2) - d2).norm() < 1e-14);
    CHECK((s.m_coords(j.d3) - d3).norm() < 1e-14);
  }
}
