#include <doctest.h>

#include <cmath>

#include "homlab/curve.hpp"
#include "homlab/local_graph.hpp"
#include "homlab/series.hpp"

using namespace homlab;

TEST_CASE("series jets reproduce known derivatives") {
  SUBCASE("sin at pi/5") {
    const double x0 = M_PI / 5.0;
    Series u = Series::variable(6, x0);
    Series s = sin(u);
    CHECK(s.derivative(0) == doctest::Approx(std::sin(x0)).epsilon(1e-14));
    CHECK(s.derivative(1) == doctest::Approx(std::cos(x0)).epsilon(1e-14));
    CHECK(s.derivative(2) == doctest::Approx(-std::sin(x0)).epsilon(1e-13));
    CHECK(s.derivative(5) == doctest::Approx(std::cos(x0)).epsilon(1e-12));
  }
  SUBCASE("pow with real exponent") {
    Series u = Series::variable(5, 2.0);
    Series g = pow(u, -0.25);  // derivatives of x^(-1/4)
    double expect = std::pow(2.0, -0.25);
    CHECK(g.derivative(0) == doctest::Approx(expect).epsilon(1e-14));
    expect *= -0.25 / 2.0;
    CHECK(g.derivative(1) == doctest::Approx(expect).epsilon(1e-13));
    expect *= -1.25 / 2.0;
    CHECK(g.derivative(2) == doctest::Approx(expect).epsilon(1e-13));
  }
  SUBCASE("reversion of exp(u)-1 gives log(1+s)") {
    Series u = Series::variable(8, 0.0);
    Series g = exp(u) - 1.0;
    Series inv = revert(g);
    // log(1+s) = s - s^2/2 + s^3/3 - ...
    for (int k = 1; k <= 8; ++k) {
      const double expect = (k % 2 == 1 ? 1.0 : -1.0) / k;
      CHECK(inv[k] == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("circle local graph is 1 - sqrt(1 - s^2)") {
  auto circle = make_circle(1.0);
  circle.validate({0.0, 0.0});
  LocalGraph g(circle, 0.37, 0.5);
  for (double s : {-0.4, -0.1, 0.0, 0.23, 0.45}) {
    CHECK(g.phi(s) == doctest::Approx(1.0 - std::sqrt(1.0 - s * s)).epsilon(1e-12));
  }
  CHECK(g.phi_derivative(0.0, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(g.phi_derivative(0.0, 2) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(g.phi_derivative(0.3, 2) ==
        doctest::Approx(std::pow(1.0 - 0.09, -1.5)).epsilon(1e-10));
  CHECK(g.reproduction_error() < 1e-8);
}

TEST_CASE("ellipse local graph curvature matches the analytic oracle") {
  auto ell = make_ellipse(2.0, 1.0);
  ell.validate({0.0, 0.0});
  SUBCASE("vertex (2,0): curvature a/b^2") {
    LocalGraph g(ell, 0.0, 0.5);
    CHECK(g.phi_derivative(0.0, 2) == doctest::Approx(2.0).epsilon(1e-10));
  }
  SUBCASE("generic points: phi''(0) equals the curvature formula") {
    for (double u : {0.1, 0.21, 0.33, 0.48, 0.77}) {
      LocalGraph g(ell, u, 0.25);
      const double t = 2.0 * M_PI * u;
      const double denom = std::pow(
          4.0 * std::sin(t) * std::sin(t) + std::cos(t) * std::cos(t), 1.5);
      CHECK(g.phi_derivative(0.0, 2) == doctest::Approx(2.0 / denom).epsilon(1e-9));
    }
  }
}

TEST_CASE("superellipse k=4 flat point: quartic-order contact") {
  auto sup = make_superellipse(4, 1.0, 1.0);
  sup.validate({0.0, 0.0});
  LocalGraph g(sup, 0.0, 0.3);
  CHECK(std::fabs(g.phi_derivative(0.0, 2)) < 1e-9);
  CHECK(std::fabs(g.phi_derivative(0.0, 3)) < 1e-9);
  CHECK(g.phi_derivative(0.0, 4) == doctest::Approx(6.0).epsilon(1e-8));
}

TEST_CASE("type certificates") {
  SUBCASE("synthetic s^2 gives k=2, delta=2") {
    auto deriv = [](double s, int k) -> double {
      if (k == 0) return s * s;
      if (k == 1) return 2.0 * s;
      if (k == 2) return 2.0;
      return 0.0;
    };
    auto cert = type_at(deriv, 1.0, 4, 1e-6);
    REQUIRE(cert.has_value());
    CHECK(cert->k == 2);
    CHECK(cert->delta == doctest::Approx(2.0));
  }
  SUBCASE("synthetic s^4 gives k=4, delta=24") {
    auto deriv = [](double s, int k) -> double {
      switch (k) {
        case 0: return s * s * s * s;
        case 1: return 4.0 * s * s * s;
        case 2: return 12.0 * s * s;
        case 3: return 24.0 * s;
        case 4: return 24.0;
        default: return 0.0;
      }
    };
    auto cert = type_at(deriv, 1.0, 4, 1e-6);
    REQUIRE(cert.has_value());
    CHECK(cert->k == 4);
    CHECK(cert->delta == doctest::Approx(24.0));
  }
  SUBCASE("affine graph has no certificate") {
    auto deriv = [](double, int k) -> double { return k == 1 ? 0.3 : 0.0; };
    CHECK_FALSE(type_at(deriv, 1.0, 6, 1e-6).has_value());
  }
  SUBCASE("every sampled ellipse point is type 2") {
    auto ell = make_ellipse(2.0, 1.0);
    for (int i = 0; i < 16; ++i) {
      LocalGraph g(ell, i / 16.0, 0.25);
      auto cert = type_at(g, 4, 1e-6);
      REQUIRE(cert.has_value());
      CHECK(cert->k == 2);
    }
  }
  SUBCASE("superellipse: type 4 at the axis, type 2 at generic points") {
    auto sup = make_superellipse(4, 1.0, 1.0);
    LocalGraph flat(sup, 0.0, 0.2);
    auto cert = type_at(flat, 6, 1e-6);
    REQUIRE(cert.has_value());
    CHECK(cert->k == 4);
    LocalGraph generic(sup, 0.09, 0.05);
    auto cert2 = type_at(generic, 6, 1e-6);
    REQUIRE(cert2.has_value());
    CHECK(cert2->k == 2);
  }
  SUBCASE("certificate is stable under doubling the resolution") {
    auto sup = make_superellipse(4, 1.0, 1.0);
    LocalGraph flat(sup, 0.0, 0.2);
    auto c1 = type_at(flat, 6, 1e-6, 128);
    auto c2 = type_at(flat, 6, 1e-6, 256);
    REQUIRE(c1.has_value());
    REQUIRE(c2.has_value());
    CHECK(c1->k == c2->k);
    CHECK(std::fabs(c1->delta - c2->delta) <= 0.1 * c1->delta);
  }
}

TEST_CASE("tangent projection on a circle patch") {
  auto circle = make_circle(1.0);
  LocalGraph g(circle, 0.12, 0.1);
  // quadratic deviation: |P^{-1}(z) - z| = phi(s) <= 1 - sqrt(1 - r^2)
  double worst = 0.0;
  for (int i = -10; i <= 10; ++i) {
    const double s = 0.1 * i / 10.0;
    const Point2 lifted = g.lift(s);
    const Point2 z{g.base_point()[0] + s * g.tangent_dir()[0],
                   g.base_point()[1] + s * g.tangent_dir()[1]};
    worst = std::max(worst, std::hypot(lifted[0] - z[0], lifted[1] - z[1]));
  }
  CHECK(worst <= 0.00502);
  CHECK(g.measure_density(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.measure_density(0.1) == doctest::Approx(1.0).epsilon(0.01));
  auto proj = project_to_tangent(circle, 0.12, 0.1);
  CHECK(proj.project(g.base_point()) == doctest::Approx(0.0));
  for (double s : {-0.08, 0.03, 0.09})
    CHECK(proj.project(g.lift(s)) == doctest::Approx(s).epsilon(1e-10));
}

TEST_CASE("arclength and perimeter") {
  auto circle = make_circle(1.0);
  CHECK(circle.perimeter() == doctest::Approx(2.0 * M_PI).epsilon(1e-10));
  CHECK(circle.arclength(0.25) == doctest::Approx(M_PI / 2.0).epsilon(1e-8));
  auto ell = make_ellipse(2.0, 1.0);
  // 4 a E(e^2) with e^2 = 3/4
  CHECK(ell.perimeter() == doctest::Approx(9.688448220547675).epsilon(1e-9));
  const double u = ell.param_from_arclength(1.2345);
  CHECK(ell.arclength(u) == doctest::Approx(1.2345).epsilon(1e-8));
}

TEST_CASE("fourier radius curve validates and has positive speed") {
  auto curve = make_fourier_radius(1.0, {0.15, 0.0, 0.05}, {0.0, 0.1});
  curve.validate({0.0, 0.0});
  CHECK(curve.perimeter() > 2.0 * M_PI * 0.7);
}

TEST_CASE("graph rejects patches beyond the safe radius") {
  auto circle = make_circle(1.0);
  CHECK_THROWS(LocalGraph(circle, 0.0, 10.0));
}
