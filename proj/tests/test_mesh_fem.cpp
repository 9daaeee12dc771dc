#include <doctest.h>

#include <cmath>

#include "homlab/fem.hpp"
#include "homlab/mesh.hpp"

using namespace homlab;

TEST_CASE("mesh structure and quality") {
  SUBCASE("circle at h = 0.1") {
    auto m = mesh(DomainSpec::circle(1.0), 0.1, 0.1);
    CHECK(m.min_angle_deg >= 20.0);
    CHECK(m.area == doctest::Approx(M_PI).epsilon(0.01));
    // regression count for this generator configuration
    CHECK(m.triangle_count() > 300);
    CHECK(m.triangle_count() < 1500);
    for (std::size_t i = 0; i < m.boundary_vertices.size(); ++i) {
      const Point2& p = m.vertices[m.boundary_vertices[i]];
      CHECK(std::fabs(std::hypot(p[0], p[1]) - 1.0) < 1e-10);
    }
  }
  SUBCASE("meshed ellipse area converges to pi a b") {
    auto coarse = mesh(DomainSpec::ellipse(2.0, 1.0), 0.2, 0.2);
    auto fine = mesh(DomainSpec::ellipse(2.0, 1.0), 0.1, 0.1);
    const double exact = 2.0 * M_PI;
    CHECK(std::fabs(fine.area - exact) < std::fabs(coarse.area - exact));
    CHECK(fine.area == doctest::Approx(exact).epsilon(0.01));
    CHECK(fine.min_angle_deg >= 20.0);
  }
  SUBCASE("halving the band size doubles the boundary vertex count") {
    auto m1 = mesh(DomainSpec::circle(1.0), 0.1, 0.05);
    auto m2 = mesh(DomainSpec::circle(1.0), 0.1, 0.025);
    const double ratio = static_cast<double>(m2.boundary_vertices.size()) /
                         static_cast<double>(m1.boundary_vertices.size());
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.1));
  }
  SUBCASE("superellipse meshes cleanly") {
    auto m = mesh(DomainSpec::superellipse(4, 1.0, 1.0), 0.1, 0.05);
    CHECK(m.min_angle_deg >= 20.0);
    // |x|^4+|y|^4=1 encloses area 4 Gamma(5/4)^2 / Gamma(3/2)... ~ 3.7081
    CHECK(m.area == doctest::Approx(3.7081).epsilon(0.01));
  }
  SUBCASE("deterministic output") {
    auto m1 = mesh(DomainSpec::ellipse(2.0, 1.0), 0.15, 0.08);
    auto m2 = mesh(DomainSpec::ellipse(2.0, 1.0), 0.15, 0.08);
    REQUIRE(m1.vertex_count() == m2.vertex_count());
    for (std::size_t i = 0; i < m1.vertices.size(); ++i) {
      CHECK(m1.vertices[i][0] == m2.vertices[i][0]);
      CHECK(m1.vertices[i][1] == m2.vertices[i][1]);
    }
  }
}

TEST_CASE("patch test: affine data reproduced exactly") {
  auto m = mesh(DomainSpec::ellipse(2.0, 1.0), 0.15, 0.15);
  auto a = constant_tensor(3.0, 0.4, 0.4, 1.5);
  auto res = solve_dirichlet(m, a, [](const Point2& x, double) {
    return 2.0 + 0.7 * x[0] - 1.3 * x[1];
  });
  double worst = 0.0;
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    const double exact = 2.0 + 0.7 * m.vertices[i][0] - 1.3 * m.vertices[i][1];
    worst = std::max(worst, std::fabs(res.u[i] - exact));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("constant data solves to the constant") {
  auto m = mesh(DomainSpec::circle(1.0), 0.2, 0.2);
  auto res = solve_dirichlet(m, constant_tensor(1, 0, 0, 1),
                             [](const Point2&, double) { return 0.75; });
  for (double v : res.u) CHECK(v == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("harmonic polynomial converges at second order in L2") {
  // u = Re (x+iy)^2 = x^2 - y^2 is harmonic
  auto exact_fn = [](const Point2& x) { return x[0] * x[0] - x[1] * x[1]; };
  double errs[2];
  double hs[2] = {0.1, 0.05};
  for (int i = 0; i < 2; ++i) {
    auto m = mesh(DomainSpec::circle(1.0), hs[i], hs[i]);
    auto res = solve_dirichlet(m, constant_tensor(1, 0, 0, 1),
                               [&](const Point2& x, double) { return exact_fn(x); });
    Vector diff(res.u.size());
    for (std::size_t v = 0; v < res.u.size(); ++v)
      diff[v] = res.u[v] - exact_fn(m.vertices[v]);
    errs[i] = l2_norm(m, diff);
  }
  const double order = std::log2(errs[0] / errs[1]);
  CHECK(order > 1.6);
  // maximum-principle sanity for the same solve
  auto m = mesh(DomainSpec::circle(1.0), 0.1, 0.1);
  auto res = solve_dirichlet(m, constant_tensor(1, 0, 0, 1),
                             [&](const Point2& x, double) { return exact_fn(x); });
  CHECK(res.linf <= 1.05 * res.boundary_linf);
}

TEST_CASE("l2_error semantics") {
  auto m1 = mesh(DomainSpec::circle(1.0), 0.12, 0.12);
  auto m2 = mesh(DomainSpec::circle(1.0), 0.07, 0.07);
  auto one = [](const Point2&, double) { return 1.0; };
  auto zero = [](const Point2&, double) { return 0.0; };
  auto id = constant_tensor(1, 0, 0, 1);
  auto u1 = solve_dirichlet(m1, id, one);
  auto u0_same = solve_dirichlet(m1, id, zero);
  auto u0_fine = solve_dirichlet(m2, id, zero);

  SUBCASE("identical results give zero") {
    CHECK(l2_error(u1, u1) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("u=1 vs u=0 on the unit disk gives sqrt(pi)") {
    CHECK(l2_error(u1, u0_fine) == doctest::Approx(std::sqrt(M_PI)).epsilon(0.01));
  }
  SUBCASE("cross-validation against the nodal difference") {
    const double via_interp = l2_error(u1, u0_same);
    const double via_nodal = l2_error_nodal(u1, u0_same);
    CHECK(via_interp == doctest::Approx(via_nodal).epsilon(0.01));
  }
  SUBCASE("near-symmetry in the arguments") {
    const double ab = l2_error(u1, u0_fine);
    const double ba = l2_error(u0_fine, u1);
    CHECK(ab == doctest::Approx(ba).epsilon(0.01));
  }
}

TEST_CASE("oscillating boundary data against a fine band") {
  // data f(x, x/eps) resolved by band cells of size eps/8
  const double eps = 1.0 / 8.0;
  auto m = mesh(DomainSpec::circle(1.0), 0.1, eps / 8.0);
  auto res = solve_dirichlet(m, constant_tensor(1, 0, 0, 1),
                             [eps](const Point2& x, double) {
                               return std::cos(2.0 * M_PI * x[0] / eps);
                             });
  CHECK(res.linf <= 1.05 * res.boundary_linf);
  CHECK(res.residual <= 1e-9);
}
