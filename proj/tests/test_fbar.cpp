#include <doctest.h>

#include <cmath>

#include "homlab/fbar.hpp"

using namespace homlab;

namespace {

FbarOptions fast_options(int samples) {
  FbarOptions o;
  o.sample_count = samples;
  o.cell_resolution = 64;
  o.layer_n1 = 64;
  o.layer_ht = 1.0 / 16.0;
  return o;
}

}  // namespace

TEST_CASE("constant coefficients: f-bar is the theta-mean of f") {
  auto ell = make_ellipse(2.0, 1.0);
  auto field = constant_field(2, 1, {2.0, 0.3, 0.3, 1.5}, 0.4);

  SUBCASE("pure oscillation averages to zero") {
    auto data = trig_data([](const Point2&) { return 1.0; }, 0.0, {{{1, 0}}}, {1.0});
    auto fb = homogenized_data(ell, field, data, fast_options(12));
    for (const auto& s : fb.samples)
      if (s.reliable) CHECK(std::fabs(s.value[0]) < 1e-8);
  }
  SUBCASE("mean-one oscillating factor returns g") {
    auto data = trig_data([](const Point2& x) { return x[0] + 2.0 * x[1]; }, 1.0,
                          {{{1, 0}}}, {1.0});
    auto fb = homogenized_data(ell, field, data, fast_options(12));
    for (const auto& s : fb.samples)
      if (s.reliable) {
        const double expect = s.point[0] + 2.0 * s.point[1];
        CHECK(s.value[0] == doctest::Approx(expect).epsilon(1e-8));
      }
  }
}

TEST_CASE("laminate coefficients: theta-independent f reproduces itself") {
  auto ell = make_ellipse(2.0, 1.0);
  auto field = laminate_field(2);
  auto data = plain_data([](const Point2& x) { return 1.0 + 0.5 * x[1]; });
  auto fb = homogenized_data(ell, field, data, fast_options(14));
  int checked = 0;
  for (const auto& s : fb.samples)
    if (s.reliable) {
      const double expect = 1.0 + 0.5 * s.point[1];
      CHECK(std::fabs(s.value[0] - expect) <= 2e-2 * std::max(1.0, std::fabs(expect)));
      ++checked;
    }
  CHECK(checked >= 10);
}

TEST_CASE("rational-normal samples are flagged and filled") {
  auto ell = make_ellipse(2.0, 1.0);
  auto field = laminate_field(2);
  auto data = trig_data([](const Point2&) { return 1.0; }, 1.0, {{{1, 0}}}, {0.5});
  // sample 0 sits at the vertex (2,0) whose normal (1,0) is resonant
  auto fb = homogenized_data(ell, field, data, fast_options(16));
  REQUIRE(fb.samples.size() == 16);
  CHECK_FALSE(fb.samples[0].reliable);
  CHECK(fb.samples[0].kappa == 0.0);
  CHECK(fb.samples[0].filled_from >= 0);
  CHECK(fb.samples[0].value[0] ==
        fb.samples[fb.samples[0].filled_from].value[0]);
  CHECK(fb.flagged_count() < fb.samples.size());
}

TEST_CASE("interpolation in arclength uses reliable support") {
  auto ell = make_ellipse(2.0, 1.0);
  auto field = constant_field(2, 1, {1.0, 0.0, 0.0, 1.0}, 0.9);
  auto data = plain_data([](const Point2& x) { return x[0]; });
  auto fb = homogenized_data(ell, field, data, fast_options(64));
  // reconstructed boundary values track g(x) = x_0 between samples
  for (double s : {0.3, 2.1, 5.5, 9.0}) {
    const double u = ell.param_from_arclength(s);
    const Point2 p = ell.point(u);
    CHECK(fb.value(0, s) == doctest::Approx(p[0]).epsilon(0.01));
  }
}

TEST_CASE("regularity probe returns finite difference-quotient norms") {
  auto ell = make_ellipse(2.0, 1.0);
  auto field = constant_field(2, 1, {1.0, 0.0, 0.0, 1.0}, 0.9);
  auto data = plain_data([](const Point2& x) { return std::sin(x[0]) + x[1]; });
  FbarOptions o = fast_options(256);
  auto fb = homogenized_data(ell, field, data, o);
  auto rep = regularity_probe(fb, {0.5, 1.0, 2.0});
  REQUIRE(rep.norm.size() == 3);
  for (double v : rep.norm) {
    CHECK(v > 0.0);
    CHECK(v < 200.0);  // |f'| <= ~1.4, so norm <= 1.4 L^(1/q) with L ~ 9.7
  }
  auto small = homogenized_data(ell, field, data, fast_options(32));
  CHECK_THROWS(regularity_probe(small, {1.0}));
}

TEST_CASE("data periodicity violations are rejected") {
  OscillatingData bad;
  bad.m = 1;
  bad.sampler = [](const Point2&, const double* th, double* v) { v[0] = th[0]; };
  CHECK_THROWS(check_data_periodicity(bad, {1.0, 0.0}));
}
