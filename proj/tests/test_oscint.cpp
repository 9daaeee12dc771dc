#include <doctest.h>

#include <cmath>

#include "homlab/oscint.hpp"

using namespace homlab;

TEST_CASE("sublevel measures with analytic inverses") {
  SUBCASE("linear") {
    CHECK(sublevel_measure([](double x) { return x; }, -1.0, 1.0, 0.5) ==
          doctest::Approx(1.0).epsilon(1e-5));
  }
  SUBCASE("quadratic: 2 sqrt(t)") {
    for (double t : {0.5, 0.1, 1e-3}) {
      CHECK(sublevel_measure([](double x) { return x * x; }, -1.0, 1.0, t) ==
            doctest::Approx(2.0 * std::sqrt(t)).epsilon(1e-4));
    }
  }
  SUBCASE("quartic: log-log slope 1/4") {
    std::vector<double> ts, ms;
    for (double t = 1e-6; t <= 1.01e-2; t *= 10.0) {
      ts.push_back(t);
      ms.push_back(sublevel_measure([](double x) { return x * x * x * x; }, -1.0,
                                    1.0, t));
    }
    auto fit = fit_loglog(ts, ms);
    CHECK(fit.slope == doctest::Approx(0.25).epsilon(0.08));  // 1/4 +- 0.02
    CHECK(std::fabs(fit.slope - 0.25) <= 0.02);
  }
}

TEST_CASE("oscillatory integrals decay at the van der Corput rates") {
  auto psi = smooth_bump(0.0, 1.0);
  std::vector<double> lambdas;
  for (double l = 100.0; l <= 1.0e5 + 1.0; l *= std::sqrt(10.0)) lambdas.push_back(l);

  SUBCASE("non-stationary phase decays faster than 1/lambda") {
    auto fit = oscillatory_decay_fit([](double x) { return x; }, psi, -1.0, 1.0,
                                     {100.0, 316.0, 1000.0});
    CHECK(fit.fit.slope < -1.0);
  }
  SUBCASE("quadratic phase: exponent -1/2") {
    auto fit = oscillatory_decay_fit([](double x) { return x * x; }, psi, -1.0,
                                     1.0, lambdas);
    CHECK(std::fabs(fit.fit.slope + 0.5) <= 0.05);
  }
  SUBCASE("cubic phase: exponent -1/3") {
    auto fit = oscillatory_decay_fit([](double x) { return x * x * x; }, psi,
                                     -1.0, 1.0, lambdas);
    CHECK(std::fabs(fit.fit.slope + 1.0 / 3.0) <= 0.05);
  }
  SUBCASE("quartic phase: exponent -1/4") {
    auto fit = oscillatory_decay_fit(
        [](double x) { return x * x * x * x; }, psi, -1.0, 1.0, lambdas);
    CHECK(std::fabs(fit.fit.slope + 0.25) <= 0.05);
  }
}

TEST_CASE("oscillatory integral refuses an under-resolved budget") {
  OscintOptions opts;
  opts.max_points = 1000;
  CHECK_THROWS(oscillatory_integral([](double x) { return x; },
                                    smooth_bump(0.0, 1.0), -1.0, 1.0, 1.0e6, opts));
}

TEST_CASE("quadratic stationary phase magnitude matches the leading term") {
  // |I| ~ sqrt(pi/lambda) |psi(0)| for phase x^2 (psi(0) = 1 for our bump)
  auto psi = smooth_bump(0.0, 1.0);
  const double lambda = 4.0e4;
  auto v = oscillatory_integral([](double x) { return x * x; }, psi, -1.0, 1.0,
                                lambda);
  CHECK(v.abs() == doctest::Approx(std::sqrt(M_PI / lambda)).epsilon(0.05));
}
