#include <doctest.h>

#include <random>

#include "homlab/rates.hpp"

using namespace homlab;

namespace {

// closed forms for d <= 5 (strict-convexity case and the two low-dimension cases)
Fraction closed_form_alpha(int d, const Fraction& gamma) {
  const Fraction one(1);
  if (gamma == one) return fraction_min(one, Fraction(d - 1, 2));
  const Fraction p = Fraction(d - 1) / gamma;
  if (d <= 3) return p / Fraction(2);
  // d = 4, 5
  const Fraction second =
      Fraction(d - 1) * p / (Fraction(d - 1) + Fraction(d - 2) * p);
  return fraction_min(p / Fraction(2), second);
}

double objective(int d, double gamma, double s) {
  double v = s;
  v = std::min(v, 4.0 * (s - 0.5));
  v = std::min(v, (d - 1.0) * (s - 0.5));
  if (gamma > 1.0) v = std::min(v, (1.0 - s) * (d - 1.0) / (gamma - 1.0));
  v = std::min(v, s * (d - 1.0) / (1.0 + gamma));
  return v;
}

}  // namespace

TEST_CASE("q_star closed-form values") {
  CHECK(q_star(2, Fraction(1)) == Fraction(1));
  CHECK(q_star(3, Fraction(2)) == Fraction(2, 3));
  CHECK(q_star(2, Fraction(3)) == Fraction(1, 5));
}

TEST_CASE("alpha_star reproduces the known special cases") {
  SUBCASE("strictly convex d=2") {
    auto a = alpha_star(2, Fraction(1));
    CHECK(a.alpha == Fraction(1, 2));
    CHECK(a.s == Fraction(1));
  }
  SUBCASE("d=2, gamma=2") {
    auto a = alpha_star(2, Fraction(2));
    CHECK(a.alpha == Fraction(1, 4));
    CHECK(a.s == Fraction(3, 4));
  }
  SUBCASE("d=5, gamma=2") {
    auto a = alpha_star(5, Fraction(2));
    CHECK(a.alpha == Fraction(4, 5));
  }
}

TEST_CASE("alpha_star matches all closed forms for d in 2..5") {
  const Fraction gammas[] = {Fraction(1), Fraction(3, 2), Fraction(2),
                             Fraction(3), Fraction(5)};
  for (int d = 2; d <= 5; ++d)
    for (const auto& g : gammas) {
      auto a = alpha_star(d, g);
      CHECK(a.alpha == closed_form_alpha(d, g));
    }
}

TEST_CASE("alpha_star at gamma = 1 equals min(1, (d-1)/2) for d in 2..10") {
  for (int d = 2; d <= 10; ++d) {
    auto a = alpha_star(d, Fraction(1));
    CHECK(a.alpha == fraction_min(Fraction(1), Fraction(d - 1, 2)));
  }
}

TEST_CASE("returned maximizer attains the objective and is locally optimal") {
  const Fraction gammas[] = {Fraction(1), Fraction(3, 2), Fraction(2),
                             Fraction(3), Fraction(5)};
  for (int d = 2; d <= 6; ++d)
    for (const auto& g : gammas) {
      auto a = alpha_star(d, g);
      const double s = a.s.value(), gamma = g.value();
      CHECK(objective(d, gamma, s) == doctest::Approx(a.alpha.value()).epsilon(1e-14));
      CHECK(objective(d, gamma, std::min(1.0, s + 1e-6)) <= a.alpha.value() + 1e-13);
      CHECK(objective(d, gamma, std::max(0.5, s - 1e-6)) <= a.alpha.value() + 1e-13);
    }
}

TEST_CASE("lower bound for d > 5") {
  CHECK(alpha_star_lower_bound(7, Fraction(2)) == Fraction(3, 4));
  CHECK(alpha_star_lower_bound(6, Fraction(3, 2)) == Fraction(5, 6));
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dd(6, 12), num(1, 40);
  for (int t = 0; t < 50; ++t) {
    const int d = dd(rng);
    Fraction g(num(rng), 4);
    if (g < Fraction(1)) g = Fraction(1) + g;
    const auto exact = alpha_star(d, g);
    CHECK(alpha_star_lower_bound(d, g) <= exact.alpha);
  }
}

TEST_CASE("type-k path: gamma = (d-1)(k-1)") {
  CHECK(gamma_from_type(2, 4) == Fraction(3));
  auto r = rate_exponents(2, gamma_from_type(2, 4));
  CHECK(r.qstar == Fraction(1, 5));
  CHECK(r.alpha == Fraction(1, 6));  // (d-1)/(2 gamma) = 1/6 for d=2, gamma=3
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS(q_star(1, Fraction(1)));
  CHECK_THROWS(alpha_star(2, Fraction(1, 2)));
  CHECK_THROWS(alpha_star_lower_bound(4, Fraction(2)));
}
