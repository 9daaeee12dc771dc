#include "homlab/rates.hpp"

#include <algorithm>

namespace homlab {

Fraction q_star(int d, const Fraction& gamma) {
  if (d < 2 || gamma < Fraction(1)) throw std::invalid_argument("q_star: need d >= 2, gamma >= 1");
  return Fraction(d - 1) / (Fraction(2) * gamma - Fraction(1));
}

namespace {

// the objective is min over affine pieces f(s) = a*s + b
struct Affine {
  Fraction a, b;
  Fraction eval(const Fraction& s) const { return a * s + b; }
};

}  // namespace

AlphaStar alpha_star(int d, const Fraction& gamma) {
  if (d < 2 || gamma < Fraction(1))
    throw std::invalid_argument("alpha_star: need d >= 2, gamma >= 1");
  const Fraction half(1, 2), one(1);
  std::vector<Affine> pieces;
  pieces.push_back({one, Fraction(0)});                       // s
  pieces.push_back({Fraction(4), Fraction(-2)});              // 4(s - 1/2)
  pieces.push_back({Fraction(d - 1), Fraction(-(d - 1), 2)}); // (d-1)(s - 1/2)
  if (Fraction(1) < gamma) {
    // (1-s)(d-1)/(gamma-1); for gamma = 1 the term is +infinity and dropped
    const Fraction c = Fraction(d - 1) / (gamma - one);
    pieces.push_back({Fraction(0) - c, c});
  }
  pieces.push_back({Fraction(d - 1) / (one + gamma), Fraction(0)});

  // candidate s: endpoints plus all pairwise intersections inside [1/2, 1]
  std::vector<Fraction> candidates{half, one};
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      const Fraction da = pieces[i].a - pieces[j].a;
      if (da.num == 0) continue;
      const Fraction s = (pieces[j].b - pieces[i].b) / da;
      if (half <= s && s <= one) candidates.push_back(s);
    }

  AlphaStar best;
  best.d = d;
  best.gamma = gamma;
  bool first = true;
  for (const Fraction& s : candidates) {
    Fraction v = pieces[0].eval(s);
    for (std::size_t i = 1; i < pieces.size(); ++i)
      v = fraction_min(v, pieces[i].eval(s));
    if (first || best.alpha < v) {
      best.alpha = v;
      best.s = s;
      first = false;
    } else if (v == best.alpha && s < best.s) {
      best.s = s;  // smallest maximizer for determinism
    }
  }
  return best;
}

Fraction alpha_star_lower_bound(int d, const Fraction& gamma) {
  if (d <= 5) throw std::invalid_argument("alpha_star_lower_bound: meant for d > 5");
  const Fraction one(1);
  Fraction m = fraction_min(one + gamma, Fraction(4));
  m = fraction_min(m, Fraction(d - 1));
  return m / (Fraction(2) * gamma);
}

RateExponents rate_exponents(int d, const Fraction& gamma) {
  RateExponents r;
  r.d = d;
  r.gamma = gamma;
  r.p = Fraction(d - 1) / gamma;
  r.qstar = q_star(d, gamma);
  const AlphaStar a = alpha_star(d, gamma);
  r.alpha = a.alpha;
  r.s_opt = a.s;
  return r;
}

}  // namespace homlab
