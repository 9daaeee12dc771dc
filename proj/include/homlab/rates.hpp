#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace homlab {

/// Exact rational number over int64 (reduced, denominator > 0).
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction() = default;
  Fraction(std::int64_t n) : num(n), den(1) {}
  Fraction(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den == 0) throw std::domain_error("Fraction: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / den; }
  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }

  friend Fraction operator+(Fraction a, Fraction b) {
    return Fraction(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Fraction operator-(Fraction a, Fraction b) {
    return Fraction(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Fraction operator*(Fraction a, Fraction b) {
    return Fraction(a.num * b.num, a.den * b.den);
  }
  friend Fraction operator/(Fraction a, Fraction b) {
    if (b.num == 0) throw std::domain_error("Fraction: divide by zero");
    return Fraction(a.num * b.den, a.den * b.num);
  }
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const Fraction& a, const Fraction& b) {
    return a.num * b.den <= b.num * a.den;
  }
};

inline Fraction fraction_min(Fraction a, Fraction b) { return a < b ? a : b; }

/// Regularity exponent q* = (d-1)/(2 gamma - 1).
Fraction q_star(int d, const Fraction& gamma);

struct AlphaStar {
  Fraction alpha;       // optimal exponent
  Fraction s;           // maximizer in [1/2, 1]
  int d = 2;
  Fraction gamma{1};
};

/// Exact max-min of the five affine error exponents over s in [1/2,1],
/// solved by enumerating endpoints and pairwise intersections.
AlphaStar alpha_star(int d, const Fraction& gamma);

/// Closed-form lower bound for d > 5: min(1+gamma, 4, d-1) / (2 gamma).
Fraction alpha_star_lower_bound(int d, const Fraction& gamma);

/// gamma for a type-k boundary in dimension d: (d-1)(k-1).
inline Fraction gamma_from_type(int d, int k) {
  return Fraction(static_cast<std::int64_t>(d - 1) * (k - 1));
}

struct RateExponents {
  int d = 2;
  Fraction p{1};
  Fraction gamma{1};
  Fraction qstar{1};
  Fraction alpha{1, 2};
  Fraction s_opt{1};
};

RateExponents rate_exponents(int d, const Fraction& gamma);

}  // namespace homlab
