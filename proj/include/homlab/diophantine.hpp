#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace homlab {

using Direction = std::array<double, 3>;  // unit vector, last entry 0 for d=2

Direction make_direction(double x, double y);
Direction make_direction(double x, double y, double z);
bool is_unit(const Direction& v, int d, double tol = 1e-14);

/// Result of minimizing |(I - n (x) n) xi| * |xi|^mu over 0 != xi in Z^d,
/// |xi| <= R. kappa_R = 0 exactly when a lattice vector parallel to n lies
/// within the cutoff.
struct DiophantineEstimate {
  Direction n{};
  int d = 2;
  double mu = 1.0;
  double R = 1000.0;
  double kappa = 0.0;
  std::array<std::int64_t, 3> witness{0, 0, 0};
  bool complete = true;  // false if the node budget was exhausted
  long nodes_visited = 0;
};

struct KappaOptions {
  long node_budget = 10000000;
};

/// Shell-ordered exhaustive enumeration with pruning (reference path).
DiophantineEstimate kappa(const Direction& n, int d, double mu, double R,
                          const KappaOptions& opts = {});

/// Exact d=2 fast path: column/row candidate enumeration, O(R) work.
/// Agrees with kappa() to machine precision (tested).
DiophantineEstimate kappa_fast2d(const Direction& n, double mu, double R);

/// Default Diophantine exponent: smallest mu with p(1+mu) > d, plus 0.5.
inline double default_mu(int d, double p) { return d / p - 1.0 + 0.5; }

/// h_omega = 1 / sqrt(1 - (omega . n)^2), cross-checked against
/// 1 / |(I - n (x) n) omega|. Returns +infinity for omega = +-n.
double h_omega(const Direction& omega, const Direction& n, int d);

struct WeakLpReport {
  double p = 1.0;
  double statistic = 0.0;     // sup over dyadic t of sigma{kappa < t}^(1/p) / t
  double best_threshold = 0.0;
  std::vector<double> per_threshold;  // value at each dyadic level 2^-1..2^-20
  std::size_t samples = 0;
  double total_measure = 0.0;
};

/// Empirical weak-L^p statistic of 1/kappa over weighted boundary samples.
/// Thresholds are the dyadic grid t = 2^-1 .. 2^-20.
WeakLpReport weak_lp_statistic(const std::vector<double>& kappa_values,
                               const std::vector<double>& weights, double p);

}  // namespace homlab
