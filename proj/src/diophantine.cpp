#include "homlab/diophantine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace homlab {

Direction make_direction(double x, double y) {
  const double n = std::sqrt(x * x + y * y);
  if (n == 0.0) throw std::invalid_argument("zero direction");
  return {x / n, y / n, 0.0};
}

Direction make_direction(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (n == 0.0) throw std::invalid_argument("zero direction");
  return {x / n, y / n, z / n};
}

bool is_unit(const Direction& v, int d, double tol) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) s += v[k] * v[k];
  return std::fabs(std::sqrt(s) - 1.0) <= tol;
}

namespace {

// squared norm of (I - n n^T) xi
inline double projection_sq(const Direction& n, int d, const double* xi) {
  double dotp = 0.0, nn = 0.0;
  for (int k = 0; k < d; ++k) dotp += n[k] * xi[k];
  for (int k = 0; k < d; ++k) {
    const double c = xi[k] - dotp * n[k];
    nn += c * c;
  }
  return nn;
}

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  std::array<std::int64_t, 3> xi{0, 0, 0};

  void offer(double v, std::int64_t x, std::int64_t y, std::int64_t z) {
    // deterministic lexicographic tie-break
    if (v < value ||
        (v == value && std::array<std::int64_t, 3>{x, y, z} < xi)) {
      value = v;
      xi = {x, y, z};
    }
  }
};

}  // namespace

DiophantineEstimate kappa(const Direction& n, int d, double mu, double R,
                          const KappaOptions& opts) {
  if (!is_unit(n, d)) throw std::invalid_argument("kappa: direction not unit");
  if (mu <= 0.0 || R < 1.0) throw std::invalid_argument("kappa: need mu > 0, R >= 1");
  DiophantineEstimate est;
  est.n = n;
  est.d = d;
  est.mu = mu;
  est.R = R;

  const double R2 = R * R;
  const std::int64_t Ri = static_cast<std::int64_t>(std::floor(R));
  Candidate best;
  long visited = 0;
  bool complete = true;

  // enumerate integer shells k <= |xi| < k+1 in increasing order
  for (std::int64_t shell = 1; shell <= Ri && complete; ++shell) {
    const double lo2 = static_cast<double>(shell) * shell;
    const double hi2 = std::min(R2, (shell + 1.0) * (shell + 1.0) - 1e-9);
    // prune: within this shell, a candidate can only win if its projection
    // is below best / |xi|^mu
    const double proj_cut =
        best.value < 1e300
            ? best.value / std::pow(static_cast<double>(shell), mu)
            : std::numeric_limits<double>::infinity();
    const std::int64_t lim = static_cast<std::int64_t>(std::floor(std::sqrt(hi2)));
    if (d == 2) {
      for (std::int64_t x = 0; x <= lim; ++x) {
        for (std::int64_t y = (x == 0 ? 1 : -lim); y <= lim; ++y) {
          const double r2 = static_cast<double>(x) * x + static_cast<double>(y) * y;
          if (r2 < lo2 || r2 > hi2) continue;
          if (++visited > opts.node_budget) {
            complete = false;
            break;
          }
          const double xi[2] = {static_cast<double>(x), static_cast<double>(y)};
          const double proj = std::sqrt(projection_sq(n, 2, xi));
          if (proj > proj_cut * (1.0 + 1e-12)) continue;
          const double v = proj * std::pow(std::sqrt(r2), mu);
          best.offer(v, x, y, 0);
        }
        if (!complete) break;
      }
    } else {
      for (std::int64_t x = 0; x <= lim && complete; ++x) {
        for (std::int64_t y = (x == 0 ? 0 : -lim); y <= lim && complete; ++y) {
          for (std::int64_t z = (x == 0 && y == 0 ? 1 : -lim); z <= lim; ++z) {
            const double r2 = static_cast<double>(x) * x +
                              static_cast<double>(y) * y +
                              static_cast<double>(z) * z;
            if (r2 < lo2 || r2 > hi2) continue;
            if (++visited > opts.node_budget) {
              complete = false;
              break;
            }
            const double xi[3] = {static_cast<double>(x), static_cast<double>(y),
                                  static_cast<double>(z)};
            const double proj = std::sqrt(projection_sq(n, 3, xi));
            if (proj > proj_cut * (1.0 + 1e-12)) continue;
            const double v = proj * std::pow(std::sqrt(r2), mu);
            best.offer(v, x, y, z);
          }
        }
      }
    }
    if (best.value == 0.0) break;  // exact resonance, cannot improve
  }

  est.kappa = best.value < 1e300 ? best.value : 0.0;
  {
    // snap exact resonances: a parallel integer witness leaves only the
    // projection roundoff, which scales like |xi| * machine epsilon
    double xi[3] = {static_cast<double>(best.xi[0]),
                    static_cast<double>(best.xi[1]),
                    static_cast<double>(best.xi[2])};
    const double norm = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    if (std::sqrt(projection_sq(n, d, xi)) <= 32.0 * 2.220446e-16 * norm)
      est.kappa = 0.0;
  }
  est.witness = best.xi;
  est.complete = complete;
  est.nodes_visited = visited;
  return est;
}

DiophantineEstimate kappa_fast2d(const Direction& n, double mu, double R) {
  if (!is_unit(n, 2)) throw std::invalid_argument("kappa_fast2d: not unit");
  DiophantineEstimate est;
  est.n = n;
  est.d = 2;
  est.mu = mu;
  est.R = R;
  // projection onto n-perp: |xi . (-n2, n1)|
  const double px = -n[1], py = n[0];
  Candidate best;
  const std::int64_t Ri = static_cast<std::int64_t>(std::floor(R));
  const double R2 = R * R;
  auto offer = [&](std::int64_t x, std::int64_t y) {
    if (x == 0 && y == 0) return;
    if (x < 0 || (x == 0 && y < 0)) {  // identify xi with -xi
      x = -x;
      y = -y;
    }
    const double r2 = static_cast<double>(x) * x + static_cast<double>(y) * y;
    if (r2 > R2) return;
    const double proj = std::fabs(px * x + py * y);
    const double v = proj * std::pow(std::sqrt(r2), mu);
    best.offer(v, x, y, 0);
  };
  // For each column x, the minimizer over y sits within 2 of the line
  // y = x * n1/n2 projected to zero; same by rows. Any lattice point at
  // distance >= 2 from both lines has value above the unit-vector bound,
  // so these candidates cover the exact minimum.
  for (std::int64_t x = -Ri; x <= Ri; ++x) {
    if (std::fabs(py) > 1e-300) {
      const double ystar = -px * x / py;
      const std::int64_t y0 = static_cast<std::int64_t>(std::floor(ystar));
      for (std::int64_t y = y0 - 2; y <= y0 + 2; ++y) offer(x, y);
    }
    for (std::int64_t y = -2; y <= 2; ++y) offer(x, y);
  }
  for (std::int64_t y = -Ri; y <= Ri; ++y) {
    if (std::fabs(px) > 1e-300) {
      const double xstar = -py * y / px;
      const std::int64_t x0 = static_cast<std::int64_t>(std::floor(xstar));
      for (std::int64_t x = x0 - 2; x <= x0 + 2; ++x) offer(x, y);
    }
    for (std::int64_t x = -2; x <= 2; ++x) offer(x, y);
  }
  est.kappa = best.value;
  est.witness = best.xi;
  est.nodes_visited = 14 * Ri;
  {
    const double proj = std::fabs(px * best.xi[0] + py * best.xi[1]);
    const double norm = std::hypot(static_cast<double>(best.xi[0]),
                                   static_cast<double>(best.xi[1]));
    if (proj <= 32.0 * 2.220446e-16 * norm) est.kappa = 0.0;
  }
  return est;
}

double h_omega(const Direction& omega, const Direction& n, int d) {
  if (!is_unit(omega, d) || !is_unit(n, d))
    throw std::invalid_argument("h_omega: arguments must be unit vectors");
  double dp = 0.0;
  for (int k = 0; k < d; ++k) dp += omega[k] * n[k];
  const double under = std::max(0.0, 1.0 - dp * dp);
  double om[3] = {omega[0], omega[1], omega[2]};
  const double s1 = std::sqrt(under);
  const double s2 = std::sqrt(projection_sq(n, d, om));
  // identity sqrt(1 - (w.n)^2) = |(I - n n^T) w|, checked on the bounded side
  if (std::fabs(s1 - s2) > 1e-12)
    throw std::runtime_error("h_omega: identity cross-check failed");
  if (s2 <= 1e-13) return std::numeric_limits<double>::infinity();
  return 1.0 / s1;
}

WeakLpReport weak_lp_statistic(const std::vector<double>& kappa_values,
                               const std::vector<double>& weights, double p) {
  if (kappa_values.empty() || kappa_values.size() != weights.size())
    throw std::invalid_argument("weak_lp_statistic: empty or mismatched samples");
  WeakLpReport rep;
  rep.p = p;
  rep.samples = kappa_values.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0 || kappa_values[i] < 0.0)
      throw std::invalid_argument("weak_lp_statistic: bad sample");
    rep.total_measure += weights[i];
  }
  rep.per_threshold.reserve(20);
  for (int k = 1; k <= 20; ++k) {
    const double t = std::ldexp(1.0, -k);
    double measure = 0.0;
    for (std::size_t i = 0; i < kappa_values.size(); ++i)
      if (kappa_values[i] < t) measure += weights[i];
    const double v = measure > 0.0 ? std::pow(measure, 1.0 / p) / t : 0.0;
    rep.per_threshold.push_back(v);
    if (v > rep.statistic) {
      rep.statistic = v;
      rep.best_threshold = t;
    }
  }
  return rep;
}

}  // namespace homlab
