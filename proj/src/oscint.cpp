#include "homlab/oscint.hpp"

#include <cmath>
#include <stdexcept>

namespace homlab {

namespace {

double sublevel_recurse(const RealFn& g, double a, double b, double t, double res) {
  const double len = b - a;
  const double mid = 0.5 * (a + b);
  if (len <= res) return std::fabs(g(mid)) <= t ? len : 0.0;
  const bool ia = std::fabs(g(a)) <= t, im = std::fabs(g(mid)) <= t,
             ib = std::fabs(g(b)) <= t;
  if (ia && im && ib) return len;
  if (!ia && !im && !ib && len <= 64.0 * res) return 0.0;
  return sublevel_recurse(g, a, mid, t, res) + sublevel_recurse(g, mid, b, t, res);
}

}  // namespace

double sublevel_measure(const RealFn& g, double a, double b, double t,
                        double resolution_factor) {
  if (t <= 0.0) throw std::invalid_argument("sublevel_measure: need t > 0");
  if (b <= a) throw std::invalid_argument("sublevel_measure: empty interval");
  const double res = resolution_factor * (b - a);
  // initial uniform scan localizes the set; bisection refines its boundary
  const int cells = 2048;
  double total = 0.0;
  const double dx = (b - a) / cells;
  for (int i = 0; i < cells; ++i)
    total += sublevel_recurse(g, a + i * dx, a + (i + 1) * dx, t, res);
  return total;
}

ExponentFit gradient_sublevel_exponent(const LocalGraph& graph,
                                       const std::vector<double>& t_grid) {
  if (t_grid.size() < 3)
    throw std::invalid_argument("gradient_sublevel_exponent: need >= 3 thresholds");
  double lo = 1e300, hi = 0.0;
  for (double t : t_grid) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  if (hi / lo < 1e3)
    throw std::invalid_argument(
        "gradient_sublevel_exponent: t grid must span >= 3 decades");

  const double r = graph.radius();
  auto dphi = [&graph](double s) { return graph.phi_derivative(s, 1); };
  ExponentFit out;
  out.xs = t_grid;
  const double full = 2.0 * r;
  int saturated = 0, empty = 0;
  for (double t : t_grid) {
    const double m = sublevel_measure(dphi, -r, r, t);
    out.ys.push_back(m);
    if (m >= full * (1.0 - 1e-9)) ++saturated;
    if (m == 0.0) ++empty;
  }
  if (empty == static_cast<int>(t_grid.size())) {
    out.flagged = true;
    out.note = "degenerate: all sublevel measures vanish";
    return out;
  }
  if (saturated == static_cast<int>(t_grid.size())) {
    out.flagged = true;
    out.note = "resonant: measure saturates at |B| for every t (flat patch)";
    out.fit.slope = 0.0;
    return out;
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    if (out.ys[i] > 0.0) {
      xs.push_back(t_grid[i]);
      ys.push_back(out.ys[i]);
    }
  out.fit = fit_loglog(xs, ys);
  return out;
}

RealFn smooth_bump(double center, double halfwidth) {
  if (halfwidth <= 0.0) throw std::invalid_argument("smooth_bump: halfwidth > 0");
  return [center, halfwidth](double x) {
    const double v = (x - center) / halfwidth;
    const double u = 1.0 - v * v;
    if (u <= 1e-14) return 0.0;
    return std::exp(1.0 - 1.0 / u);
  };
}

OscillatoryValue oscillatory_integral(const RealFn& phi, const RealFn& psi,
                                      double a, double b, double lambda,
                                      const OscintOptions& opts) {
  if (b <= a) throw std::invalid_argument("oscillatory_integral: empty interval");
  if (lambda <= 0.0) throw std::invalid_argument("oscillatory_integral: lambda > 0");

  // estimate the oscillation count from sampled |phi'|
  double dmax = 0.0;
  const int probe = 256;
  for (int i = 0; i <= probe; ++i) {
    const double x = a + (b - a) * i / probe;
    const double h = (b - a) * 1e-6;
    dmax = std::max(dmax, std::fabs(phi(x + h) - phi(x - h)) / (2.0 * h));
  }
  const double oscillations = lambda * dmax * (b - a) / (2.0 * M_PI) + 1.0;
  const long need = static_cast<long>(oscillations * opts.points_per_oscillation) + 64;
  if (need > opts.max_points)
    throw std::runtime_error(
        "oscillatory_integral: refusing under-resolved quadrature (needs " +
        std::to_string(need) + " points, budget " +
        std::to_string(opts.max_points) + ")");
  const int panels = static_cast<int>(need / 8) + 1;

  static const double gx[8] = {0.019855071751232, 0.101666761293187,
                               0.237233795041836, 0.408282678752175,
                               0.591717321247825, 0.762766204958164,
                               0.898333238706813, 0.980144928248768};
  static const double gw[8] = {0.050614268145188, 0.111190517226687,
                               0.156853322938944, 0.181341891689181,
                               0.181341891689181, 0.156853322938944,
                               0.111190517226687, 0.050614268145188};
  const double dx = (b - a) / panels;
  std::complex<double> acc(0.0, 0.0);
  for (int p = 0; p < panels; ++p) {
    const double x0 = a + p * dx;
    for (int g = 0; g < 8; ++g) {
      const double x = x0 + gx[g] * dx;
      const double w = psi(x);
      if (w == 0.0) continue;
      const double ph = lambda * phi(x);
      acc += gw[g] * dx * w * std::complex<double>(std::cos(ph), std::sin(ph));
    }
  }
  OscillatoryValue v;
  v.value = acc;
  v.points = static_cast<long>(panels) * 8;
  return v;
}

ExponentFit oscillatory_decay_fit(const RealFn& phi, const RealFn& psi, double a,
                                  double b, const std::vector<double>& lambdas,
                                  const OscintOptions& opts) {
  if (lambdas.size() < 3)
    throw std::invalid_argument("oscillatory_decay_fit: need >= 3 lambdas");
  ExponentFit out;
  for (double lam : lambdas) {
    const auto v = oscillatory_integral(phi, psi, a, b, lam, opts);
    out.xs.push_back(lam);
    out.ys.push_back(std::max(v.abs(), 1e-300));
  }
  out.fit = fit_loglog(out.xs, out.ys);
  return out;
}

}  // namespace homlab
