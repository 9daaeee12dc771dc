#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "homlab/fit.hpp"
#include "homlab/local_graph.hpp"

namespace homlab {

using RealFn = std::function<double(double)>;

/// measure of {x in (a,b): |g(x)| <= t} by adaptive bisection; interval
/// boundaries are resolved to resolution_factor * (b - a).
double sublevel_measure(const RealFn& g, double a, double b, double t,
                        double resolution_factor = 1e-6);

struct ExponentFit {
  LineFit fit;
  bool flagged = false;     // degenerate / resonant data
  std::string note;
  std::vector<double> xs;   // t or lambda grid
  std::vector<double> ys;   // measures or |I(lambda)|
};

/// Fitted p in measure{|phi'| <= t} ~ t^p over the given t grid (spanning
/// at least three decades). Saturated or empty measures are flagged.
ExponentFit gradient_sublevel_exponent(const LocalGraph& graph,
                                       const std::vector<double>& t_grid);

/// C-infinity bump exp(1 - 1/(1 - v^2)) with v = (x - center)/halfwidth.
RealFn smooth_bump(double center, double halfwidth);

struct OscillatoryValue {
  std::complex<double> value;
  long points = 0;  // quadrature nodes used
  double abs() const { return std::abs(value); }
};

struct OscintOptions {
  long max_points = 4000000;       // refuse above this budget
  double points_per_oscillation = 20.0;
};

/// integral of e^{i lambda phi(x)} psi(x) over (a,b) by composite 8-point
/// Gauss-Legendre with resolution tied to the oscillation count.
/// Throws when the budget cannot maintain the per-oscillation resolution.
OscillatoryValue oscillatory_integral(const RealFn& phi, const RealFn& psi,
                                      double a, double b, double lambda,
                                      const OscintOptions& opts = {});

/// Least-squares decay exponent of log |I(lambda)| vs log lambda.
ExponentFit oscillatory_decay_fit(const RealFn& phi, const RealFn& psi, double a,
                                  double b, const std::vector<double>& lambdas,
                                  const OscintOptions& opts = {});

}  // namespace homlab
