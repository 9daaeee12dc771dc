#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "homlab/cell.hpp"
#include "homlab/curve.hpp"
#include "homlab/diophantine.hpp"
#include "homlab/field.hpp"
#include "homlab/layer.hpp"

namespace homlab {

/// Oscillating Dirichlet datum f(x, theta), smooth in the boundary point x
/// and 1-periodic in theta.
struct OscillatingData {
  int m = 1;
  std::function<void(const Point2& x, const double* theta, double* value)> sampler;
  bool theta_independent = false;
  bool theta2_independent = false;  // no dependence on theta_2 (mode list)
  std::vector<std::array<int, 2>> modes;  // wavevectors when trigonometric

  void eval(const Point2& x, const double* theta, double* value) const {
    sampler(x, theta, value);
  }
};

/// f(x, theta) = g(x) * (offset + sum_j amp_j cos(2 pi k_j . theta)).
OscillatingData trig_data(std::function<double(const Point2&)> g, double offset,
                          const std::vector<std::array<int, 2>>& waves,
                          const std::vector<double>& amps);
/// theta-independent datum f(x, theta) = g(x).
OscillatingData plain_data(std::function<double(const Point2&)> g);

/// Checks 1-periodicity of the sampler at random points (throws on failure).
void check_data_periodicity(const OscillatingData& data, const Point2& x,
                            double tol = 1e-12);

struct FbarSample {
  double u = 0.0;          // curve parameter
  double arclength = 0.0;
  Point2 point{};
  Direction normal{};
  double kappa = 0.0;
  bool reliable = true;
  int filled_from = -1;    // donor index for unreliable samples
  std::vector<double> value;
};

struct HomogenizedBoundaryData {
  const ParametricBoundary* boundary = nullptr;
  int m = 1;
  double perimeter = 0.0;
  std::vector<FbarSample> samples;       // ordered by arclength
  std::vector<std::size_t> reliable_idx;

  /// piecewise-linear interpolation in arclength over reliable samples
  double value(int comp, double arclength) const;
  std::size_t flagged_count() const;
};

struct FbarOptions {
  int sample_count = 0;       // 0 -> density rule max(64, 4/sqrt(eps)) per unit length
  double eps_hint = 0.0;      // feeds the density rule when sample_count == 0
  int cell_resolution = 64;   // corrector grid N
  int layer_n1 = 64;
  int layer_n2 = 0;           // 0 -> 4 when field and data ignore theta_2, else 64
  double layer_ht = 1.0 / 16.0;
  double t_cap = 24.0;
  double flag_threshold = 1e-3;
  double mu = 1.5;            // Diophantine exponent (d/p - 1 + 1/2 at p = 1)
  double kappa_cutoff = 1000.0;
  double rel_tol = 1e-8;
  bool parallel = true;
};

/// Assembles the homogenized Dirichlet datum along the boundary: per sample,
/// an adapted frame, adjoint-corrector layer solves, and torus quadrature of
/// the corrected coefficient average against f.
HomogenizedBoundaryData homogenized_data(const ParametricBoundary& boundary,
                                         const CoefficientField& field,
                                         const OscillatingData& data,
                                         const FbarOptions& options = {});

struct RegularityReport {
  std::vector<double> q;
  std::vector<double> norm;  // (sum |df/ds|^q ds)^(1/q) over reliable pairs
  std::size_t samples = 0;
};

/// Difference-quotient L^q norms of the tangential derivative (diagnostic).
RegularityReport regularity_probe(const HomogenizedBoundaryData& data,
                                  const std::vector<double>& qs);

}  // namespace homlab
