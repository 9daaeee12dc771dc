#pragma once

#include <string>
#include <vector>

#include "homlab/fbar.hpp"
#include "homlab/fem.hpp"
#include "homlab/fit.hpp"
#include "homlab/layer.hpp"
#include "homlab/mesh.hpp"

namespace homlab {

struct RatePoint {
  double eps = 0.0;
  double l2_error = 0.0;
  double h = 0.0;
  int solver_iters = 0;
};

struct RateReport {
  std::vector<RatePoint> points;  // eps strictly decreasing
  LineFit fit;                    // slope of log error vs log eps
  double predicted_exponent = 0.0;
  std::string provenance;

  bool errors_decreasing() const {
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
      if (points[i + 1].l2_error >= points[i].l2_error) return false;
    return true;
  }
};

/// Least squares on (log eps, log err); throws on nonpositive errors.
LineFit rate_fit(const std::vector<double>& eps, const std::vector<double>& errors);

struct ExperimentOptions {
  double h_interior = 1.0 / 32.0;  // interior size when only the data oscillates
  double reference_h_factor = 8.0; // u0 mesh at (min eps)/factor
  FbarOptions fbar;
  FemOptions fem;
  bool verbose = false;
};

/// Dirichlet problem with constant coefficients and oscillating data;
/// predicted exponent 1/(2k) for a type-k domain.
RateReport constant_coeff_experiment(const DomainSpec& domain,
                                     const std::vector<double>& tensor2x2,
                                     const OscillatingData& f,
                                     const std::vector<double>& eps_list,
                                     const ExperimentOptions& opts = {});

/// Full pipeline: oscillating operator and data against the homogenized
/// problem with the assembled boundary datum; predicted exponent alpha*/2.
RateReport oscillating_coeff_experiment(const DomainSpec& domain,
                                        const CoefficientField& field,
                                        const OscillatingData& f,
                                        const std::vector<double>& eps_list,
                                        const ExperimentOptions& opts = {});

struct LayerExpansionReport {
  double eps = 0.0;
  double sigma = 0.5;
  std::vector<double> radii;
  std::vector<double> sup_grad;   // sup |grad w| on B(x0, r)
  std::vector<double> bound;      // sqrt(eps) + r^(2+sigma)/eps^(1+sigma)
  double fitted_c = 0.0;          // max ratio sup/bound
};

/// Difference between the adjoint-data boundary-layer solve and the lifted
/// half-space approximation on shrinking half-balls.
LayerExpansionReport layer_expansion_check(const DomainSpec& domain,
                                           const CoefficientField& field,
                                           double x0_param, double eps,
                                           double sigma = 0.5,
                                           const ExperimentOptions& opts = {});

struct HigherOrderReport {
  RateReport uncorrected;
  RateReport corrected;
};

/// Smooth-data expansion u0 + eps chi grad u0 + eps v_bl against u_eps.
HigherOrderReport higher_order_experiment(const DomainSpec& domain,
                                          const CoefficientField& field,
                                          const std::function<double(const Point2&)>& g,
                                          const std::vector<double>& eps_list,
                                          const ExperimentOptions& opts = {});

/// Coefficient sampler x -> A(x/eps) for the FEM assembly.
SpatialTensor scaled_tensor(const CoefficientField& field, double eps);

}  // namespace homlab
