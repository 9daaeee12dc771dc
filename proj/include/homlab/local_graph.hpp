#pragma once

#include <optional>

#include "homlab/curve.hpp"

namespace homlab {

/// Local graph of a boundary at a base point: the curve near x0 written as
/// height phi(s) over the tangent line, measured along the inward normal so
/// convex boundaries have phi'' > 0. phi(0) = 0 and phi'(0) = 0.
class LocalGraph {
 public:
  LocalGraph(const ParametricBoundary& boundary, double u0, double radius);

  double radius() const { return radius_; }
  double base_param() const { return u0_; }
  Point2 base_point() const { return x0_; }
  Point2 tangent_dir() const { return tau_; }
  Point2 normal_dir() const { return n0_; }

  /// Curve parameter of the point with tangent coordinate s (Newton solve).
  double param_at(double s) const;
  double phi(double s) const;
  /// k-th derivative of phi at s via series reversion (k <= curve max order).
  double phi_derivative(double s, int k) const;
  /// Point on the curve above tangent coordinate s: x0 + s tau - phi(s) n.
  Point2 lift(double s) const;
  /// Surface measure density d sigma / ds = sqrt(1 + phi'(s)^2).
  double measure_density(double s) const;

  /// max |c(u) - lift(phi)| over the patch (self-check; ~Newton tolerance).
  double reproduction_error(int samples = 64) const;

 private:
  const ParametricBoundary* boundary_;
  double u0_, radius_;
  Point2 x0_, tau_, n0_;
  double speed0_;
};

struct TypeCertificate {
  int k = 2;             // certified type
  int derivative_order = 2;
  double delta = 0.0;    // min |phi^(order)| over the sampled patch
  double radius = 0.0;
  int samples = 0;
};

/// Smallest derivative order j in (1, k_max] with |phi^(j)| >= delta_min over
/// the sampled patch; empty when no order qualifies (resonant/flat patch).
/// `deriv(s, k)` returns the k-th derivative of the graph function at s.
std::optional<TypeCertificate> type_at(
    const std::function<double(double, int)>& deriv, double radius, int k_max,
    double delta_min, int samples = 128);
std::optional<TypeCertificate> type_at(const LocalGraph& graph, int k_max,
                                       double delta_min, int samples = 128);

/// Tangent-plane projection at x0 and its inverse on a patch.
struct TangentProjection {
  Point2 x0, tau, n0;
  double radius;

  /// tangent coordinate of P(x) = x - ((x - x0) . n0) n0
  double project(const Point2& x) const {
    return (x[0] - x0[0]) * tau[0] + (x[1] - x0[1]) * tau[1];
  }
};

TangentProjection project_to_tangent(const ParametricBoundary& boundary, double u0,
                                     double radius);

}  // namespace homlab
