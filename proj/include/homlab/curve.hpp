#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "homlab/series.hpp"

namespace homlab {

using Point2 = std::array<double, 2>;

inline double dot2(const Point2& a, const Point2& b) {
  return a[0] * b[0] + a[1] * b[1];
}
inline double norm2d(const Point2& a) { return std::hypot(a[0], a[1]); }

/// Smooth closed curve c : [0,1) -> R^2, counterclockwise, with analytic jet
/// evaluation up to `max_order` derivatives through the Series machinery.
class ParametricBoundary {
 public:
  using JetFn = std::function<std::array<Series, 2>(const Series& u)>;

  ParametricBoundary(std::string name, JetFn jet, int max_order,
                     double graph_radius);

  const std::string& name() const { return name_; }
  int max_order() const { return max_order_; }
  /// Largest tangent-patch half-width over which local graphs stay valid.
  double graph_radius() const { return graph_radius_; }

  std::array<Series, 2> jets(double u, int order) const;
  Point2 point(double u) const;
  Point2 tangent(double u) const;       // unit, forward
  Point2 outward_normal(double u) const;
  double speed(double u) const;         // |c'(u)|
  double curvature(double u) const;

  double perimeter() const;
  /// cumulative arclength from u=0 (table-based, ~1e-10 accurate)
  double arclength(double u) const;
  double param_from_arclength(double s) const;

  /// Checks closure, positive speed, and outward orientation against an
  /// interior point; throws on violation.
  void validate(const Point2& interior, double tol = 1e-12) const;

 private:
  void build_arclength_table() const;

  std::string name_;
  JetFn jet_;
  int max_order_;
  double graph_radius_;
  mutable std::vector<double> arc_table_;  // cumulative at u_i = i/table_n
  mutable double perimeter_ = 0.0;
  static constexpr int table_n_ = 4096;
};

// Presets. All are star-shaped about the origin.
ParametricBoundary make_circle(double radius = 1.0);
ParametricBoundary make_ellipse(double a, double b);
/// |x/a|^k + |y/b|^k = 1 for even k >= 2; type k at the axis points.
ParametricBoundary make_superellipse(int k, double a = 1.0, double b = 1.0);
/// r(theta) = r0 + sum_j (ac_j cos(j theta) + as_j sin(j theta)); must stay positive.
ParametricBoundary make_fourier_radius(double r0, const std::vector<double>& ac,
                                       const std::vector<double>& as);

}  // namespace homlab
