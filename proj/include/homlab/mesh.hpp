#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "homlab/curve.hpp"

namespace homlab {

/// Star-shaped smooth domain preset with a polar radius description used by
/// the mesh generator and an exact curve for boundary placement.
struct DomainSpec {
  enum class Preset { Circle, Ellipse, Superellipse, FourierRadius };
  Preset preset = Preset::Circle;
  double a = 1.0, b = 1.0;
  int k = 2;  // superellipse exponent (even)
  double r0 = 1.0;
  std::vector<double> ac, as;

  static DomainSpec circle(double radius = 1.0);
  static DomainSpec ellipse(double a, double b);
  static DomainSpec superellipse(int k, double a = 1.0, double b = 1.0);
  static DomainSpec fourier(double r0, std::vector<double> ac, std::vector<double> as);

  ParametricBoundary boundary() const;
  double polar_radius(double theta) const;
  double min_radius() const;
  double max_radius() const;
  /// curve parameter of the boundary point at polar angle theta
  double curve_param(double theta) const;
  /// nominal finite type (2 for circle/ellipse, k for superellipse axis points)
  int nominal_type() const;
  std::string name() const;
};

inline double signed_area_of(const Point2& p0, const Point2& p1, const Point2& p2) {
  return 0.5 *
         ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
}

struct MeshedDomain {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;  // positively oriented
  std::vector<int> boundary_vertices;         // ordered around the boundary
  std::vector<double> boundary_params;        // curve parameter per boundary vertex
  double h_interior = 0.0;
  double h_boundary = 0.0;
  double min_angle_deg = 0.0;
  double area = 0.0;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t triangle_count() const { return triangles.size(); }
  bool is_boundary(int v) const { return boundary_flag[v] != 0; }
  std::vector<char> boundary_flag;  // per vertex
};

/// Layered polar mesh: boundary vertices exactly on the curve, cell size
/// boundary_band_h in a band near the boundary, graded to h inside, angular
/// coarsening toward the center. Deterministic. Throws if the minimum angle
/// drops below 20 degrees (message carries the metrics).
MeshedDomain mesh(const DomainSpec& domain, double h, double boundary_band_h);

}  // namespace homlab
