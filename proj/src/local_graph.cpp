#include "homlab/local_graph.hpp"

#include <cmath>
#include <stdexcept>

namespace homlab {

LocalGraph::LocalGraph(const ParametricBoundary& boundary, double u0, double radius)
    : boundary_(&boundary), u0_(u0), radius_(radius) {
  if (radius <= 0.0 || radius > boundary.graph_radius() * (1.0 + 1e-12))
    throw std::invalid_argument(
        "LocalGraph: radius outside the boundary's graph-safe range");
  x0_ = boundary.point(u0);
  tau_ = boundary.tangent(u0);
  n0_ = boundary.outward_normal(u0);
  speed0_ = boundary.speed(u0);
  const double p0 = phi(0.0);
  if (std::fabs(p0) > 1e-10)
    throw std::runtime_error("LocalGraph: phi(0) not zero");
}

double LocalGraph::param_at(double s) const {
  if (std::fabs(s) > radius_ * (1.0 + 1e-12))
    throw std::invalid_argument("LocalGraph: point outside patch");
  double u = u0_ + s / speed0_;
  for (int it = 0; it < 60; ++it) {
    auto j = boundary_->jets(u, 1);
    const double gx = j[0].value() - x0_[0], gy = j[1].value() - x0_[1];
    const double f = gx * tau_[0] + gy * tau_[1] - s;
    const double df = j[0].derivative(1) * tau_[0] + j[1].derivative(1) * tau_[1];
    if (std::fabs(df) < 1e-12 * speed0_)
      throw std::runtime_error(
          "LocalGraph: vertical tangency inside patch; reduce the radius");
    const double step = f / df;
    u -= step;
    if (std::fabs(step) < 1e-15) break;
  }
  return u;
}

double LocalGraph::phi(double s) const {
  const double u = param_at(s);
  const Point2 p = boundary_->point(u);
  return -((p[0] - x0_[0]) * n0_[0] + (p[1] - x0_[1]) * n0_[1]);
}

double LocalGraph::phi_derivative(double s, int k) const {
  if (k == 0) return phi(s);
  const double u = param_at(s);
  auto j = boundary_->jets(u, std::max(k + 2, 4));
  // tangent offset g(du) and height h(du) as series about u
  Series gx = j[0] - x0_[0], gy = j[1] - x0_[1];
  Series g = tau_[0] * gx + tau_[1] * gy;
  Series h = (-n0_[0]) * gx + (-n0_[1]) * gy;
  g[0] = 0.0;  // expand around the current point: g measures the s-offset
  const Series u_of_s = revert(g);
  h[0] = 0.0;
  const Series phi_series = compose(h, u_of_s);
  return phi_series.derivative(k);
}

Point2 LocalGraph::lift(double s) const {
  const double p = phi(s);
  return {x0_[0] + s * tau_[0] - p * n0_[0], x0_[1] + s * tau_[1] - p * n0_[1]};
}

double LocalGraph::measure_density(double s) const {
  const double dp = phi_derivative(s, 1);
  return std::sqrt(1.0 + dp * dp);
}

double LocalGraph::reproduction_error(int samples) const {
  double worst = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double s = -radius_ + 2.0 * radius_ * i / samples;
    const double u = param_at(s);
    const Point2 p = boundary_->point(u);
    const Point2 l = lift(s);
    worst = std::max(worst, std::hypot(p[0] - l[0], p[1] - l[1]));
  }
  return worst;
}

std::optional<TypeCertificate> type_at(
    const std::function<double(double, int)>& deriv, double radius, int k_max,
    double delta_min, int samples) {
  for (int order = 2; order <= k_max; ++order) {
    double lo = 1e300;
    for (int i = 0; i <= samples; ++i) {
      const double s = -radius + 2.0 * radius * i / samples;
      lo = std::min(lo, std::fabs(deriv(s, order)));
    }
    if (lo >= delta_min) {
      TypeCertificate cert;
      cert.k = order;
      cert.derivative_order = order;
      cert.delta = lo;
      cert.radius = radius;
      cert.samples = samples;
      return cert;
    }
  }
  return std::nullopt;
}

std::optional<TypeCertificate> type_at(const LocalGraph& graph, int k_max,
                                       double delta_min, int samples) {
  return type_at(
      [&graph](double s, int k) { return graph.phi_derivative(s, k); },
      graph.radius(), k_max, delta_min, samples);
}

TangentProjection project_to_tangent(const ParametricBoundary& boundary, double u0,
                                     double radius) {
  LocalGraph g(boundary, u0, radius);  // validates the patch
  TangentProjection p;
  p.x0 = g.base_point();
  p.tau = g.tangent_dir();
  p.n0 = g.normal_dir();
  p.radius = radius;
  return p;
}

}  // namespace homlab
