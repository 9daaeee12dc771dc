#include "homlab/curve.hpp"

#include <cmath>
#include <stdexcept>

namespace homlab {

ParametricBoundary::ParametricBoundary(std::string name, JetFn jet, int max_order,
                                       double graph_radius)
    : name_(std::move(name)),
      jet_(std::move(jet)),
      max_order_(max_order),
      graph_radius_(graph_radius) {
  if (max_order_ < 6) throw std::invalid_argument("boundary needs jets to order >= 6");
}

std::array<Series, 2> ParametricBoundary::jets(double u, int order) const {
  if (order > max_order_) throw std::invalid_argument("jet order above preset limit");
  return jet_(Series::variable(order, u));
}

Point2 ParametricBoundary::point(double u) const {
  auto j = jets(u, 0);
  return {j[0].value(), j[1].value()};
}

Point2 ParametricBoundary::tangent(double u) const {
  auto j = jets(u, 1);
  const double dx = j[0].derivative(1), dy = j[1].derivative(1);
  const double s = std::hypot(dx, dy);
  if (s <= 0.0) throw std::runtime_error("curve has vanishing speed");
  return {dx / s, dy / s};
}

Point2 ParametricBoundary::outward_normal(double u) const {
  const Point2 t = tangent(u);
  return {t[1], -t[0]};  // counterclockwise curve: rotate tangent by -90 deg
}

double ParametricBoundary::speed(double u) const {
  auto j = jets(u, 1);
  return std::hypot(j[0].derivative(1), j[1].derivative(1));
}

double ParametricBoundary::curvature(double u) const {
  auto j = jets(u, 2);
  const double x1 = j[0].derivative(1), y1 = j[1].derivative(1);
  const double x2 = j[0].derivative(2), y2 = j[1].derivative(2);
  const double sp = std::hypot(x1, y1);
  return (x1 * y2 - y1 * x2) / (sp * sp * sp);
}

void ParametricBoundary::build_arclength_table() const {
  if (!arc_table_.empty()) return;
  arc_table_.assign(table_n_ + 1, 0.0);
  // composite 4-point Gauss-Legendre per table cell
  static const double gx[4] = {0.069431844202973, 0.330009478207572,
                               0.669990521792428, 0.930568155797027};
  static const double gw[4] = {0.173927422568727, 0.326072577431273,
                               0.326072577431273, 0.173927422568727};
  const double du = 1.0 / table_n_;
  for (int i = 0; i < table_n_; ++i) {
    double s = 0.0;
    for (int g = 0; g < 4; ++g) s += gw[g] * speed((i + gx[g]) * du);
    arc_table_[i + 1] = arc_table_[i] + s * du;
  }
  perimeter_ = arc_table_[table_n_];
}

double ParametricBoundary::perimeter() const {
  build_arclength_table();
  return perimeter_;
}

double ParametricBoundary::arclength(double u) const {
  build_arclength_table();
  u -= std::floor(u);
  const double t = u * table_n_;
  const int i = std::min(static_cast<int>(t), table_n_ - 1);
  const double frac = t - i;
  return arc_table_[i] + frac * (arc_table_[i + 1] - arc_table_[i]);
}

double ParametricBoundary::param_from_arclength(double s) const {
  build_arclength_table();
  s = std::fmod(s, perimeter_);
  if (s < 0) s += perimeter_;
  int lo = 0, hi = table_n_;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (arc_table_[mid] <= s)
      lo = mid;
    else
      hi = mid;
  }
  const double seg = arc_table_[hi] - arc_table_[lo];
  double u = (lo + (seg > 0 ? (s - arc_table_[lo]) / seg : 0.0)) / table_n_;
  // one Newton pass on arclength(u) = s sharpens the table interpolation
  for (int it = 0; it < 2; ++it) {
    const double f = arclength(u) - s;
    const double d = speed(u);
    if (d > 0) u -= f / d;
  }
  return u - std::floor(u);
}

void ParametricBoundary::validate(const Point2& interior, double tol) const {
  const Point2 p0 = point(0.0), p1 = point(1.0 - 1e-13);
  if (std::hypot(p0[0] - p1[0], p0[1] - p1[1]) > std::max(tol, 1e-9))
    throw std::runtime_error("curve is not closed");
  for (int i = 0; i < 64; ++i) {
    const double u = (i + 0.25) / 64.0;
    if (speed(u) <= 0.0) throw std::runtime_error("curve speed vanishes");
    const Point2 n = outward_normal(u), p = point(u);
    if ((p[0] - interior[0]) * n[0] + (p[1] - interior[1]) * n[1] <= 0.0)
      throw std::runtime_error("normal is not outward");
  }
}

ParametricBoundary make_circle(double radius) { return make_ellipse(radius, radius); }

ParametricBoundary make_ellipse(double a, double b) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("ellipse: need a, b > 0");
  auto jet = [a, b](const Series& u) -> std::array<Series, 2> {
    const Series ang = 2.0 * M_PI * u;
    return {a * cos(ang), b * sin(ang)};
  };
  return ParametricBoundary(
      "ellipse(" + std::to_string(a) + "," + std::to_string(b) + ")", jet, 10,
      0.5 * std::min(a, b));
}

ParametricBoundary make_superellipse(int k, double a, double b) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("superellipse: k even, >= 2");
  if (a <= 0 || b <= 0) throw std::invalid_argument("superellipse: need a, b > 0");
  auto jet = [k, a, b](const Series& u) -> std::array<Series, 2> {
    const Series ang = 2.0 * M_PI * u;
    const Series c = cos(ang), s = sin(ang);
    // polar radius ((cos/a)^k + (sin/b)^k)^(-1/k); k even keeps the base smooth
    const Series base = ipow((1.0 / a) * c, k) + ipow((1.0 / b) * s, k);
    const Series r = pow(base, -1.0 / static_cast<double>(k));
    return {r * c, r * s};
  };
  return ParametricBoundary("superellipse(" + std::to_string(k) + ")", jet, 10,
                            0.45 * std::min(a, b));
}

ParametricBoundary make_fourier_radius(double r0, const std::vector<double>& ac,
                                       const std::vector<double>& as) {
  double amp = 0.0;
  for (double v : ac) amp += std::fabs(v);
  for (double v : as) amp += std::fabs(v);
  if (r0 - amp <= 0.0)
    throw std::invalid_argument("fourier_radius: radius may vanish");
  auto jet = [r0, ac, as](const Series& u) -> std::array<Series, 2> {
    const Series ang = 2.0 * M_PI * u;
    Series r(u.order(), r0);
    for (std::size_t j = 0; j < ac.size(); ++j)
      r = r + ac[j] * cos(static_cast<double>(j + 1) * ang);
    for (std::size_t j = 0; j < as.size(); ++j)
      r = r + as[j] * sin(static_cast<double>(j + 1) * ang);
    return {r * cos(ang), r * sin(ang)};
  };
  return ParametricBoundary("fourier_radius", jet, 10, 0.4 * (r0 - amp));
}

}  // namespace homlab
