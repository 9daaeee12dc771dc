#include "homlab/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace homlab {

DomainSpec DomainSpec::circle(double radius) {
  DomainSpec d;
  d.preset = Preset::Circle;
  d.a = d.b = radius;
  return d;
}

DomainSpec DomainSpec::ellipse(double a, double b) {
  DomainSpec d;
  d.preset = Preset::Ellipse;
  d.a = a;
  d.b = b;
  return d;
}

DomainSpec DomainSpec::superellipse(int k, double a, double b) {
  DomainSpec d;
  d.preset = Preset::Superellipse;
  d.k = k;
  d.a = a;
  d.b = b;
  return d;
}

DomainSpec DomainSpec::fourier(double r0, std::vector<double> ac,
                               std::vector<double> as) {
  DomainSpec d;
  d.preset = Preset::FourierRadius;
  d.r0 = r0;
  d.ac = std::move(ac);
  d.as = std::move(as);
  return d;
}

ParametricBoundary DomainSpec::boundary() const {
  switch (preset) {
    case Preset::Circle:
      return make_circle(a);
    case Preset::Ellipse:
      return make_ellipse(a, b);
    case Preset::Superellipse:
      return make_superellipse(k, a, b);
    case Preset::FourierRadius:
      return make_fourier_radius(r0, ac, as);
  }
  throw std::logic_error("unreachable");
}

double DomainSpec::polar_radius(double theta) const {
  const double c = std::cos(theta), s = std::sin(theta);
  switch (preset) {
    case Preset::Circle:
      return a;
    case Preset::Ellipse:
      return a * b / std::sqrt(b * b * c * c + a * a * s * s);
    case Preset::Superellipse: {
      const double base = std::pow(std::fabs(c / a), k) + std::pow(std::fabs(s / b), k);
      return std::pow(base, -1.0 / k);
    }
    case Preset::FourierRadius: {
      double r = r0;
      for (std::size_t j = 0; j < ac.size(); ++j) r += ac[j] * std::cos((j + 1) * theta);
      for (std::size_t j = 0; j < as.size(); ++j) r += as[j] * std::sin((j + 1) * theta);
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

double DomainSpec::min_radius() const {
  double m = 1e300;
  for (int i = 0; i < 1024; ++i) m = std::min(m, polar_radius(2.0 * M_PI * i / 1024));
  return m;
}

double DomainSpec::max_radius() const {
  double m = 0.0;
  for (int i = 0; i < 1024; ++i) m = std::max(m, polar_radius(2.0 * M_PI * i / 1024));
  return m;
}

double DomainSpec::curve_param(double theta) const {
  theta = std::fmod(theta, 2.0 * M_PI);
  if (theta < 0) theta += 2.0 * M_PI;
  if (preset == Preset::Ellipse || preset == Preset::Circle) {
    const double r = polar_radius(theta);
    const double phi = std::atan2(r * std::sin(theta) / b, r * std::cos(theta) / a);
    double u = phi / (2.0 * M_PI);
    if (u < 0) u += 1.0;
    return u;
  }
  return theta / (2.0 * M_PI);
}

int DomainSpec::nominal_type() const {
  return preset == Preset::Superellipse ? k : 2;
}

std::string DomainSpec::name() const {
  switch (preset) {
    case Preset::Circle:
      return "circle(" + std::to_string(a) + ")";
    case Preset::Ellipse:
      return "ellipse(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Preset::Superellipse:
      return "superellipse(" + std::to_string(k) + "," + std::to_string(a) + "," +
             std::to_string(b) + ")";
    case Preset::FourierRadius:
      return "fourier_radius";
  }
  return "domain";
}

namespace {

double triangle_min_angle(const Point2& p0, const Point2& p1, const Point2& p2) {
  const double a2 = std::pow(p1[0] - p2[0], 2) + std::pow(p1[1] - p2[1], 2);
  const double b2 = std::pow(p0[0] - p2[0], 2) + std::pow(p0[1] - p2[1], 2);
  const double c2 = std::pow(p0[0] - p1[0], 2) + std::pow(p0[1] - p1[1], 2);
  const double a = std::sqrt(a2), b = std::sqrt(b2), c = std::sqrt(c2);
  const double A = std::acos(std::min(1.0, std::max(-1.0, (b2 + c2 - a2) / (2 * b * c))));
  const double B = std::acos(std::min(1.0, std::max(-1.0, (a2 + c2 - b2) / (2 * a * c))));
  const double C = M_PI - A - B;
  return std::min(A, std::min(B, C)) * 180.0 / M_PI;
}

struct Ring {
  int m = 0;               // angular vertex count
  double lambda = 1.0;     // radial scale in (0, 1]
  int first_vertex = 0;
};

}  // namespace

MeshedDomain mesh(const DomainSpec& domain, double h, double boundary_band_h) {
  if (h <= 0.0 || boundary_band_h <= 0.0)
    throw std::invalid_argument("mesh: sizes must be positive");
  const double hb = std::min(boundary_band_h, h);
  const double rmin = domain.min_radius(), rmax = domain.max_radius();
  const double rgeo = std::sqrt(rmin * rmax);
  auto curve = domain.boundary();
  const double perimeter = curve.perimeter();

  // angular count: base * 2^p with base in [8, 18], so 2:1 transitions end in
  // a center fan whose apex angle stays at or above 20 degrees
  int m0, mbase;
  {
    const double want = std::max(16.0, perimeter / hb);
    int p = 0;
    while ((16 << p) < want) ++p;
    mbase = std::min(16, std::max(8, static_cast<int>(std::ceil(want / (1 << p)))));
    m0 = mbase << p;
  }

  const double band_width = std::min(16.0 * hb, 0.3 * rmin);

  MeshedDomain out;
  out.h_interior = h;
  out.h_boundary = hb;

  std::vector<Ring> rings;
  auto push_ring = [&](int m, double lambda) {
    Ring r;
    r.m = m;
    r.lambda = lambda;
    r.first_vertex = static_cast<int>(out.vertices.size());
    for (int j = 0; j < m; ++j) {
      const double theta = 2.0 * M_PI * j / m;
      const double rr = lambda * domain.polar_radius(theta);
      out.vertices.push_back({rr * std::cos(theta), rr * std::sin(theta)});
    }
    rings.push_back(r);
  };

  // ring schedule: sizes from hb в the band, geometric growth to h inside
  double lambda = 1.0;
  double s = hb;
  int m = m0;
  push_ring(m, lambda);
  for (int guard = 0; guard < 100000; ++guard) {
    const double depth = (1.0 - lambda) * rmin;
    double target = s;
    if (depth >= band_width) target = std::min(h, s * 1.35);
    s = target;
    const double dl = target / rgeo;
    double next = lambda - dl;
    if (next * rmin <= 1.6 * target || next <= dl) break;
    // coarsen the angular resolution once spacing falls below ~0.7 target
    int mnext = m;
    if (m > mbase && next * 2.0 * M_PI * rgeo / m < 0.71 * target) mnext = m / 2;
    push_ring(mnext, next);
    m = mnext;
    lambda = next;
  }
  // finish the halving cadence so the center fan keeps its apex angle
  while (m > mbase) {
    lambda *= 0.55;
    m /= 2;
    push_ring(m, lambda);
  }

  // connect consecutive rings
  auto add_triangle = [&](int v0, int v1, int v2) {
    if (signed_area_of(out.vertices[v0], out.vertices[v1], out.vertices[v2]) < 0)
      std::swap(v1, v2);
    out.triangles.push_back({v0, v1, v2});
  };
  for (std::size_t r = 0; r + 1 < rings.size(); ++r) {
    const Ring& outer = rings[r];
    const Ring& inner = rings[r + 1];
    if (outer.m == inner.m) {
      for (int j = 0; j < outer.m; ++j) {
        const int o0 = outer.first_vertex + j;
        const int o1 = outer.first_vertex + (j + 1) % outer.m;
        const int i0 = inner.first_vertex + j;
        const int i1 = inner.first_vertex + (j + 1) % inner.m;
        // split along the shorter diagonal
        const double d0 = std::hypot(out.vertices[o0][0] - out.vertices[i1][0],
                                     out.vertices[o0][1] - out.vertices[i1][1]);
        const double d1 = std::hypot(out.vertices[o1][0] - out.vertices[i0][0],
                                     out.vertices[o1][1] - out.vertices[i0][1]);
        if (d0 <= d1) {
          add_triangle(o0, o1, i1);
          add_triangle(o0, i1, i0);
        } else {
          add_triangle(o0, o1, i0);
          add_triangle(o1, i1, i0);
        }
      }
    } else if (outer.m == 2 * inner.m) {
      for (int kk = 0; kk < inner.m; ++kk) {
        const int f0 = outer.first_vertex + 2 * kk;
        const int f1 = outer.first_vertex + (2 * kk + 1) % outer.m;
        const int f2 = outer.first_vertex + (2 * kk + 2) % outer.m;
        const int c0 = inner.first_vertex + kk;
        const int c1 = inner.first_vertex + (kk + 1) % inner.m;
        add_triangle(f0, f1, c0);
        add_triangle(f1, c1, c0);
        add_triangle(f1, f2, c1);
      }
    } else {
      throw std::logic_error("mesh: ring transition must be 1:1 or 2:1");
    }
  }

  // fan the innermost ring to a center vertex
  const Ring& core = rings.back();
  const int center = static_cast<int>(out.vertices.size());
  out.vertices.push_back({0.0, 0.0});
  for (int j = 0; j < core.m; ++j) {
    const int v0 = core.first_vertex + j;
    const int v1 = core.first_vertex + (j + 1) % core.m;
    add_triangle(center, v0, v1);
  }

  // boundary bookkeeping: ring 0 vertices sit exactly on the curve
  out.boundary_flag.assign(out.vertices.size(), 0);
  for (int j = 0; j < rings[0].m; ++j) {
    out.boundary_vertices.push_back(j);
    out.boundary_flag[j] = 1;
    out.boundary_params.push_back(domain.curve_param(2.0 * M_PI * j / rings[0].m));
  }

  // quality metrics
  double min_angle = 180.0;
  double area = 0.0;
  std::size_t worst = 0;
  for (std::size_t ti = 0; ti < out.triangles.size(); ++ti) {
    const auto& t = out.triangles[ti];
    const double ang = triangle_min_angle(out.vertices[t[0]], out.vertices[t[1]],
                                          out.vertices[t[2]]);
    if (ang < min_angle) {
      min_angle = ang;
      worst = ti;
    }
    area += signed_area_of(out.vertices[t[0]], out.vertices[t[1]], out.vertices[t[2]]);
  }
  out.min_angle_deg = min_angle;
  out.area = area;
  if (min_angle < 20.0) {
    const auto& t = out.triangles[worst];
    const Point2& p = out.vertices[t[0]];
    throw std::runtime_error(
        domain.name() + ": mesh quality unsatisfiable (min angle " +
        std::to_string(min_angle) + " deg at r=" +
        std::to_string(std::hypot(p[0], p[1])) + " theta=" +
        std::to_string(std::atan2(p[1], p[0])) + ", " +
        std::to_string(out.triangles.size()) + " triangles, h=" + std::to_string(h) +
        ", band=" + std::to_string(hb) + ")");
  }
  return out;
}

}  // namespace homlab
