#include "homlab/fem.hpp"

#include <cmath>
#include <stdexcept>

namespace homlab {

namespace {

struct TriGeometry {
  double area;
  double gx[3], gy[3];  // P1 basis gradients
  Point2 centroid;
};

TriGeometry tri_geometry(const MeshedDomain& mesh, const std::array<int, 3>& t) {
  const Point2& p0 = mesh.vertices[t[0]];
  const Point2& p1 = mesh.vertices[t[1]];
  const Point2& p2 = mesh.vertices[t[2]];
  TriGeometry g;
  const double det =
      (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
  g.area = 0.5 * det;
  g.gx[0] = (p1[1] - p2[1]) / det;
  g.gy[0] = (p2[0] - p1[0]) / det;
  g.gx[1] = (p2[1] - p0[1]) / det;
  g.gy[1] = (p0[0] - p2[0]) / det;
  g.gx[2] = (p0[1] - p1[1]) / det;
  g.gy[2] = (p1[0] - p0[0]) / det;
  g.centroid = {(p0[0] + p1[0] + p2[0]) / 3.0, (p0[1] + p1[1] + p2[1]) / 3.0};
  return g;
}

}  // namespace

SolveResult solve_dirichlet(const MeshedDomain& mesh, const SpatialTensor& a,
                            const BoundaryData& g, const FemOptions& opts) {
  const int n = static_cast<int>(mesh.vertex_count());
  CsrBuilder builder(n);
  double at[4];
  for (const auto& t : mesh.triangles) {
    const TriGeometry geo = tri_geometry(mesh, t);
    a(geo.centroid, at);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double v = geo.area * (geo.gx[i] * (at[0] * geo.gx[j] + at[1] * geo.gy[j]) +
                                     geo.gy[i] * (at[2] * geo.gx[j] + at[3] * geo.gy[j]));
        builder.add(t[i], t[j], v);
      }
  }
  CsrMatrix K = builder.build();

  SolveResult res;
  res.mesh = &mesh;
  Vector x0(n, 0.0);
  for (std::size_t bi = 0; bi < mesh.boundary_vertices.size(); ++bi) {
    const int v = mesh.boundary_vertices[bi];
    x0[v] = g(mesh.vertices[v], mesh.boundary_params[bi]);
    res.boundary_linf = std::max(res.boundary_linf, std::fabs(x0[v]));
  }

  Vector rhs(n, 0.0);
  K.multiply(x0, rhs);
  for (auto& v : rhs) v = -v;
  for (int v : mesh.boundary_vertices) rhs[v] = 0.0;

  Vector diag = K.diagonal();
  Vector inv_diag(n, 1.0);
  for (int i = 0; i < n; ++i)
    if (!mesh.is_boundary(i) && diag[i] > 0.0) inv_diag[i] = 1.0 / diag[i];
  auto pin = [&mesh](Vector& v) {
    for (int b : mesh.boundary_vertices) v[b] = 0.0;
  };
  auto apply = [&K, &mesh](const Vector& in, Vector& out) {
    K.multiply(in, out);
    for (int b : mesh.boundary_vertices) out[b] = 0.0;
  };

  const int cap = opts.max_iter > 0 ? opts.max_iter : 40 * static_cast<int>(std::sqrt(n)) + 8000;
  Vector z(n, 0.0);
  res.stats = conjugate_gradient(apply, rhs, z, inv_diag, opts.rel_tol, cap, pin);
  if (!res.stats.converged && norm2(rhs) > 1e-14)
    throw std::runtime_error("solve_dirichlet: stagnation at residual " +
                             std::to_string(res.stats.relative_residual));
  res.residual = res.stats.relative_residual;
  res.u.resize(n);
  for (int i = 0; i < n; ++i) res.u[i] = x0[i] + z[i];
  res.l2 = l2_norm(mesh, res.u);
  for (double v : res.u) res.linf = std::max(res.linf, std::fabs(v));
  return res;
}

MeshInterpolator::MeshInterpolator(const MeshedDomain& mesh) : mesh_(&mesh) {
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const auto& p : mesh.vertices) {
    xlo = std::min(xlo, p[0]);
    xhi = std::max(xhi, p[0]);
    ylo = std::min(ylo, p[1]);
    yhi = std::max(yhi, p[1]);
  }
  const int target = std::max(8, static_cast<int>(std::sqrt(mesh.triangles.size())));
  nx_ = ny_ = target;
  x0_ = xlo;
  y0_ = ylo;
  dx_ = (xhi - xlo) / nx_ + 1e-300;
  dy_ = (yhi - ylo) / ny_ + 1e-300;
  bins_.resize(static_cast<std::size_t>(nx_) * ny_);
  for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
    const auto& t = mesh.triangles[ti];
    double txlo = 1e300, txhi = -1e300, tylo = 1e300, tyhi = -1e300;
    for (int c = 0; c < 3; ++c) {
      const Point2& p = mesh.vertices[t[c]];
      txlo = std::min(txlo, p[0]);
      txhi = std::max(txhi, p[0]);
      tylo = std::min(tylo, p[1]);
      tyhi = std::max(tyhi, p[1]);
    }
    const int ix0 = std::max(0, static_cast<int>((txlo - x0_) / dx_));
    const int ix1 = std::min(nx_ - 1, static_cast<int>((txhi - x0_) / dx_));
    const int iy0 = std::max(0, static_cast<int>((tylo - y0_) / dy_));
    const int iy1 = std::min(ny_ - 1, static_cast<int>((tyhi - y0_) / dy_));
    for (int ix = ix0; ix <= ix1; ++ix)
      for (int iy = iy0; iy <= iy1; ++iy)
        bins_[static_cast<std::size_t>(ix) * ny_ + iy].push_back(static_cast<int>(ti));
  }
}

int MeshInterpolator::locate(const Point2& x, double* bary) const {
  const int cx = std::min(nx_ - 1, std::max(0, static_cast<int>((x[0] - x0_) / dx_)));
  const int cy = std::min(ny_ - 1, std::max(0, static_cast<int>((x[1] - y0_) / dy_)));
  int best_tri = -1;
  double best_defect = 1e300;
  double best_bary[3] = {0, 0, 0};
  for (int ring = 0; ring < std::max(nx_, ny_); ++ring) {
    const int ix0 = std::max(0, cx - ring), ix1 = std::min(nx_ - 1, cx + ring);
    const int iy0 = std::max(0, cy - ring), iy1 = std::min(ny_ - 1, cy + ring);
    for (int ix = ix0; ix <= ix1; ++ix)
      for (int iy = iy0; iy <= iy1; ++iy) {
        if (ring > 0 && ix > ix0 && ix < ix1 && iy > iy0 && iy < iy1) continue;
        for (int ti : bins_[static_cast<std::size_t>(ix) * ny_ + iy]) {
          const auto& t = mesh_->triangles[ti];
          const Point2& p0 = mesh_->vertices[t[0]];
          const Point2& p1 = mesh_->vertices[t[1]];
          const Point2& p2 = mesh_->vertices[t[2]];
          const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) -
                             (p2[0] - p0[0]) * (p1[1] - p0[1]);
          const double l1 = ((x[0] - p0[0]) * (p2[1] - p0[1]) -
                             (x[1] - p0[1]) * (p2[0] - p0[0])) /
                            det;
          const double l2v = ((p1[0] - p0[0]) * (x[1] - p0[1]) -
                              (p1[1] - p0[1]) * (x[0] - p0[0])) /
                             det;
          const double l0 = 1.0 - l1 - l2v;
          const double defect = std::max({-l0, -l1, -l2v, 0.0});
          if (defect < best_defect) {
            best_defect = defect;
            best_tri = ti;
            best_bary[0] = l0;
            best_bary[1] = l1;
            best_bary[2] = l2v;
          }
        }
      }
    if (best_tri >= 0 && best_defect <= 1e-10) break;
    if (ring >= 2 && best_tri >= 0 && best_defect < 0.2) break;
  }
  if (best_tri < 0) throw std::runtime_error("MeshInterpolator: point not locatable");
  // clamp tiny exterior defects (curved-boundary mismatch between meshes)
  double s = 0.0;
  for (int c = 0; c < 3; ++c) {
    best_bary[c] = std::max(0.0, best_bary[c]);
    s += best_bary[c];
  }
  for (int c = 0; c < 3; ++c) bary[c] = best_bary[c] / s;
  return best_tri;
}

double MeshInterpolator::value(const Vector& u, const Point2& x) const {
  double bary[3];
  const int ti = locate(x, bary);
  const auto& t = mesh_->triangles[ti];
  return bary[0] * u[t[0]] + bary[1] * u[t[1]] + bary[2] * u[t[2]];
}

double l2_norm(const MeshedDomain& mesh, const Vector& u) {
  double acc = 0.0;
  for (const auto& t : mesh.triangles) {
    const double area = std::fabs(
        signed_area_of(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]));
    for (int e = 0; e < 3; ++e) {
      const double mid = 0.5 * (u[t[e]] + u[t[(e + 1) % 3]]);
      acc += area / 3.0 * mid * mid;
    }
  }
  return std::sqrt(acc);
}

double l2_error(const SolveResult& a, const SolveResult& b) {
  const SolveResult& fine = a.mesh->vertex_count() >= b.mesh->vertex_count() ? a : b;
  const SolveResult& coarse = a.mesh->vertex_count() >= b.mesh->vertex_count() ? b : a;
  MeshInterpolator interp(*coarse.mesh);
  double acc = 0.0;
  for (const auto& t : fine.mesh->triangles) {
    const double area =
        std::fabs(signed_area_of(fine.mesh->vertices[t[0]], fine.mesh->vertices[t[1]],
                                 fine.mesh->vertices[t[2]]));
    for (int e = 0; e < 3; ++e) {
      const int v0 = t[e], v1 = t[(e + 1) % 3];
      const Point2 mid{0.5 * (fine.mesh->vertices[v0][0] + fine.mesh->vertices[v1][0]),
                       0.5 * (fine.mesh->vertices[v0][1] + fine.mesh->vertices[v1][1])};
      const double uf = 0.5 * (fine.u[v0] + fine.u[v1]);
      const double uc = interp.value(coarse.u, mid);
      acc += area / 3.0 * (uf - uc) * (uf - uc);
    }
  }
  return std::sqrt(acc);
}

double l2_error_nodal(const SolveResult& a, const SolveResult& b) {
  if (a.mesh != b.mesh)
    throw std::invalid_argument("l2_error_nodal: results live on different meshes");
  Vector diff(a.u.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a.u[i] - b.u[i];
  return l2_norm(*a.mesh, diff);
}

}  // namespace homlab
