#pragma once

#include <functional>

#include "homlab/linalg.hpp"
#include "homlab/mesh.hpp"

namespace homlab {

/// 2x2 coefficient tensor sampled at a physical point.
using SpatialTensor = std::function<void(const Point2&, double*)>;
/// Dirichlet datum at a boundary vertex (point and curve parameter).
using BoundaryData = std::function<double(const Point2&, double)>;

inline SpatialTensor constant_tensor(double a11, double a12, double a21, double a22) {
  return [a11, a12, a21, a22](const Point2&, double* a) {
    a[0] = a11;
    a[1] = a12;
    a[2] = a21;
    a[3] = a22;
  };
}

struct SolveResult {
  const MeshedDomain* mesh = nullptr;
  Vector u;
  double residual = 0.0;
  SolveStats stats;
  double l2 = 0.0;
  double linf = 0.0;
  double boundary_linf = 0.0;  // max |imposed datum|
};

struct FemOptions {
  double rel_tol = 1e-9;
  int max_iter = 0;  // 0 -> automatic
};

/// First-order conforming FEM for -div(a grad u) = 0 with nodal Dirichlet data.
SolveResult solve_dirichlet(const MeshedDomain& mesh, const SpatialTensor& a,
                            const BoundaryData& g, const FemOptions& opts = {});

/// Point evaluation of P1 fields with binned triangle location and clamped
/// barycentric fallback near curved boundaries.
class MeshInterpolator {
 public:
  explicit MeshInterpolator(const MeshedDomain& mesh);
  double value(const Vector& u, const Point2& x) const;

 private:
  int locate(const Point2& x, double* bary) const;
  const MeshedDomain* mesh_;
  double x0_, y0_, dx_, dy_;
  int nx_, ny_;
  std::vector<std::vector<int>> bins_;
};

/// L2 norm of the P1 field (3-point edge-midpoint rule).
double l2_norm(const MeshedDomain& mesh, const Vector& u);

/// || u_a - u_b ||_L2 by quadrature on the finer mesh with interpolation of
/// the coarser solution.
double l2_error(const SolveResult& a, const SolveResult& b);

/// Difference in the nodal sense on a shared mesh (cross-check path).
double l2_error_nodal(const SolveResult& a, const SolveResult& b);

}  // namespace homlab
