#pragma once

#include <vector>

#include "homlab/field.hpp"
#include "homlab/linalg.hpp"

namespace homlab {

/// Uniform grid on the unit torus T^d with N nodes per axis (period 1).
struct PeriodicGrid {
  int d = 2;
  int N = 64;

  PeriodicGrid() = default;
  PeriodicGrid(int dim, int n);

  double h() const { return 1.0 / N; }
  long nodes() const {
    long t = 1;
    for (int k = 0; k < d; ++k) t *= N;
    return t;
  }
  long cells() const { return nodes(); }
  int wrap(int i) const {
    i %= N;
    return i < 0 ? i + N : i;
  }
  long index(const int* iv) const {
    long t = 0;
    for (int k = 0; k < d; ++k) t = t * N + wrap(iv[k]);
    return t;
  }
};

/// Vector-valued function on grid nodes, component-major storage.
struct GridFunction {
  PeriodicGrid grid;
  int m = 1;
  Vector data;

  GridFunction() = default;
  GridFunction(const PeriodicGrid& g, int comps)
      : grid(g), m(comps), data(static_cast<std::size_t>(g.nodes()) * comps, 0.0) {}

  double& at(int comp, long node) { return data[comp * grid.nodes() + node]; }
  double at(int comp, long node) const { return data[comp * grid.nodes() + node]; }
  double mean(int comp) const;
  void subtract_means();
  double max_abs() const;
  /// Multilinear interpolation at a torus point y (any real coordinates).
  double sample(int comp, const double* y) const;
  /// Interpolated centered-difference gradient d/dy_axis at a torus point.
  double sample_gradient(int comp, const double* y, int axis) const;
};

struct CorrectorComponent {
  GridFunction chi;        // m components of chi_j^beta
  double residual = 0.0;   // relative residual of the discrete cell system
  SolveStats stats;
};

/// All correctors chi_j^beta (j < d, beta < m) on one grid.
struct CorrectorSet {
  PeriodicGrid grid;
  int d = 2;
  int m = 1;
  std::vector<CorrectorComponent> comp;  // index j*m + beta

  const CorrectorComponent& at(int j, int beta) const { return comp[j * m + beta]; }
  /// Gradient d/dy_k of component alpha of chi_j^beta at cell centers,
  /// flattened over cells in node order.
  std::vector<double> gradient_at_centers(int j, int beta, int alpha, int k) const;
  double max_residual() const;
  double max_mean_abs() const;
};

struct HomogenizedTensor {
  int d = 2;
  int m = 1;
  std::vector<double> a;  // layout ((i*d+j)*m+alpha)*m+beta

  double entry(int i, int j, int alpha, int beta) const {
    return a[((i * d + j) * m + alpha) * m + beta];
  }
  /// min over sampled unit xi of the quadratic form (derived ellipticity).
  double ellipticity_lower_bound(int samples = 400) const;
  HomogenizedTensor index_adjoint() const;
  double max_abs_diff(const HomogenizedTensor& other) const;
};

struct CellSolveOptions {
  double rel_tol = 1e-10;
  int max_iter = 0;       // 0 -> 10 * N^2
  bool force_cgnr = false;
};

/// Solves the periodic cell problem for one corrector component.
/// Throws if the iteration cap is reached before the tolerance.
CorrectorComponent solve_corrector(const CoefficientField& field,
                                   const PeriodicGrid& grid, int j, int beta,
                                   const CellSolveOptions& opts = {});

/// All d*m corrector components (independent solves).
CorrectorSet solve_correctors(const CoefficientField& field,
                              const PeriodicGrid& grid,
                              const CellSolveOptions& opts = {});

/// Effective tensor by the midpoint (cell-center) rule consistent with the
/// discretization.
HomogenizedTensor homogenized_tensor(const CoefficientField& field,
                                     const CorrectorSet& correctors);

/// True if a_{ij}^{ab} = a_{ji}^{ba} holds at sampled points.
bool field_is_symmetric(const CoefficientField& field, double tol = 1e-12);

}  // namespace homlab
