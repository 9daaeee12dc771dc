#pragma once

#include <array>
#include <functional>
#include <vector>

#include "homlab/cell.hpp"
#include "homlab/diophantine.hpp"
#include "homlab/field.hpp"
#include "homlab/linalg.hpp"
#include "homlab/rates.hpp"

namespace homlab {

/// Orthogonal frame adapted to a unit direction: M is d x d orthogonal with
/// last column -n; N holds the first d-1 columns.
struct TangentFrame {
  int d = 2;
  Direction n{};
  std::array<std::array<double, 3>, 3> M{};  // column-major: M[col][row]

  double column(int col, int row) const { return M[col][row]; }
  /// max-norm orthogonality defect of M (should be ~1e-16)
  double orthogonality_defect() const;
  /// max-norm defect of N N^T + n (x) n = I
  double completeness_defect() const;
};

TangentFrame tangent_frame(const Direction& n, int d);

struct LayerGrid {
  int n1 = 64;   // theta_1 nodes
  int n2 = 64;   // theta_2 nodes (d = 2 lifts live on T^2 x (0,T))
  int nt = 128;  // t cells; nodes are 0..nt
  double T = 5.0;

  double h1() const { return 1.0 / n1; }
  double h2() const { return 1.0 / n2; }
  double ht() const { return T / nt; }
  long theta_nodes() const { return static_cast<long>(n1) * n2; }
  long nodes() const { return theta_nodes() * (nt + 1); }
};

using TorusData = std::function<void(const double* theta, double* value)>;

struct LayerProblem {
  CoefficientField field;  // pass the adjoint field for adjoint-layer solves
  Direction n{};
  TorusData data;          // Dirichlet trace F on T^d x {0}
  LayerGrid grid;
  double kappa_est = 1.0;  // attached Diophantine estimate (0 allowed)
  double rel_tol = 1e-8;
  int max_iter = 0;        // 0 -> automatic cap
};

/// Truncation height heuristic: T = clamp(5 / decay_rate, 5, 64), where the
/// decay rate is estimated from the slowest nonzero data mode when known.
double default_truncation(double decay_rate_estimate);

struct LayerSolution {
  LayerGrid grid;
  int d = 2, m = 1;
  Direction n{};
  std::vector<double> v;          // [comp][theta node][t node]
  std::vector<double> v_inf;      // per component
  std::vector<double> dt_v0;      // one-sided d_t V(theta, 0), [comp][theta node]
  std::vector<double> conormal0;  // variational flux (C grad V)_t at t=0
  std::vector<double> decay;      // ||V(.,t_k) - V_inf||_L2(T^d) per t node
  double residual = 0.0;
  bool slow_decay = false;        // kappa_est below threshold
  SolveStats stats;

  long node(long itheta, int k) const { return itheta * (grid.nt + 1) + k; }
  double value(int comp, long itheta, int k) const {
    return v[comp * grid.nodes() + node(itheta, k)];
  }
  /// trilinear interpolation for t in [0, T]
  double sample(int comp, double th1, double th2, double t) const;
  double tail_norm() const { return decay.empty() ? 0.0 : decay.back(); }
};

LayerSolution solve_layer(const LayerProblem& problem);

/// Exact rational weights of the reflection extension: sum_j (-j)^i l_j = 1.
struct ExtensionWeights {
  int order = 2;                  // C^k smoothness across t = 0
  std::vector<Fraction> lambda;   // k+1 weights
  std::vector<double> lambda_d;
};

ExtensionWeights extension_weights(int k);

/// Reflection extension to t in [-T', T]; requires (k+1) T' <= T.
struct ExtendedLayerSolution {
  LayerSolution base;
  ExtensionWeights weights;
  double t_min = 0.0;  // = -T'

  /// valid for t in [t_min, T]
  double sample(int comp, double th1, double th2, double t) const;
};

ExtendedLayerSolution extend_solution(LayerSolution solution,
                                      const ExtensionWeights& weights,
                                      double t_prime);

/// Physical-space sampler of the scaled boundary-layer function near a
/// tangent plane: eps * V((x - (x.n + a) n)/eps, -(x.n + a)/eps) with
/// a = -x0 . n, extended across the plane.
struct PhysicalLayerSampler {
  const ExtendedLayerSolution* ext = nullptr;
  Direction n{};
  double plane_offset = 0.0;  // a
  double eps = 1.0;
  int m = 1;

  double value(int comp, const std::array<double, 2>& x) const;
  std::array<double, 2> gradient(int comp, const std::array<double, 2>& x) const;
};

PhysicalLayerSampler physical_layer(const ExtendedLayerSolution& ext,
                                    const std::array<double, 2>& x0, double eps);

}  // namespace homlab
