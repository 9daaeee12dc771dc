#include "homlab/layer.hpp"

#include <cmath>
#include <stdexcept>

namespace homlab {

TangentFrame tangent_frame(const Direction& n, int d) {
  if (!is_unit(n, d)) throw std::invalid_argument("tangent_frame: n not unit");
  TangentFrame f;
  f.d = d;
  f.n = n;
  if (d == 2) {
    // N = (-n2, n1), last column -n
    f.M[0][0] = -n[1];
    f.M[0][1] = n[0];
    f.M[1][0] = -n[0];
    f.M[1][1] = -n[1];
  } else {
    int axis = 0;
    for (int k = 1; k < 3; ++k)
      if (std::fabs(n[k]) < std::fabs(n[axis])) axis = k;
    double v[3] = {0, 0, 0};
    v[axis] = 1.0;
    double dp = v[0] * n[0] + v[1] * n[1] + v[2] * n[2];
    for (int k = 0; k < 3; ++k) v[k] -= dp * n[k];
    const double nv = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (int k = 0; k < 3; ++k) v[k] /= nv;
    const double w[3] = {n[1] * v[2] - n[2] * v[1], n[2] * v[0] - n[0] * v[2],
                         n[0] * v[1] - n[1] * v[0]};
    for (int k = 0; k < 3; ++k) {
      f.M[0][k] = v[k];
      f.M[1][k] = w[k];
      f.M[2][k] = -n[k];
    }
  }
  return f;
}

double TangentFrame::orthogonality_defect() const {
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += M[i][k] * M[j][k];
      worst = std::max(worst, std::fabs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

double TangentFrame::completeness_defect() const {
  double worst = 0.0;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      double s = n[r] * n[c];
      for (int col = 0; col < d - 1; ++col) s += M[col][r] * M[col][c];
      worst = std::max(worst, std::fabs(s - (r == c ? 1.0 : 0.0)));
    }
  return worst;
}

double default_truncation(double decay_rate_estimate) {
  if (decay_rate_estimate <= 0.0) return 64.0;
  return std::min(64.0, std::max(5.0, 5.0 / decay_rate_estimate));
}

namespace {

struct GaussData {
  // grad[g][corner][axis] in physical units
  double grad[8][8][3];
  double point[8][3];  // reference coordinates in [0,1]^3
  double weight;
};

GaussData make_gauss(double h1, double h2, double ht) {
  GaussData q;
  const double g0 = 0.5 - 0.5 / std::sqrt(3.0), g1 = 0.5 + 0.5 / std::sqrt(3.0);
  const double h[3] = {h1, h2, ht};
  q.weight = h1 * h2 * ht / 8.0;
  for (int g = 0; g < 8; ++g) {
    double xi[3];
    for (int a = 0; a < 3; ++a) xi[a] = ((g >> a) & 1) ? g1 : g0;
    for (int a = 0; a < 3; ++a) q.point[g][a] = xi[a];
    for (int c = 0; c < 8; ++c) {
      for (int a = 0; a < 3; ++a) {
        double v = ((c >> a) & 1) ? 1.0 : -1.0;
        for (int b = 0; b < 3; ++b) {
          if (b == a) continue;
          v *= ((c >> b) & 1) ? xi[b] : 1.0 - xi[b];
        }
        q.grad[g][c][a] = v / h[a];
      }
    }
  }
  return q;
}

// Effective (d+1)x(d+1) quadratic-form tensor C = J^T A J with
// J = [(I - n n^T) | -n]; gradients in (theta_1, theta_2, t).
void effective_tensor(const CoefficientField& field, const Direction& n,
                      const double* y, double* c_out /* 9*m*m */) {
  const int d = field.d, m = field.m;
  std::vector<double> a(field.tensor_size());
  field.eval(y, a.data());
  double J[2][3] = {{0, 0, 0}, {0, 0, 0}};
  for (int i = 0; i < d; ++i) {
    for (int r = 0; r < d; ++r) J[i][r] = (i == r ? 1.0 : 0.0) - n[i] * n[r];
    J[i][d] = -n[i];
  }
  for (int r = 0; r <= d; ++r)
    for (int s = 0; s <= d; ++s)
      for (int al = 0; al < m; ++al)
        for (int be = 0; be < m; ++be) {
          double v = 0.0;
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
              v += J[i][r] * a[field.idx(i, j, al, be)] * J[j][s];
          c_out[((r * 3 + s) * m + al) * m + be] = v;
        }
}

struct StencilOperator {
  LayerGrid grid;
  int m = 1;
  long tnodes = 0, nodes = 0;
  std::vector<long> theta_nbr;     // [theta node][9] -> theta neighbor index
  std::vector<double> val;         // [node][27][m][m]
  std::vector<char> bottom_mask;   // per node

  long node(long it, int k) const { return it * (grid.nt + 1) + k; }

  void apply_full(const Vector& x, Vector& y) const {
    const int ntp = grid.nt + 1;
    std::fill(y.begin(), y.end(), 0.0);
    for (int al = 0; al < m; ++al) {
      for (long it = 0; it < tnodes; ++it) {
        const long* nb = &theta_nbr[it * 9];
        for (int k = 0; k < ntp; ++k) {
          const long nid = it * ntp + k;
          const double* row = &val[(static_cast<std::size_t>(nid) * 27) * m * m];
          double acc = 0.0;
          for (int o = 0; o < 9; ++o) {
            const long base = nb[o] * ntp + k;
            for (int dk = -1; dk <= 1; ++dk) {
              const int kk = k + dk;
              if (kk < 0 || kk >= ntp) continue;
              const double* blk = row + ((o * 3) + (dk + 1)) * m * m;
              for (int be = 0; be < m; ++be)
                acc += blk[al * m + be] * x[be * nodes + base + dk];
            }
          }
          y[al * nodes + nid] += acc;
        }
      }
    }
  }

  void apply_constrained(const Vector& x, Vector& y) const {
    apply_full(x, y);
    for (int al = 0; al < m; ++al)
      for (long it = 0; it < tnodes; ++it) y[al * nodes + node(it, 0)] = 0.0;
  }
};

}  // namespace

LayerSolution solve_layer(const LayerProblem& problem) {
  const int d = problem.field.d, m = problem.field.m;
  if (d != 2)
    throw std::invalid_argument("solve_layer: PDE path implemented for d = 2 lifts");
  if (!is_unit(problem.n, d)) throw std::invalid_argument("solve_layer: n not unit");
  const LayerGrid& g = problem.grid;
  if (g.n1 < 2 || g.n2 < 2 || g.nt < 4 || g.T <= 0.0)
    throw std::invalid_argument("solve_layer: grid too small");
  check_ellipticity(problem.field);

  StencilOperator op;
  op.grid = g;
  op.m = m;
  op.tnodes = g.theta_nodes();
  op.nodes = g.nodes();
  const int ntp = g.nt + 1;

  // theta neighbor table (9-point, periodic)
  op.theta_nbr.resize(op.tnodes * 9);
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2) {
      const long it = static_cast<long>(i1) * g.n2 + i2;
      int o = 0;
      for (int d1 = -1; d1 <= 1; ++d1)
        for (int d2 = -1; d2 <= 1; ++d2) {
          const int j1 = (i1 + d1 + g.n1) % g.n1;
          const int j2 = (i2 + d2 + g.n2) % g.n2;
          op.theta_nbr[it * 9 + o] = static_cast<long>(j1) * g.n2 + j2;
          ++o;
        }
    }

  op.val.assign(static_cast<std::size_t>(op.nodes) * 27 * m * m, 0.0);
  const GaussData gauss = make_gauss(g.h1(), g.h2(), g.ht());

  const bool scalar_fast = problem.field.scalar && m == 1;
  // scalar metric: diag(I - n n^T, 1); precompute elementary matrices per
  // Gauss point so a cell costs 8 coefficient samples and 8x64 fused adds
  double elem[8][8][8];
  if (scalar_fast) {
    const double n1v = problem.n[0], n2v = problem.n[1];
    const double P[3][3] = {{1.0 - n1v * n1v, -n1v * n2v, 0.0},
                            {-n1v * n2v, 1.0 - n2v * n2v, 0.0},
                            {0.0, 0.0, 1.0}};
    for (int gp = 0; gp < 8; ++gp)
      for (int c = 0; c < 8; ++c)
        for (int cc = 0; cc < 8; ++cc) {
          double s = 0.0;
          for (int r = 0; r < 3; ++r)
            for (int t = 0; t < 3; ++t)
              s += gauss.grad[gp][c][r] * P[r][t] * gauss.grad[gp][cc][t];
          elem[gp][c][cc] = s * gauss.weight;
        }
  }

  std::vector<double> ctensor(9 * m * m);
  std::vector<double> afield(problem.field.tensor_size());
  double kcell[8 * 4][8 * 4];  // corners x components (m <= 4)
  if (m > 4) throw std::invalid_argument("solve_layer: m <= 4 supported");

  for (int ci1 = 0; ci1 < g.n1; ++ci1) {
    for (int ci2 = 0; ci2 < g.n2; ++ci2) {
      for (int ck = 0; ck < g.nt; ++ck) {
        const int nc = 8 * m;
        for (int a = 0; a < nc; ++a)
          for (int b = 0; b < nc; ++b) kcell[a][b] = 0.0;

        for (int gp = 0; gp < 8; ++gp) {
          const double th1 = (ci1 + gauss.point[gp][0]) * g.h1();
          const double th2 = (ci2 + gauss.point[gp][1]) * g.h2();
          const double tt = (ck + gauss.point[gp][2]) * g.ht();
          const double y[2] = {th1 - tt * problem.n[0], th2 - tt * problem.n[1]};
          if (scalar_fast) {
            problem.field.eval(y, afield.data());
            const double a00 = afield[0];  // scalar diagonal entry
            for (int c = 0; c < 8; ++c)
              for (int cc = 0; cc < 8; ++cc) kcell[c][cc] += a00 * elem[gp][c][cc];
          } else {
            effective_tensor(problem.field, problem.n, y, ctensor.data());
            for (int c = 0; c < 8; ++c)
              for (int cc = 0; cc < 8; ++cc) {
                for (int al = 0; al < m; ++al)
                  for (int be = 0; be < m; ++be) {
                    double s = 0.0;
                    for (int r = 0; r < 3; ++r)
                      for (int t = 0; t < 3; ++t)
                        s += gauss.grad[gp][c][r] *
                             ctensor[((r * 3 + t) * m + al) * m + be] *
                             gauss.grad[gp][cc][t];
                    kcell[c * m + al][cc * m + be] += s * gauss.weight;
                  }
              }
          }
        }

        // scatter into the 27-point stencil
        long cnode[8];
        for (int c = 0; c < 8; ++c) {
          const int j1 = (ci1 + ((c >> 0) & 1)) % g.n1;
          const int j2 = (ci2 + ((c >> 1) & 1)) % g.n2;
          const int jk = ck + ((c >> 2) & 1);
          cnode[c] = (static_cast<long>(j1) * g.n2 + j2) * ntp + jk;
        }
        for (int c = 0; c < 8; ++c) {
          const int b1 = (c >> 0) & 1, b2 = (c >> 1) & 1, bk = (c >> 2) & 1;
          for (int cc = 0; cc < 8; ++cc) {
            const int o1 = ((cc >> 0) & 1) - b1 + 1;
            const int o2 = ((cc >> 1) & 1) - b2 + 1;
            const int ok = ((cc >> 2) & 1) - bk + 1;
            const int slot = ((o1 * 3 + o2) * 3) + ok;
            double* blk =
                &op.val[(static_cast<std::size_t>(cnode[c]) * 27 + slot) * m * m];
            for (int al = 0; al < m; ++al)
              for (int be = 0; be < m; ++be)
                blk[al * m + be] += kcell[c * m + al][cc * m + be];
          }
        }
      }
    }
  }

  // Dirichlet data at the bottom slice
  Vector x0(static_cast<std::size_t>(op.nodes) * m, 0.0);
  std::vector<double> fval(m);
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2) {
      const double th[2] = {i1 * g.h1(), i2 * g.h2()};
      problem.data(th, fval.data());
      const long it = static_cast<long>(i1) * g.n2 + i2;
      for (int al = 0; al < m; ++al) x0[al * op.nodes + op.node(it, 0)] = fval[al];
    }

  // rhs = -K x0 restricted to free nodes
  Vector rhs(x0.size());
  op.apply_full(x0, rhs);
  for (auto& v : rhs) v = -v;
  for (int al = 0; al < m; ++al)
    for (long it = 0; it < op.tnodes; ++it) rhs[al * op.nodes + op.node(it, 0)] = 0.0;

  Vector inv_diag(x0.size(), 1.0);
  for (int al = 0; al < m; ++al)
    for (long nid = 0; nid < op.nodes; ++nid) {
      const double dv =
          op.val[(static_cast<std::size_t>(nid) * 27 + 13) * m * m + al * m + al];
      if (dv > 0.0) inv_diag[al * op.nodes + nid] = 1.0 / dv;
    }
  auto pin_bottom = [&op, m](Vector& x) {
    for (int al = 0; al < m; ++al)
      for (long it = 0; it < op.tnodes; ++it) x[al * op.nodes + op.node(it, 0)] = 0.0;
  };

  const int cap = problem.max_iter > 0
                      ? problem.max_iter
                      : 60 * std::max(g.nt, std::max(g.n1, g.n2)) + 4000;
  Vector z(x0.size(), 0.0);
  auto apply = [&op](const Vector& in, Vector& out) { op.apply_constrained(in, out); };
  SolveStats stats = conjugate_gradient(apply, rhs, z, inv_diag, problem.rel_tol,
                                        cap, pin_bottom);
  if (!stats.converged && norm2(rhs) > 1e-14)
    throw std::runtime_error("solve_layer: iteration cap " + std::to_string(cap) +
                             " reached at residual " +
                             std::to_string(stats.relative_residual));

  LayerSolution sol;
  sol.grid = g;
  sol.d = d;
  sol.m = m;
  sol.n = problem.n;
  sol.v.resize(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) sol.v[i] = x0[i] + z[i];
  sol.residual = stats.relative_residual;
  sol.stats = std::move(stats);
  sol.slow_decay = problem.kappa_est < 1e-3;

  // constant tail: average of the top slice
  sol.v_inf.assign(m, 0.0);
  for (int al = 0; al < m; ++al) {
    double s = 0.0;
    for (long it = 0; it < op.tnodes; ++it) s += sol.value(al, it, g.nt);
    sol.v_inf[al] = s / static_cast<double>(op.tnodes);
  }

  // boundary normal derivative: one-sided second order plus variational flux
  sol.dt_v0.assign(static_cast<std::size_t>(m) * op.tnodes, 0.0);
  const double ht = g.ht();
  for (int al = 0; al < m; ++al)
    for (long it = 0; it < op.tnodes; ++it)
      sol.dt_v0[al * op.tnodes + it] =
          (-3.0 * sol.value(al, it, 0) + 4.0 * sol.value(al, it, 1) -
           sol.value(al, it, 2)) /
          (2.0 * ht);
  {
    Vector y(sol.v.size());
    op.apply_full(sol.v, y);
    sol.conormal0.assign(static_cast<std::size_t>(m) * op.tnodes, 0.0);
    // bottom face has outward normal -e_t: (K V)_i = -integral (C grad V)_t phi_i
    const double face = g.h1() * g.h2();
    for (int al = 0; al < m; ++al)
      for (long it = 0; it < op.tnodes; ++it)
        sol.conormal0[al * op.tnodes + it] =
            -y[al * op.nodes + op.node(it, 0)] / face;
  }

  // decay profile
  sol.decay.assign(ntp, 0.0);
  for (int k = 0; k < ntp; ++k) {
    double s = 0.0;
    for (int al = 0; al < m; ++al)
      for (long it = 0; it < op.tnodes; ++it) {
        const double dv = sol.value(al, it, k) - sol.v_inf[al];
        s += dv * dv;
      }
    sol.decay[k] = std::sqrt(s * g.h1() * g.h2());
  }
  return sol;
}

double LayerSolution::sample(int comp, double th1, double th2, double t) const {
  const LayerGrid& g = grid;
  if (t < -1e-12 || t > g.T * (1.0 + 1e-12))
    throw std::out_of_range("LayerSolution::sample: t outside [0, T]");
  t = std::min(std::max(t, 0.0), g.T);
  double f1 = th1 * g.n1, f2 = th2 * g.n2, ft = t / g.ht();
  f1 -= std::floor(f1 / g.n1) * g.n1;
  f2 -= std::floor(f2 / g.n2) * g.n2;
  const int i1 = std::min(static_cast<int>(f1), g.n1 - 1);
  const int i2 = std::min(static_cast<int>(f2), g.n2 - 1);
  const int k = std::min(static_cast<int>(ft), g.nt - 1);
  const double a1 = f1 - i1, a2 = f2 - i2, at = ft - k;
  double acc = 0.0;
  for (int c = 0; c < 8; ++c) {
    const int b1 = c & 1, b2 = (c >> 1) & 1, bk = (c >> 2) & 1;
    const long it = static_cast<long>((i1 + b1) % g.n1) * g.n2 + (i2 + b2) % g.n2;
    const double w = (b1 ? a1 : 1.0 - a1) * (b2 ? a2 : 1.0 - a2) *
                     (bk ? at : 1.0 - at);
    acc += w * value(comp, it, k + bk);
  }
  return acc;
}

ExtensionWeights extension_weights(int k) {
  if (k < 0 || k > 8) throw std::invalid_argument("extension_weights: 0 <= k <= 8");
  const int n = k + 1;
  // rational Gaussian elimination on sum_j (-j)^i lambda_j = 1
  std::vector<std::vector<Fraction>> a(n, std::vector<Fraction>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Fraction p(1);
      for (int t = 0; t < i; ++t) p = p * Fraction(-(j + 1));
      a[i][j] = p;
    }
    a[i][n] = Fraction(1);
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && a[piv][col].num == 0) ++piv;
    if (piv == n) throw std::runtime_error("extension_weights: singular system");
    std::swap(a[col], a[piv]);
    for (int row = 0; row < n; ++row) {
      if (row == col || a[row][col].num == 0) continue;
      const Fraction f = a[row][col] / a[col][col];
      for (int j = col; j <= n; ++j) a[row][j] = a[row][j] - f * a[col][j];
    }
  }
  ExtensionWeights w;
  w.order = k;
  for (int j = 0; j < n; ++j) {
    const Fraction lj = a[j][n] / a[j][j];
    w.lambda.push_back(lj);
    w.lambda_d.push_back(lj.value());
  }
  return w;
}

ExtendedLayerSolution extend_solution(LayerSolution solution,
                                      const ExtensionWeights& weights,
                                      double t_prime) {
  if (t_prime <= 0.0) throw std::invalid_argument("extend_solution: T' > 0");
  if ((weights.order + 1) * t_prime > solution.grid.T * (1.0 + 1e-12))
    throw std::invalid_argument(
        "extend_solution: reflection depth (k+1) T' exceeds the solved slab");
  ExtendedLayerSolution ext;
  ext.base = std::move(solution);
  ext.weights = weights;
  ext.t_min = -t_prime;
  return ext;
}

double ExtendedLayerSolution::sample(int comp, double th1, double th2,
                                     double t) const {
  if (t >= 0.0) return base.sample(comp, th1, th2, t);
  if (t < t_min * (1.0 + 1e-12))
    throw std::out_of_range("ExtendedLayerSolution::sample: t below -T'");
  double acc = 0.0;
  for (int j = 1; j <= weights.order + 1; ++j)
    acc += weights.lambda_d[j - 1] * base.sample(comp, th1, th2, -j * t);
  return acc;
}

PhysicalLayerSampler physical_layer(const ExtendedLayerSolution& ext,
                                    const std::array<double, 2>& x0, double eps) {
  if (eps <= 0.0) throw std::invalid_argument("physical_layer: eps > 0");
  PhysicalLayerSampler s;
  s.ext = &ext;
  s.n = ext.base.n;
  s.plane_offset = -(x0[0] * ext.base.n[0] + x0[1] * ext.base.n[1]);
  s.eps = eps;
  s.m = ext.base.m;
  return s;
}

double PhysicalLayerSampler::value(int comp, const std::array<double, 2>& x) const {
  const double xn = x[0] * n[0] + x[1] * n[1] + plane_offset;
  const double th1 = (x[0] - xn * n[0]) / eps;
  const double th2 = (x[1] - xn * n[1]) / eps;
  const double t = -xn / eps;
  return eps * ext->sample(comp, th1, th2, t);
}

std::array<double, 2> PhysicalLayerSampler::gradient(
    int comp, const std::array<double, 2>& x) const {
  const double h = 0.25 * eps * std::min(ext->base.grid.h1(), ext->base.grid.ht());
  std::array<double, 2> g{};
  for (int axis = 0; axis < 2; ++axis) {
    std::array<double, 2> xp = x, xm = x;
    xp[axis] += h;
    xm[axis] -= h;
    g[axis] = (value(comp, xp) - value(comp, xm)) / (2.0 * h);
  }
  return g;
}

}  // namespace homlab
