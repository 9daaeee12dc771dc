#include "homlab/cell.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "homlab/parallel.hpp"

namespace homlab {

PeriodicGrid::PeriodicGrid(int dim, int n) : d(dim), N(n) {
  if (d != 2 && d != 3) throw std::invalid_argument("PeriodicGrid: d must be 2 or 3");
  if (N < 8 || (N & (N - 1)) != 0)
    throw std::invalid_argument("PeriodicGrid: N must be a power of two >= 8");
}

double GridFunction::mean(int comp) const {
  const long n = grid.nodes();
  double s = 0.0;
  for (long i = 0; i < n; ++i) s += data[comp * n + i];
  return s / static_cast<double>(n);
}

void GridFunction::subtract_means() {
  const long n = grid.nodes();
  for (int c = 0; c < m; ++c) {
    const double mu = mean(c);
    for (long i = 0; i < n; ++i) data[c * n + i] -= mu;
  }
}

double GridFunction::max_abs() const {
  double v = 0.0;
  for (double x : data) v = std::max(v, std::fabs(x));
  return v;
}

double GridFunction::sample(int comp, const double* y) const {
  const int N = grid.N, d = grid.d;
  double frac[3];
  int base[3];
  for (int k = 0; k < d; ++k) {
    double t = y[k] * N;
    double fl = std::floor(t);
    base[k] = static_cast<int>(fl);
    frac[k] = t - fl;
  }
  const int corners = 1 << d;
  double v = 0.0;
  int iv[3];
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    for (int k = 0; k < d; ++k) {
      const int bit = (c >> k) & 1;
      w *= bit ? frac[k] : 1.0 - frac[k];
      iv[k] = base[k] + bit;
    }
    v += w * at(comp, grid.index(iv));
  }
  return v;
}

double GridFunction::sample_gradient(int comp, const double* y, int axis) const {
  const int N = grid.N, d = grid.d;
  double frac[3];
  int base[3];
  for (int k = 0; k < d; ++k) {
    double t = y[k] * N;
    double fl = std::floor(t);
    base[k] = static_cast<int>(fl);
    frac[k] = t - fl;
  }
  const int corners = 1 << d;
  const double two_h = 2.0 * grid.h();
  double v = 0.0;
  int iv[3];
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    for (int k = 0; k < d; ++k) {
      const int bit = (c >> k) & 1;
      w *= bit ? frac[k] : 1.0 - frac[k];
      iv[k] = base[k] + bit;
    }
    int ip[3], im[3];
    for (int k = 0; k < d; ++k) ip[k] = im[k] = iv[k];
    ip[axis] += 1;
    im[axis] -= 1;
    v += w * (at(comp, grid.index(ip)) - at(comp, grid.index(im))) / two_h;
  }
  return v;
}

namespace {

// Per-axis offsets of cell corner c (bit k of c selects the high node on axis k).
inline void corner_offset(int c, int d, int* off) {
  for (int k = 0; k < d; ++k) off[k] = (c >> k) & 1;
}

struct QuadratureData {
  // grad[g][corner][axis]: physical basis gradient at Gauss point g
  std::vector<std::vector<std::array<double, 3>>> grad;
  std::vector<std::array<double, 3>> point;  // reference coords in [0,1]^d
  double weight;                             // equal weights
  int ng, corners;
};

QuadratureData make_quadrature(int d, double h) {
  QuadratureData q;
  q.corners = 1 << d;
  q.ng = 1 << d;
  const double g0 = 0.5 - 0.5 / std::sqrt(3.0), g1 = 0.5 + 0.5 / std::sqrt(3.0);
  q.weight = std::pow(h, d) / q.ng;
  q.grad.resize(q.ng);
  q.point.resize(q.ng);
  for (int g = 0; g < q.ng; ++g) {
    double xi[3];
    for (int k = 0; k < d; ++k) xi[k] = ((g >> k) & 1) ? g1 : g0;
    q.point[g] = {xi[0], d > 1 ? xi[1] : 0.0, d > 2 ? xi[2] : 0.0};
    q.grad[g].resize(q.corners);
    for (int c = 0; c < q.corners; ++c) {
      for (int k = 0; k < d; ++k) {
        double gkc = ((c >> k) & 1) ? 1.0 : -1.0;
        for (int l = 0; l < d; ++l) {
          if (l == k) continue;
          gkc *= ((c >> l) & 1) ? xi[l] : 1.0 - xi[l];
        }
        q.grad[g][c][k] = gkc / h;
      }
    }
  }
  return q;
}

}  // namespace

bool field_is_symmetric(const CoefficientField& field, double tol) {
  std::vector<double> a(field.tensor_size());
  double y[3] = {0, 0, 0};
  for (int s = 0; s < 7; ++s) {
    for (int k = 0; k < field.d; ++k) y[k] = 0.143 * (s + 1) + 0.05 * k;
    field.eval(y, a.data());
    for (int i = 0; i < field.d; ++i)
      for (int j = 0; j < field.d; ++j)
        for (int al = 0; al < field.m; ++al)
          for (int be = 0; be < field.m; ++be)
            if (std::fabs(a[field.idx(i, j, al, be)] -
                          a[field.idx(j, i, be, al)]) > tol)
              return false;
  }
  return true;
}

namespace {

/// Assembles the periodic Q1 stiffness matrix (2x2(x2) Gauss) for the cell
/// operator, plus the right-hand side for corrector (j0, beta0).
void assemble_cell_system(const CoefficientField& field, const PeriodicGrid& grid,
                          int j0, int beta0, CsrMatrix& mat, Vector& rhs) {
  const int d = grid.d, m = field.m, N = grid.N;
  const long nodes = grid.nodes();
  const double h = grid.h();
  const QuadratureData q = make_quadrature(d, h);
  const int corners = q.corners;

  CsrBuilder builder(static_cast<int>(nodes * m));
  rhs.assign(nodes * m, 0.0);
  std::vector<double> a(field.tensor_size());
  std::vector<long> cn(corners);
  int iv[3], off[3];

  const long ncells = grid.cells();
  std::vector<double> local(static_cast<std::size_t>(corners * m) * corners * m);
  for (long cell = 0; cell < ncells; ++cell) {
    long rem = cell;
    int ci[3];
    for (int k = d - 1; k >= 0; --k) {
      ci[k] = static_cast<int>(rem % N);
      rem /= N;
    }
    for (int c = 0; c < corners; ++c) {
      corner_offset(c, d, off);
      for (int k = 0; k < d; ++k) iv[k] = ci[k] + off[k];
      cn[c] = grid.index(iv);
    }
    std::fill(local.begin(), local.end(), 0.0);
    double y[3] = {0, 0, 0};
    for (int g = 0; g < q.ng; ++g) {
      for (int k = 0; k < d; ++k) y[k] = (ci[k] + q.point[g][k]) * h;
      field.eval(y, a.data());
      for (int p = 0; p < corners; ++p) {
        for (int qc = 0; qc < corners; ++qc) {
          for (int al = 0; al < m; ++al)
            for (int be = 0; be < m; ++be) {
              double s = 0.0;
              for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                  s += a[field.idx(i, j, al, be)] * q.grad[g][p][i] *
                       q.grad[g][qc][j];
              local[((p * m + al) * corners + qc) * m + be] += q.weight * s;
            }
        }
        // rhs: -integral a_{i j0}^{al beta0} d_i phi_p
        for (int al = 0; al < m; ++al) {
          double s = 0.0;
          for (int i = 0; i < d; ++i)
            s += a[field.idx(i, j0, al, beta0)] * q.grad[g][p][i];
          rhs[al * nodes + cn[p]] -= q.weight * s;
        }
      }
    }
    for (int p = 0; p < corners; ++p)
      for (int al = 0; al < m; ++al)
        for (int qc = 0; qc < corners; ++qc)
          for (int be = 0; be < m; ++be)
            builder.add(static_cast<int>(al * nodes + cn[p]),
                        static_cast<int>(be * nodes + cn[qc]),
                        local[((p * m + al) * corners + qc) * m + be]);
  }
  mat = builder.build();
}

}  // namespace

CorrectorComponent solve_corrector(const CoefficientField& field,
                                   const PeriodicGrid& grid, int j, int beta,
                                   const CellSolveOptions& opts) {
  if (field.d != grid.d) throw std::invalid_argument("grid/field dimension mismatch");
  if (j < 0 || j >= grid.d || beta < 0 || beta >= field.m)
    throw std::invalid_argument("corrector index out of range");
  check_ellipticity(field);

  CsrMatrix mat;
  Vector rhs;
  assemble_cell_system(field, grid, j, beta, mat, rhs);

  // Sub-roundoff right-hand sides (constant coefficients, or components the
  // field does not depend on) are exact zeros of the continuous problem;
  // treat them as such instead of amplifying assembly noise through the solve.
  {
    double binf = 0.0;
    for (double v : rhs) binf = std::max(binf, std::fabs(v));
    const double snap = 1e-12 / field.lambda * std::pow(grid.h(), grid.d - 1);
    if (binf < snap) std::fill(rhs.begin(), rhs.end(), 0.0);
  }

  const long nodes = grid.nodes();
  const int m = field.m;
  auto project = [nodes, m](Vector& x) {
    for (int c = 0; c < m; ++c) {
      double mu = 0.0;
      for (long i = 0; i < nodes; ++i) mu += x[c * nodes + i];
      mu /= static_cast<double>(nodes);
      for (long i = 0; i < nodes; ++i) x[c * nodes + i] -= mu;
    }
  };

  const int cap = opts.max_iter > 0 ? opts.max_iter : 10 * grid.N * grid.N;
  Vector x(rhs.size(), 0.0);
  SolveStats stats;
  if (!opts.force_cgnr && field_is_symmetric(field)) {
    Vector diag = mat.diagonal();
    Vector inv_diag(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
      inv_diag[i] = diag[i] != 0.0 ? 1.0 / diag[i] : 1.0;
    auto apply = [&mat](const Vector& v, Vector& out) { mat.multiply(v, out); };
    stats = conjugate_gradient(apply, rhs, x, inv_diag, opts.rel_tol, cap, project);
  } else {
    stats = cgnr(mat, rhs, x, opts.rel_tol, cap, project);
  }
  if (!stats.converged && norm2(rhs) > 1e-14) {
    std::string hist;
    for (double r : stats.residual_history) hist += " " + std::to_string(r);
    throw std::runtime_error("cell solver did not reach tolerance " +
                             std::to_string(opts.rel_tol) + " within " +
                             std::to_string(cap) + " iterations; residuals:" + hist);
  }

  CorrectorComponent out;
  out.chi = GridFunction(grid, m);
  out.chi.data = std::move(x);
  out.chi.subtract_means();
  out.residual = stats.relative_residual;
  out.stats = std::move(stats);
  return out;
}

CorrectorSet solve_correctors(const CoefficientField& field,
                              const PeriodicGrid& grid,
                              const CellSolveOptions& opts) {
  CorrectorSet set;
  set.grid = grid;
  set.d = grid.d;
  set.m = field.m;
  set.comp.resize(grid.d * field.m);
  parallel_for(set.comp.size(), [&](std::size_t t) {
    const int j = static_cast<int>(t) / field.m;
    const int beta = static_cast<int>(t) % field.m;
    set.comp[t] = solve_corrector(field, grid, j, beta, opts);
  });
  return set;
}

std::vector<double> CorrectorSet::gradient_at_centers(int j, int beta, int alpha,
                                                      int k) const {
  const GridFunction& f = at(j, beta).chi;
  const PeriodicGrid& g = grid;
  const int N = g.N;
  const double h = g.h();
  const long ncells = g.cells();
  std::vector<double> out(ncells, 0.0);
  const int corners = 1 << d;
  int iv[3], off[3];
  for (long cell = 0; cell < ncells; ++cell) {
    long rem = cell;
    int ci[3];
    for (int kk = d - 1; kk >= 0; --kk) {
      ci[kk] = static_cast<int>(rem % N);
      rem /= N;
    }
    double s = 0.0;
    for (int c = 0; c < corners; ++c) {
      corner_offset(c, d, off);
      for (int kk = 0; kk < d; ++kk) iv[kk] = ci[kk] + off[kk];
      const double v = f.at(alpha, g.index(iv));
      // gradient of the multilinear interpolant at the cell center
      const double sign = ((c >> k) & 1) ? 1.0 : -1.0;
      s += sign * v;
    }
    out[cell] = s / (h * static_cast<double>(corners / 2));
  }
  return out;
}

double CorrectorSet::max_residual() const {
  double v = 0.0;
  for (const auto& c : comp) v = std::max(v, c.residual);
  return v;
}

double CorrectorSet::max_mean_abs() const {
  double v = 0.0;
  for (const auto& c : comp)
    for (int al = 0; al < m; ++al) v = std::max(v, std::fabs(c.chi.mean(al)));
  return v;
}

HomogenizedTensor homogenized_tensor(const CoefficientField& field,
                                     const CorrectorSet& correctors) {
  if (field.d != correctors.d || field.m != correctors.m)
    throw std::invalid_argument("homogenized_tensor: field/corrector mismatch");
  const PeriodicGrid& g = correctors.grid;
  const int d = g.d, m = field.m, N = g.N;
  const double h = g.h();
  const long ncells = g.cells();
  HomogenizedTensor hat;
  hat.d = d;
  hat.m = m;
  hat.a.assign(field.tensor_size(), 0.0);

  // cache gradients of all corrector components at cell centers
  std::vector<std::vector<double>> grads(
      static_cast<std::size_t>(d * m * m * d));
  auto gidx = [&](int j, int beta, int gamma, int k) {
    return ((j * m + beta) * m + gamma) * d + k;
  };
  for (int j = 0; j < d; ++j)
    for (int be = 0; be < m; ++be)
      for (int ga = 0; ga < m; ++ga)
        for (int k = 0; k < d; ++k)
          grads[gidx(j, be, ga, k)] = correctors.gradient_at_centers(j, be, ga, k);

  std::vector<double> a(field.tensor_size());
  const double vol = std::pow(h, d);
  for (long cell = 0; cell < ncells; ++cell) {
    long rem = cell;
    int ci[3];
    for (int kk = d - 1; kk >= 0; --kk) {
      ci[kk] = static_cast<int>(rem % N);
      rem /= N;
    }
    double y[3] = {0, 0, 0};
    for (int k = 0; k < d; ++k) y[k] = (ci[k] + 0.5) * h;
    field.eval(y, a.data());
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int al = 0; al < m; ++al)
          for (int be = 0; be < m; ++be) {
            double s = a[field.idx(i, j, al, be)];
            for (int k = 0; k < d; ++k)
              for (int ga = 0; ga < m; ++ga)
                s += a[field.idx(i, k, al, ga)] * grads[gidx(j, be, ga, k)][cell];
            hat.a[((i * d + j) * m + al) * m + be] += vol * s;
          }
  }
  return hat;
}

double HomogenizedTensor::ellipticity_lower_bound(int samples) const {
  std::mt19937_64 rng(777);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double lo = 1e300;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> xi(d * m);
    double n2 = 0.0;
    for (auto& v : xi) {
      v = gauss(rng);
      n2 += v * v;
    }
    if (n2 < 1e-12) continue;
    double q = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int al = 0; al < m; ++al)
          for (int be = 0; be < m; ++be)
            q += entry(i, j, al, be) * xi[i * m + al] * xi[j * m + be];
    lo = std::min(lo, q / n2);
  }
  return lo;
}

HomogenizedTensor HomogenizedTensor::index_adjoint() const {
  HomogenizedTensor t;
  t.d = d;
  t.m = m;
  t.a.assign(a.size(), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int al = 0; al < m; ++al)
        for (int be = 0; be < m; ++be)
          t.a[((i * d + j) * m + al) * m + be] = entry(j, i, be, al);
  return t;
}

double HomogenizedTensor::max_abs_diff(const HomogenizedTensor& other) const {
  double v = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    v = std::max(v, std::fabs(a[i] - other.a[i]));
  return v;
}

}  // namespace homlab
