#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace homlab {

using Vector = std::vector<double>;

inline double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

inline void axpy(double alpha, const Vector& x, Vector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

/// Compressed sparse row matrix, square, built from sorted triplets.
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<double> val;

  void multiply(const Vector& x, Vector& y) const {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
      y[i] = s;
    }
  }

  // y = A^T x
  void multiply_transpose(const Vector& x, Vector& y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      const double xi = x[i];
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) y[col[k]] += val[k] * xi;
    }
  }

  Vector diagonal() const {
    Vector d(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        if (col[k] == i) d[i] += val[k];
    return d;
  }
};

/// Accumulates (i,j,v) entries and deduplicates into CSR.
class CsrBuilder {
 public:
  explicit CsrBuilder(int n) : n_(n), rows_(n) {}

  void add(int i, int j, double v) { rows_[i].push_back({j, v}); }

  CsrMatrix build() {
    CsrMatrix m;
    m.n = n_;
    m.row_ptr.assign(n_ + 1, 0);
    std::size_t nnz = 0;
    for (auto& r : rows_) {
      std::sort(r.begin(), r.end(),
                [](const Entry& a, const Entry& b) { return a.j < b.j; });
      std::size_t w = 0;
      for (std::size_t k = 0; k < r.size(); ++k) {
        if (w > 0 && r[w - 1].j == r[k].j) {
          r[w - 1].v += r[k].v;
        } else {
          r[w] = r[k];
          ++w;
        }
      }
      r.resize(w);
      nnz += w;
    }
    m.col.reserve(nnz);
    m.val.reserve(nnz);
    for (int i = 0; i < n_; ++i) {
      m.row_ptr[i] = static_cast<int>(m.col.size());
      for (const auto& e : rows_[i]) {
        m.col.push_back(e.j);
        m.val.push_back(e.v);
      }
    }
    m.row_ptr[n_] = static_cast<int>(m.col.size());
    return m;
  }

 private:
  struct Entry {
    int j;
    double v;
  };
  int n_;
  std::vector<std::vector<Entry>> rows_;
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
  std::vector<double> residual_history;  // sampled every 50 iterations
};

/// Jacobi-preconditioned conjugate gradients for SPD systems.
/// `project` (optional) re-imposes a linear constraint on the iterate each
/// step, e.g. removing component means on the periodic torus.
inline SolveStats conjugate_gradient(
    const std::function<void(const Vector&, Vector&)>& apply, const Vector& b,
    Vector& x, const Vector& inv_diag, double rel_tol, int max_iter,
    const std::function<void(Vector&)>& project = nullptr) {
  const std::size_t n = b.size();
  SolveStats stats;
  Vector r(n), z(n), p(n), ap(n);
  if (x.size() != n) x.assign(n, 0.0);
  if (project) project(x);
  apply(x, ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  const double bnorm = std::max(norm2(b), 1e-300);
  double rho = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const double rn = norm2(r);
    if (it % 50 == 0) stats.residual_history.push_back(rn / bnorm);
    if (rn / bnorm <= rel_tol) {
      stats.converged = true;
      stats.iterations = it;
      stats.relative_residual = rn / bnorm;
      return stats;
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rho_new = dot(r, z);
    if (it == 0) {
      p = z;
    } else {
      const double beta = rho_new / rho;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    rho = rho_new;
    apply(p, ap);
    const double pap = dot(p, ap);
    if (pap <= 0.0) break;  // lost positivity; report best effort
    const double alpha = rho / pap;
    axpy(alpha, p, x);
    axpy(-alpha, ap, r);
    if (project) project(x);
    stats.iterations = it + 1;
  }
  Vector ax(n);
  apply(x, ax);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ax[i];
  stats.relative_residual = norm2(r) / bnorm;
  stats.converged = stats.relative_residual <= rel_tol;
  return stats;
}

/// CG on the normal equations A^T A x = A^T b (for nonsymmetric systems).
inline SolveStats cgnr(const CsrMatrix& a, const Vector& b, Vector& x,
                       double rel_tol, int max_iter,
                       const std::function<void(Vector&)>& project = nullptr) {
  const std::size_t n = b.size();
  Vector tmp(n), atb(n);
  a.multiply_transpose(b, atb);
  Vector diag(n, 0.0);
  for (int i = 0; i < a.n; ++i)
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      diag[a.col[k]] += a.val[k] * a.val[k];
  Vector inv_diag(n);
  for (std::size_t i = 0; i < n; ++i)
    inv_diag[i] = diag[i] > 0 ? 1.0 / diag[i] : 1.0;
  auto apply = [&](const Vector& v, Vector& out) {
    a.multiply(v, tmp);
    a.multiply_transpose(tmp, out);
  };
  auto stats = conjugate_gradient(apply, atb, x, inv_diag, rel_tol, max_iter,
                                  project);
  // report the residual of the original system
  a.multiply(x, tmp);
  double rn = 0.0;
  for (std::size_t i = 0; i < n; ++i) rn += (b[i] - tmp[i]) * (b[i] - tmp[i]);
  stats.relative_residual = std::sqrt(rn) / std::max(norm2(b), 1e-300);
  return stats;
}

/// Dense LU solve with partial pivoting for tiny systems (m <= 8 or so).
inline std::vector<double> dense_solve(std::vector<double> a,
                                       std::vector<double> b, int n) {
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(a[i * n + k]) > std::fabs(a[piv * n + k])) piv = i;
    if (std::fabs(a[piv * n + k]) < 1e-300)
      throw std::runtime_error("dense_solve: singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      for (int j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
    x[i] = s / a[i * n + i];
  }
  return x;
}

}  // namespace homlab
