#include "homlab/field.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace homlab {

CoefficientField adjoint_field(const CoefficientField& field) {
  CoefficientField adj = field;
  adj.name = field.name + "_adjoint";
  const int d = field.d, m = field.m;
  auto base = field.sampler;
  adj.sampler = [d, m, base](const double* y, double* a) {
    std::vector<double> tmp(d * d * m * m);
    base(y, tmp.data());
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int al = 0; al < m; ++al)
          for (int be = 0; be < m; ++be)
            a[((i * d + j) * m + al) * m + be] =
                tmp[((j * d + i) * m + be) * m + al];
  };
  return adj;
}

void check_ellipticity(const CoefficientField& field, int y_samples,
                       int xi_samples) {
  const int d = field.d, m = field.m;
  std::vector<double> a(field.tensor_size());
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double y[3] = {0, 0, 0};
  for (int s = 0; s < y_samples; ++s) {
    for (int k = 0; k < d; ++k)
      y[k] = static_cast<double>((s * 131 + k * 37) % 97) / 97.0;
    field.eval(y, a.data());
    for (int t = 0; t < xi_samples; ++t) {
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
              q += a[field.idx(i, j, al, be)] * xi[i * m + al] * xi[j * m + be];
      const double lo = field.lambda * n2 * (1.0 - 1e-9);
      const double hi = n2 / field.lambda * (1.0 + 1e-9);
      if (q < lo || q > hi)
        throw std::runtime_error("ellipticity violated: quadratic form " +
                                 std::to_string(q / n2) + " outside [" +
                                 std::to_string(field.lambda) + ", " +
                                 std::to_string(1.0 / field.lambda) + "]");
    }
  }
}

void check_periodicity(const CoefficientField& field, int y_samples, double tol) {
  const int d = field.d;
  std::vector<double> a0(field.tensor_size()), a1(field.tensor_size());
  double y[3] = {0, 0, 0}, yp[3] = {0, 0, 0};
  for (int s = 0; s < y_samples; ++s) {
    for (int k = 0; k < d; ++k) y[k] = 0.37 * (s + 1) + 0.11 * k;
    field.eval(y, a0.data());
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l) yp[l] = y[l] + (l == k ? 1.0 : 0.0);
      field.eval(yp, a1.data());
      for (int t = 0; t < field.tensor_size(); ++t)
        if (std::fabs(a0[t] - a1[t]) > tol)
          throw std::runtime_error("coefficient field not 1-periodic");
    }
  }
}

CoefficientField constant_field(int d, int m, const std::vector<double>& tensor,
                                double lambda) {
  CoefficientField f;
  f.d = d;
  f.m = m;
  f.lambda = lambda;
  f.constant = true;
  f.scalar = false;
  f.name = "constant";
  f.sampler = [tensor](const double*, double* a) {
    std::copy(tensor.begin(), tensor.end(), a);
  };
  return f;
}

CoefficientField identity_field(int d, int m) {
  std::vector<double> t(d * d * m * m, 0.0);
  for (int i = 0; i < d; ++i)
    for (int al = 0; al < m; ++al) t[((i * d + i) * m + al) * m + al] = 1.0;
  CoefficientField f = constant_field(d, m, t, 0.999);
  f.scalar = true;
  f.name = "identity";
  return f;
}

CoefficientField laminate_field(int d, double base, double amp) {
  if (base - std::fabs(amp) <= 0.0)
    throw std::invalid_argument("laminate_field: not elliptic");
  CoefficientField f;
  f.d = d;
  f.m = 1;
  const double lo = base - std::fabs(amp), hi = base + std::fabs(amp);
  f.lambda = std::min(lo, 1.0 / hi) * 0.999;
  f.scalar = true;
  f.laminate = true;
  f.name = "laminate";
  f.sampler = [d, base, amp](const double* y, double* a) {
    const double v = base + amp * std::sin(2.0 * M_PI * y[0]);
    for (int i = 0; i < d * d; ++i) a[i] = 0.0;
    for (int i = 0; i < d; ++i) a[i * d + i] = v;
  };
  return f;
}

CoefficientField trig_field(int d, double base, const std::vector<TrigMode>& modes) {
  double total_amp = 0.0;
  for (const auto& mo : modes) total_amp += std::fabs(mo.amplitude);
  if (base - total_amp <= 0.0)
    throw std::invalid_argument("trig_field: not elliptic");
  CoefficientField f;
  f.d = d;
  f.m = 1;
  const double lo = base - total_amp, hi = base + total_amp;
  f.lambda = std::min(lo, 1.0 / hi) * 0.999;
  f.scalar = true;
  f.laminate = true;
  for (const auto& mo : modes)
    if (mo.wave[1] != 0 || mo.wave[2] != 0) f.laminate = false;
  f.name = "trig";
  f.sampler = [d, base, modes](const double* y, double* a) {
    double v = base;
    for (const auto& mo : modes) {
      double phase = 0.0;
      for (int k = 0; k < d; ++k) phase += mo.wave[k] * y[k];
      v += mo.amplitude * std::cos(2.0 * M_PI * phase);
    }
    for (int i = 0; i < d * d; ++i) a[i] = 0.0;
    for (int i = 0; i < d; ++i) a[i * d + i] = v;
  };
  return f;
}

}  // namespace homlab
