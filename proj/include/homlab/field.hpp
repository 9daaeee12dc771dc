#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace homlab {

/// Periodic coefficient tensor a_{ij}^{ab}(y) on the unit torus, with the
/// two-sided ellipticity constant lambda. Component layout of the returned
/// flat array: ((i*d + j)*m + a)*m + b.
struct CoefficientField {
  int d = 2;
  int m = 1;
  double lambda = 0.5;
  bool constant = false;
  bool scalar = true;    // a_{ij}^{ab} = a(y) delta_{ij} delta_{ab}
  bool laminate = false; // depends on y_1 only
  std::string name = "custom";
  std::function<void(const double* y, double* a)> sampler;

  int tensor_size() const { return d * d * m * m; }
  int idx(int i, int j, int alpha, int beta) const {
    return ((i * d + j) * m + alpha) * m + beta;
  }
  void eval(const double* y, double* a) const { sampler(y, a); }
};

/// a*_{ij}^{ab} = a_{ji}^{ba}; involutive.
CoefficientField adjoint_field(const CoefficientField& field);

/// Samples y and xi grids and verifies lambda |xi|^2 <= a xi xi <= |xi|^2 / lambda.
/// Throws std::runtime_error on violation (message includes the worst ratio).
void check_ellipticity(const CoefficientField& field, int y_samples = 9,
                       int xi_samples = 40);

/// Verifies 1-periodicity by comparing samples at y and y + e_k.
void check_periodicity(const CoefficientField& field, int y_samples = 16,
                       double tol = 1e-12);

// Presets
CoefficientField constant_field(int d, int m, const std::vector<double>& tensor,
                                double lambda);
CoefficientField identity_field(int d, int m = 1);
/// Scalar laminate a(y) = base + amp * sin(2*pi*y_1).
CoefficientField laminate_field(int d, double base = 2.0, double amp = 1.0);
/// Scalar trigonometric polynomial a(y) = base + sum_k amp_k cos(2 pi k . y).
struct TrigMode {
  std::array<int, 3> wave{1, 0, 0};
  double amplitude = 0.5;
};
CoefficientField trig_field(int d, double base, const std::vector<TrigMode>& modes);

}  // namespace homlab
