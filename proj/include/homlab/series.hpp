#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace homlab {

/// Truncated Taylor series sum c[k] (x - x0)^k used as forward-mode jets for
/// analytic curve derivatives. All operations truncate at the common order.
class Series {
 public:
  Series() = default;
  explicit Series(int order, double value = 0.0) : c_(order + 1, 0.0) {
    c_[0] = value;
  }
  static Series variable(int order, double value) {
    Series s(order, value);
    if (order >= 1) s.c_[1] = 1.0;
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }
  double value() const { return c_[0]; }
  /// k-th derivative (k! * c_k)
  double derivative(int k) const {
    double f = 1.0;
    for (int j = 2; j <= k; ++j) f *= j;
    return c_[k] * f;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series r = a;
    for (int k = 0; k <= r.order(); ++k) r.c_[k] += b.c_[k];
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series r = a;
    for (int k = 0; k <= r.order(); ++k) r.c_[k] -= b.c_[k];
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    Series r(a.order());
    for (int k = 0; k <= a.order(); ++k)
      for (int j = 0; k + j <= a.order(); ++j) r.c_[k + j] += a.c_[k] * b.c_[j];
    return r;
  }
  friend Series operator*(double s, const Series& a) {
    Series r = a;
    for (auto& v : r.c_) v *= s;
    return r;
  }
  friend Series operator+(const Series& a, double s) {
    Series r = a;
    r.c_[0] += s;
    return r;
  }
  friend Series operator-(const Series& a, double s) { return a + (-s); }
  friend Series operator/(const Series& a, const Series& b) {
    if (std::fabs(b.c_[0]) < 1e-300) throw std::domain_error("series division by zero");
    const int n = a.order();
    Series r(n);
    for (int k = 0; k <= n; ++k) {
      double s = a.c_[k];
      for (int j = 0; j < k; ++j) s -= r.c_[j] * b.c_[k - j];
      r.c_[k] = s / b.c_[0];
    }
    return r;
  }

  friend Series sin(const Series& f) { return sincos_impl(f, true); }
  friend Series cos(const Series& f) { return sincos_impl(f, false); }

  friend Series exp(const Series& f) {
    const int n = f.order();
    Series g(n);
    g.c_[0] = std::exp(f.c_[0]);
    for (int k = 1; k <= n; ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += j * f.c_[j] * g.c_[k - j];
      g.c_[k] = s / k;
    }
    return g;
  }

  friend Series log(const Series& f) {
    if (f.c_[0] <= 0.0) throw std::domain_error("series log of nonpositive value");
    const int n = f.order();
    Series g(n);
    g.c_[0] = std::log(f.c_[0]);
    for (int k = 1; k <= n; ++k) {
      double s = k * f.c_[k];
      for (int j = 1; j < k; ++j) s -= j * g.c_[j] * f.c_[k - j];
      g.c_[k] = s / (k * f.c_[0]);
    }
    return g;
  }

  /// f^alpha for f(x0) > 0 (real exponent).
  friend Series pow(const Series& f, double alpha) {
    if (f.c_[0] <= 0.0) throw std::domain_error("series pow of nonpositive base");
    return exp(alpha * log(f));
  }

  friend Series sqrt(const Series& f) { return pow(f, 0.5); }

  /// Integer power by repeated multiplication (works for any base).
  friend Series ipow(const Series& f, int p) {
    Series r(f.order(), 1.0);
    for (int i = 0; i < p; ++i) r = r * f;
    return r;
  }

  /// Composition f(g(.)) where g has zero constant term.
  friend Series compose(const Series& f, const Series& g) {
    if (std::fabs(g.c_[0]) > 1e-14)
      throw std::domain_error("compose: inner series must vanish at 0");
    const int n = f.order();
    Series r(n);
    r.c_[0] = f.c_[n];
    // Horner in g
    for (int k = n - 1; k >= 0; --k) {
      r = r * g;
      r.c_[0] += f.c_[k];
    }
    return r;
  }

  /// Series reversion: for s = g(u) with g(0) = 0, g'(0) != 0, returns u(s).
  friend Series revert(const Series& g) {
    if (std::fabs(g.c_[0]) > 1e-14 || std::fabs(g.c_[1]) < 1e-300)
      throw std::domain_error("revert: need g(0) = 0 and g'(0) != 0");
    const int n = g.order();
    Series u(n);  // u(s), u(0) = 0
    u.c_[1] = 1.0 / g.c_[1];
    for (int it = 0; it < n; ++it) {
      // u = (s - (g - g1 u)(u)) / g1, fixed point gaining one order per pass
      Series tail(n);
      for (int k = 2; k <= n; ++k) tail.c_[k] = g.c_[k];
      Series t = compose(tail, u);
      Series next(n);
      next.c_[1] = 1.0 / g.c_[1];
      for (int k = 2; k <= n; ++k) next.c_[k] = -t.c_[k] / g.c_[1];
      u = next;
    }
    return u;
  }

 private:
  static Series sincos_impl(const Series& f, bool want_sin) {
    const int n = f.order();
    Series s(n), c(n);
    s.c_[0] = std::sin(f.c_[0]);
    c.c_[0] = std::cos(f.c_[0]);
    for (int k = 1; k <= n; ++k) {
      double as = 0.0, ac = 0.0;
      for (int j = 1; j <= k; ++j) {
        as += j * f.c_[j] * c.c_[k - j];
        ac -= j * f.c_[j] * s.c_[k - j];
      }
      s.c_[k] = as / k;
      c.c_[k] = ac / k;
    }
    return want_sin ? s : c;
  }

  std::vector<double> c_;
};

}  // namespace homlab
