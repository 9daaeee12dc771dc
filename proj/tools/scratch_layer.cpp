// scratch: timings, laminate regression constant, fbar identity ingredients
#include <chrono>
#include <cmath>
#include <cstdio>

#include "homlab/cell.hpp"
#include "homlab/field.hpp"
#include "homlab/layer.hpp"

using namespace homlab;
using Clock = std::chrono::steady_clock;

static double ms(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

int main() {
  auto field = laminate_field(2);
  PeriodicGrid cgrid(2, 64);
  auto t0 = Clock::now();
  auto correctors = solve_correctors(field, cgrid);
  auto hat = homogenized_tensor(field, correctors);
  auto t1 = Clock::now();
  std::printf("correctors N=64: %.0f ms, a11=%.9f a22=%.9f resid=%.2e\n",
              ms(t0, t1), hat.entry(0, 0, 0, 0), hat.entry(1, 1, 0, 0),
              correctors.max_residual());

  const Direction n = make_direction(1.0, std::sqrt(2.0));
  const GridFunction& chi1 = correctors.at(0, 0).chi;

  // T heuristic: slowest data mode (1,0): rate 2 pi |n2|
  const double rate = 2.0 * M_PI * std::fabs(n[1]);
  std::printf("laminate data decay rate = %.3f, T default = %.2f\n", rate,
              default_truncation(rate));

  for (int scale : {1, 2, 4}) {
    LayerProblem p;
    p.field = field;  // symmetric scalar: adjoint = itself
    p.n = n;
    p.data = [&chi1](const double* th, double* v) {
      v[0] = -chi1.sample(0, th);
    };
    p.grid = LayerGrid{64 * scale, 4, 128 * scale, 8.0};
    p.kappa_est = 0.3;
    auto s0 = Clock::now();
    auto sol = solve_layer(p);
    auto s1 = Clock::now();
    // dt V at theta = 0
    const double dt00 = sol.dt_v0[0];
    const double cn00 = sol.conormal0[0];
    // integral of conormal over the torus (should vanish)
    double icn = 0.0;
    for (long it = 0; it < p.grid.theta_nodes(); ++it) icn += sol.conormal0[it];
    icn *= p.grid.h1() * p.grid.h2();
    std::printf(
        "layer %dx4x%d: %.0f ms iters=%d resid=%.2e dtV(0,0)=%.8f conormal(0,0)=%.8f "
        "a(0)*dt=%.8f int_conormal=%.2e Vinf=%.3e tail=%.3e\n",
        64 * scale, 128 * scale, ms(s0, s1), sol.stats.iterations, sol.residual,
        dt00, cn00, 2.0 * dt00, icn, sol.v_inf[0], sol.tail_norm());
  }

  // full 2D theta grid timing (acceptance 7 size)
  {
    LayerProblem p;
    p.field = identity_field(2);
    p.n = n;
    p.data = [](const double* th, double* v) {
      v[0] = std::cos(2.0 * M_PI * th[0]);
    };
    p.grid = LayerGrid{64, 64, 128, 2.0};
    p.kappa_est = 0.3;
    auto s0 = Clock::now();
    auto sol = solve_layer(p);
    auto s1 = Clock::now();
    // closed-form error
    const double px = 1.0 - n[0] * n[0], py = -n[0] * n[1];
    const double prate = std::hypot(px, py);
    double num = 0, den = 0;
    for (int i1 = 0; i1 < 64; ++i1)
      for (int i2 = 0; i2 < 64; ++i2)
        for (int k = 0; k <= 128; ++k) {
          const double t = k * p.grid.ht();
          const double ex = std::cos(2.0 * M_PI * i1 / 64.0) *
                            std::exp(-2.0 * M_PI * prate * t);
          const double got = sol.value(0, static_cast<long>(i1) * 64 + i2, k);
          num += (got - ex) * (got - ex);
          den += ex * ex;
        }
    std::printf("laplace 64x64x128: %.0f ms iters=%d relL2=%.3e\n", ms(s0, s1),
                sol.stats.iterations, std::sqrt(num / den));
  }
  return 0;
}
