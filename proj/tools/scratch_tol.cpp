// scratch: dtV sensitivity to CG tolerance and grid
#include <cmath>
#include <cstdio>

#include "homlab/cell.hpp"
#include "homlab/field.hpp"
#include "homlab/layer.hpp"

using namespace homlab;

int main() {
  auto field = laminate_field(2);
  PeriodicGrid cgrid(2, 128);
  auto correctors = solve_correctors(field, cgrid);
  const GridFunction& chi1 = correctors.at(0, 0).chi;
  const Direction n = make_direction(1.0, std::sqrt(2.0));

  for (double tol : {1e-8, 1e-10, 1e-12}) {
    for (int scale : {1, 2}) {
      LayerProblem p;
      p.field = field;
      p.n = n;
      p.data = [&chi1](const double* th, double* v) { v[0] = -chi1.sample(0, th); };
      p.grid = LayerGrid{64 * scale, 4, 128 * scale, 8.0};
      p.kappa_est = 0.3;
      p.rel_tol = tol;
      p.max_iter = 200000;
      auto sol = solve_layer(p);
      std::printf("tol=%.0e grid=%dx4x%d iters=%d dtV(0,0)=%.9f conormal=%.9f\n",
                  tol, 64 * scale, 128 * scale, sol.stats.iterations,
                  sol.dt_v0[0], sol.conormal0[0]);
    }
  }
  return 0;
}
