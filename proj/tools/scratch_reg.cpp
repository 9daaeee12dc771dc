// scratch: Richardson-extrapolated regression constant for the laminate layer
#include <cmath>
#include <cstdio>

#include "homlab/cell.hpp"
#include "homlab/field.hpp"
#include "homlab/layer.hpp"

using namespace homlab;

int main() {
  auto field = laminate_field(2);
  PeriodicGrid cgrid(2, 256);
  auto correctors = solve_correctors(field, cgrid);
  const GridFunction& chi1 = correctors.at(0, 0).chi;
  const Direction n = make_direction(1.0, std::sqrt(2.0));

  double dt[3], cn[3];
  int idx = 0;
  for (int scale : {1, 2, 4}) {
    LayerProblem p;
    p.field = field;
    p.n = n;
    p.data = [&chi1](const double* th, double* v) { v[0] = -chi1.sample(0, th); };
    p.grid = LayerGrid{64 * scale, 4, 128 * scale, 8.0};
    p.kappa_est = 0.3;
    p.rel_tol = 1e-11;
    p.max_iter = 400000;
    auto sol = solve_layer(p);
    dt[idx] = sol.dt_v0[0];
    cn[idx] = sol.conormal0[0];
    std::printf("scale %d: dtV=%.9f conormal=%.9f conormal/a0=%.9f\n", scale,
                dt[idx], cn[idx], cn[idx] / 2.0);
    ++idx;
  }
  const double odt = std::log2((dt[0] - dt[1]) / (dt[1] - dt[2]));
  const double ocn = std::log2((cn[0] - cn[1]) / (cn[1] - cn[2]));
  const double rdt = dt[2] + (dt[2] - dt[1]) / (std::pow(2.0, odt) - 1.0);
  const double rcn = cn[2] + (cn[2] - cn[1]) / (std::pow(2.0, ocn) - 1.0);
  std::printf("observed order: dt %.2f cn %.2f\n", odt, ocn);
  std::printf("Richardson: dtV(0,0)=%.9f conormal(0,0)=%.9f -> dtV from flux=%.9f\n",
              rdt, rcn, rcn / 2.0);
  return 0;
}
