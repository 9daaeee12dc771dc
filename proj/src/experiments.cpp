#include "homlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "homlab/cell.hpp"
#include "homlab/rates.hpp"

namespace homlab {

LineFit rate_fit(const std::vector<double>& eps, const std::vector<double>& errors) {
  if (eps.size() < 3) throw std::invalid_argument("rate_fit: need >= 3 pairs");
  for (double e : errors)
    if (e <= 0.0) throw std::invalid_argument("rate_fit: nonpositive error");
  std::vector<double> lx(eps.size()), ly(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    lx[i] = std::log(eps[i]);
    ly[i] = std::log(errors[i]);
  }
  return fit_line(lx, ly);
}

SpatialTensor scaled_tensor(const CoefficientField& field, double eps) {
  if (field.m != 1) throw std::invalid_argument("scaled_tensor: scalar fields only");
  return [field, eps](const Point2& x, double* a) {
    const double y[2] = {x[0] / eps, x[1] / eps};
    field.eval(y, a);
  };
}

namespace {

std::vector<double> sorted_desc(std::vector<double> eps) {
  std::sort(eps.begin(), eps.end(), [](double a, double b) { return a > b; });
  return eps;
}

double theta_mean(const OscillatingData& f, const Point2& x) {
  if (f.theta_independent) {
    double v;
    const double th[2] = {0.0, 0.0};
    f.eval(x, th, &v);
    return v;
  }
  const int n = 64;
  double acc = 0.0, v;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double th[2] = {(i + 0.5) / n, (j + 0.5) / n};
      f.eval(x, th, &v);
      acc += v;
    }
  return acc / (n * n);
}

void fill_report(RateReport& rep) {
  std::vector<double> eps, err;
  for (const auto& p : rep.points) {
    eps.push_back(p.eps);
    err.push_back(p.l2_error);
  }
  rep.fit = rate_fit(eps, err);
}

}  // namespace

RateReport constant_coeff_experiment(const DomainSpec& domain,
                                     const std::vector<double>& tensor2x2,
                                     const OscillatingData& f,
                                     const std::vector<double>& eps_list,
                                     const ExperimentOptions& opts) {
  if (tensor2x2.size() != 4)
    throw std::invalid_argument("constant_coeff_experiment: need a 2x2 tensor");
  const auto eps = sorted_desc(eps_list);
  const double eps_min = eps.back();
  auto a0 = constant_tensor(tensor2x2[0], tensor2x2[1], tensor2x2[2], tensor2x2[3]);

  // homogenized reference: f-bar(x) is the theta-mean of f
  const double h0 = eps_min / opts.reference_h_factor;
  auto ref_mesh = mesh(domain, opts.h_interior, h0);
  auto u0 = solve_dirichlet(ref_mesh, a0,
                            [&f](const Point2& x, double) { return theta_mean(f, x); },
                            opts.fem);

  RateReport rep;
  rep.predicted_exponent = 1.0 / (2.0 * domain.nominal_type());
  rep.provenance = "constant-coefficient rate 1/(2k), type k = " +
                   std::to_string(domain.nominal_type());
  for (double e : eps) {
    auto m = mesh(domain, opts.h_interior, e / 8.0);
    auto ue = solve_dirichlet(m, a0,
                              [&f, e](const Point2& x, double) {
                                double v;
                                const double th[2] = {x[0] / e, x[1] / e};
                                f.eval(x, th, &v);
                                return v;
                              },
                              opts.fem);
    RatePoint p;
    p.eps = e;
    p.h = e / 8.0;
    p.solver_iters = ue.stats.iterations;
    p.l2_error = l2_error(ue, u0);
    rep.points.push_back(p);
    if (opts.verbose)
      std::printf("  [const-coeff] eps=%.5f err=%.6e iters=%d\n", e, p.l2_error,
                  p.solver_iters);
  }
  fill_report(rep);
  return rep;
}

RateReport oscillating_coeff_experiment(const DomainSpec& domain,
                                        const CoefficientField& field,
                                        const OscillatingData& f,
                                        const std::vector<double>& eps_list,
                                        const ExperimentOptions& opts) {
  const auto eps = sorted_desc(eps_list);
  const double eps_min = eps.back();
  auto boundary = domain.boundary();

  // effective tensor and homogenized boundary data
  PeriodicGrid cgrid(2, opts.fbar.cell_resolution);
  auto hat = homogenized_tensor(field, solve_correctors(field, cgrid));
  auto a_hat = constant_tensor(hat.entry(0, 0, 0, 0), hat.entry(0, 1, 0, 0),
                               hat.entry(1, 0, 0, 0), hat.entry(1, 1, 0, 0));
  FbarOptions fo = opts.fbar;
  if (fo.eps_hint <= 0.0) fo.eps_hint = eps_min;
  auto fbar = homogenized_data(boundary, field, f, fo);

  const double h0 = eps_min / opts.reference_h_factor;
  auto ref_mesh = mesh(domain, h0, h0);
  auto u0 = solve_dirichlet(
      ref_mesh, a_hat,
      [&fbar, &boundary](const Point2&, double u) {
        return fbar.value(0, boundary.arclength(u));
      },
      opts.fem);

  RateReport rep;
  {
    const Fraction gamma = gamma_from_type(2, domain.nominal_type());
    const auto a = alpha_star(2, gamma);
    rep.predicted_exponent = a.alpha.value() / 2.0;
    rep.provenance = "oscillating-operator rate alpha*/2 with gamma = " + gamma.str();
  }
  for (double e : eps) {
    auto m = mesh(domain, e / 8.0, e / 8.0);  // coefficients oscillate everywhere
    auto ue = solve_dirichlet(m, scaled_tensor(field, e),
                              [&f, e](const Point2& x, double) {
                                double v;
                                const double th[2] = {x[0] / e, x[1] / e};
                                f.eval(x, th, &v);
                                return v;
                              },
                              opts.fem);
    RatePoint p;
    p.eps = e;
    p.h = e / 8.0;
    p.solver_iters = ue.stats.iterations;
    p.l2_error = l2_error(ue, u0);
    rep.points.push_back(p);
    if (opts.verbose)
      std::printf("  [oscillating] eps=%.5f err=%.6e iters=%d\n", e, p.l2_error,
                  p.solver_iters);
  }
  fill_report(rep);
  return rep;
}

LayerExpansionReport layer_expansion_check(const DomainSpec& domain,
                                           const CoefficientField& field,
                                           double x0_param, double eps, double sigma,
                                           const ExperimentOptions& opts) {
  auto boundary = domain.boundary();
  const Point2 x0 = boundary.point(x0_param);
  const Point2 nv = boundary.outward_normal(x0_param);
  const Direction n = make_direction(nv[0], nv[1]);

  const CoefficientField adj = adjoint_field(field);
  PeriodicGrid cgrid(2, opts.fbar.cell_resolution);
  auto chi_star = solve_correctors(adj, cgrid);
  const GridFunction& chi1 = chi_star.at(0, 0).chi;

  // half-space layer solution for the adjoint data, extended across the plane
  LayerProblem lp;
  lp.field = adj;
  lp.n = n;
  lp.data = [&chi1](const double* th, double* v) { v[0] = -chi1.sample(0, th); };
  const bool reduced = field.laminate;
  lp.grid = LayerGrid{64, reduced ? 4 : 64, 192, 12.0};
  lp.kappa_est = kappa_fast2d(n, opts.fbar.mu, opts.fbar.kappa_cutoff).kappa;
  auto ext = extend_solution(solve_layer(lp), extension_weights(2), 3.0);
  auto phys = physical_layer(ext, x0, eps);

  // boundary-layer BVP with the same data
  auto m = mesh(domain, eps / 8.0, eps / 8.0);
  auto ue = solve_dirichlet(m, scaled_tensor(adj, eps),
                            [&chi1, eps](const Point2& x, double) {
                              const double th[2] = {x[0] / eps, x[1] / eps};
                              return -eps * chi1.sample(0, th);
                            },
                            opts.fem);

  LayerExpansionReport rep;
  rep.eps = eps;
  rep.sigma = sigma;
  for (double r = eps; r < std::sqrt(eps) * 1.0001; r *= 2.0) rep.radii.push_back(r);
  if (rep.radii.back() < std::sqrt(eps) * 0.999)
    rep.radii.push_back(std::sqrt(eps));

  std::vector<double> sup(rep.radii.size(), 0.0);
  for (const auto& t : m.triangles) {
    const Point2& p0 = m.vertices[t[0]];
    const Point2& p1 = m.vertices[t[1]];
    const Point2& p2 = m.vertices[t[2]];
    const Point2 c{(p0[0] + p1[0] + p2[0]) / 3.0, (p0[1] + p1[1] + p2[1]) / 3.0};
    const double dist = std::hypot(c[0] - x0[0], c[1] - x0[1]);
    if (dist > rep.radii.back()) continue;
    // P1 gradient of u minus the sampler gradient
    const double det =
        (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
    const double gux = (ue.u[t[0]] * (p1[1] - p2[1]) + ue.u[t[1]] * (p2[1] - p0[1]) +
                        ue.u[t[2]] * (p0[1] - p1[1])) /
                       det;
    const double guy = (ue.u[t[0]] * (p2[0] - p1[0]) + ue.u[t[1]] * (p0[0] - p2[0]) +
                        ue.u[t[2]] * (p1[0] - p0[0])) /
                       det;
    const auto gv = phys.gradient(0, c);
    const double gn = std::hypot(gux - gv[0], guy - gv[1]);
    for (std::size_t i = 0; i < rep.radii.size(); ++i)
      if (dist <= rep.radii[i]) sup[i] = std::max(sup[i], gn);
  }
  rep.sup_grad = sup;
  for (std::size_t i = 0; i < rep.radii.size(); ++i) {
    const double r = rep.radii[i];
    rep.bound.push_back(std::sqrt(eps) +
                        std::pow(r, 2.0 + sigma) / std::pow(eps, 1.0 + sigma));
    rep.fitted_c = std::max(rep.fitted_c, sup[i] / rep.bound[i]);
  }
  return rep;
}

namespace {

/// Area-weighted P1 gradient recovery at the vertices.
struct RecoveredGradient {
  std::vector<double> gx, gy;

  RecoveredGradient(const MeshedDomain& m, const Vector& u) {
    gx.assign(m.vertex_count(), 0.0);
    gy.assign(m.vertex_count(), 0.0);
    std::vector<double> wsum(m.vertex_count(), 0.0);
    for (const auto& t : m.triangles) {
      const Point2& p0 = m.vertices[t[0]];
      const Point2& p1 = m.vertices[t[1]];
      const Point2& p2 = m.vertices[t[2]];
      const double det =
          (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
      const double tgx = (u[t[0]] * (p1[1] - p2[1]) + u[t[1]] * (p2[1] - p0[1]) +
                          u[t[2]] * (p0[1] - p1[1])) /
                         det;
      const double tgy = (u[t[0]] * (p2[0] - p1[0]) + u[t[1]] * (p0[0] - p2[0]) +
                          u[t[2]] * (p1[0] - p0[0])) /
                         det;
      const double w = std::fabs(det);
      for (int c = 0; c < 3; ++c) {
        gx[t[c]] += w * tgx;
        gy[t[c]] += w * tgy;
        wsum[t[c]] += w;
      }
    }
    for (std::size_t v = 0; v < gx.size(); ++v)
      if (wsum[v] > 0) {
        gx[v] /= wsum[v];
        gy[v] /= wsum[v];
      }
  }
};

}  // namespace

HigherOrderReport higher_order_experiment(
    const DomainSpec& domain, const CoefficientField& field,
    const std::function<double(const Point2&)>& g,
    const std::vector<double>& eps_list, const ExperimentOptions& opts) {
  const auto eps = sorted_desc(eps_list);
  const double eps_min = eps.back();
  auto boundary = domain.boundary();

  PeriodicGrid cgrid(2, opts.fbar.cell_resolution);
  auto chi = solve_correctors(field, cgrid);
  auto hat = homogenized_tensor(field, chi);
  auto a_hat = constant_tensor(hat.entry(0, 0, 0, 0), hat.entry(0, 1, 0, 0),
                               hat.entry(1, 0, 0, 0), hat.entry(1, 1, 0, 0));

  const double h0 = eps_min / opts.reference_h_factor;
  auto ref_mesh = mesh(domain, h0, h0);
  auto u0 = solve_dirichlet(ref_mesh, a_hat,
                            [&g](const Point2& x, double) { return g(x); }, opts.fem);
  RecoveredGradient grad0(ref_mesh, u0.u);
  MeshInterpolator ref_interp(ref_mesh);
  Vector gxv(grad0.gx.begin(), grad0.gx.end());
  Vector gyv(grad0.gy.begin(), grad0.gy.end());

  // boundary-layer counterweight: homogenized datum of -chi_j(theta) d_j u0(y)
  const GridFunction* chi1 = &chi.at(0, 0).chi;
  const GridFunction* chi2 = &chi.at(1, 0).chi;
  OscillatingData bl_data;
  bl_data.m = 1;
  bl_data.theta2_independent = field.laminate;
  bl_data.sampler = [&ref_interp, &gxv, &gyv, chi1, chi2](const Point2& x,
                                                          const double* th, double* v) {
    const double dx = ref_interp.value(gxv, x);
    const double dy = ref_interp.value(gyv, x);
    v[0] = -(chi1->sample(0, th) * dx + chi2->sample(0, th) * dy);
  };
  FbarOptions fo = opts.fbar;
  if (fo.eps_hint <= 0.0) fo.eps_hint = eps_min;
  auto gstar = homogenized_data(boundary, field, bl_data, fo);
  auto vbl = solve_dirichlet(
      ref_mesh, a_hat,
      [&gstar, &boundary](const Point2&, double u) {
        return gstar.value(0, boundary.arclength(u));
      },
      opts.fem);

  HigherOrderReport rep;
  rep.uncorrected.predicted_exponent = 1.0;
  rep.uncorrected.provenance = "smooth-data homogenization rate";
  {
    const Fraction gamma = gamma_from_type(2, domain.nominal_type());
    rep.corrected.predicted_exponent = 1.0 + alpha_star(2, gamma).alpha.value();
    rep.corrected.provenance = "corrected expansion rate 1 + alpha*";
  }

  for (double e : eps) {
    auto m = mesh(domain, e / 8.0, e / 8.0);
    auto ue = solve_dirichlet(m, scaled_tensor(field, e),
                              [&g](const Point2& x, double) { return g(x); },
                              opts.fem);
    // quadrature of both differences on the eps mesh
    double acc_unc = 0.0, acc_cor = 0.0;
    for (const auto& t : m.triangles) {
      const double area = std::fabs(signed_area_of(
          m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]));
      for (int ed = 0; ed < 3; ++ed) {
        const int v0 = t[ed], v1 = t[(ed + 1) % 3];
        const Point2 mid{0.5 * (m.vertices[v0][0] + m.vertices[v1][0]),
                         0.5 * (m.vertices[v0][1] + m.vertices[v1][1])};
        const double uem = 0.5 * (ue.u[v0] + ue.u[v1]);
        const double u0m = ref_interp.value(u0.u, mid);
        const double d_unc = uem - u0m;
        const double th[2] = {mid[0] / e, mid[1] / e};
        const double corr =
            e * (chi1->sample(0, th) * ref_interp.value(gxv, mid) +
                 chi2->sample(0, th) * ref_interp.value(gyv, mid)) +
            e * ref_interp.value(vbl.u, mid);
        const double d_cor = d_unc - corr;
        acc_unc += area / 3.0 * d_unc * d_unc;
        acc_cor += area / 3.0 * d_cor * d_cor;
      }
    }
    RatePoint pu, pc;
    pu.eps = pc.eps = e;
    pu.h = pc.h = e / 8.0;
    pu.solver_iters = pc.solver_iters = ue.stats.iterations;
    pu.l2_error = std::sqrt(acc_unc);
    pc.l2_error = std::sqrt(acc_cor);
    rep.uncorrected.points.push_back(pu);
    rep.corrected.points.push_back(pc);
    if (opts.verbose)
      std::printf("  [higher-order] eps=%.5f unc=%.6e cor=%.6e\n", e, pu.l2_error,
                  pc.l2_error);
  }
  fill_report(rep.uncorrected);
  fill_report(rep.corrected);
  return rep;
}

}  // namespace homlab
