#include "homlab/fbar.hpp"

#include <cmath>
#include <stdexcept>

#include "homlab/parallel.hpp"

namespace homlab {

OscillatingData trig_data(std::function<double(const Point2&)> g, double offset,
                          const std::vector<std::array<int, 2>>& waves,
                          const std::vector<double>& amps) {
  if (waves.size() != amps.size())
    throw std::invalid_argument("trig_data: waves/amps mismatch");
  OscillatingData d;
  d.m = 1;
  d.modes = waves;
  d.theta2_independent = true;
  for (const auto& w : waves)
    if (w[1] != 0) d.theta2_independent = false;
  d.sampler = [g = std::move(g), offset, waves, amps](const Point2& x,
                                                      const double* th, double* v) {
    double osc = offset;
    for (std::size_t j = 0; j < waves.size(); ++j)
      osc += amps[j] * std::cos(2.0 * M_PI * (waves[j][0] * th[0] + waves[j][1] * th[1]));
    v[0] = g(x) * osc;
  };
  return d;
}

OscillatingData plain_data(std::function<double(const Point2&)> g) {
  OscillatingData d;
  d.m = 1;
  d.theta_independent = true;
  d.theta2_independent = true;
  d.sampler = [g = std::move(g)](const Point2& x, const double*, double* v) {
    v[0] = g(x);
  };
  return d;
}

void check_data_periodicity(const OscillatingData& data, const Point2& x, double tol) {
  std::vector<double> v0(data.m), v1(data.m);
  for (int s = 0; s < 8; ++s) {
    const double th[2] = {0.137 * (s + 1), 0.411 * (s + 1)};
    data.eval(x, th, v0.data());
    for (int axis = 0; axis < 2; ++axis) {
      double thp[2] = {th[0], th[1]};
      thp[axis] += 1.0;
      data.eval(x, thp, v1.data());
      for (int c = 0; c < data.m; ++c)
        if (std::fabs(v0[c] - v1[c]) > tol)
          throw std::runtime_error("oscillating datum is not 1-periodic");
    }
  }
}

double HomogenizedBoundaryData::value(int comp, double s) const {
  if (reliable_idx.empty())
    throw std::runtime_error("homogenized data has no reliable samples");
  s = std::fmod(s, perimeter);
  if (s < 0) s += perimeter;
  // find the reliable bracket around s (arclengths are sorted)
  std::size_t lo = 0, hi = reliable_idx.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (samples[reliable_idx[mid]].arclength <= s)
      lo = mid;
    else
      hi = mid;
  }
  const FbarSample& a = samples[reliable_idx[lo]];
  const FbarSample& b = samples[reliable_idx[(lo + 1) % reliable_idx.size()]];
  double sa = a.arclength, sb = b.arclength;
  double t = s;
  if (sb <= sa) sb += perimeter;           // wrap segment
  if (t < sa) t += perimeter;
  const double w = sb > sa ? (t - sa) / (sb - sa) : 0.0;
  return (1.0 - w) * a.value[comp] + w * b.value[comp];
}

std::size_t HomogenizedBoundaryData::flagged_count() const {
  std::size_t c = 0;
  for (const auto& s : samples)
    if (!s.reliable) ++c;
  return c;
}

namespace {

double slowest_mode_rate(const CoefficientField& field, const Direction& n) {
  // projection of the lowest coefficient wavevectors onto the tangent frame
  auto proj = [&n](double x, double y) {
    const double dp = x * n[0] + y * n[1];
    return std::hypot(x - dp * n[0], y - dp * n[1]);
  };
  double r = proj(1.0, 0.0);
  if (!field.laminate) r = std::min(r, proj(0.0, 1.0));
  return 2.0 * M_PI * r;
}

}  // namespace

HomogenizedBoundaryData homogenized_data(const ParametricBoundary& boundary,
                                         const CoefficientField& field,
                                         const OscillatingData& data,
                                         const FbarOptions& options) {
  if (field.d != 2) throw std::invalid_argument("homogenized_data: d = 2 pipeline");
  const int m = field.m;
  if (data.m != m) throw std::invalid_argument("homogenized_data: data system size");
  check_ellipticity(field);
  check_data_periodicity(data, boundary.point(0.0));

  // correctors of the adjoint operator, effective tensor of the original
  PeriodicGrid cgrid(2, options.cell_resolution);
  const CoefficientField adj = adjoint_field(field);
  const bool symmetric = field_is_symmetric(field);
  CorrectorSet chi_star = solve_correctors(adj, cgrid);
  HomogenizedTensor hat =
      symmetric ? homogenized_tensor(field, chi_star)
                : homogenized_tensor(field, solve_correctors(field, cgrid));

  const double L = boundary.perimeter();
  int count = options.sample_count;
  if (count <= 0) {
    double density = 64.0;
    if (options.eps_hint > 0.0)
      density = std::max(64.0, 4.0 / std::sqrt(options.eps_hint));
    count = static_cast<int>(std::ceil(L * density));
  }

  HomogenizedBoundaryData out;
  out.boundary = &boundary;
  out.m = m;
  out.perimeter = L;
  out.samples.resize(count);

  const bool reduced_theta2 = field.laminate && data.theta2_independent;
  const int n2 = options.layer_n2 > 0 ? options.layer_n2 : (reduced_theta2 ? 4 : 64);

  auto run_sample = [&](std::size_t i) {
    FbarSample& smp = out.samples[i];
    smp.arclength = L * static_cast<double>(i) / count;
    smp.u = boundary.param_from_arclength(smp.arclength);
    smp.point = boundary.point(smp.u);
    const Point2 nv = boundary.outward_normal(smp.u);
    smp.normal = make_direction(nv[0], nv[1]);
    smp.kappa = kappa_fast2d(smp.normal, options.mu, options.kappa_cutoff).kappa;
    smp.reliable = smp.kappa >= options.flag_threshold;
    smp.value.assign(m, 0.0);
    if (!smp.reliable) return;

    const Direction n = smp.normal;

    // h = inverse of the m x m matrix (a-hat_{ij} n_i n_j)
    std::vector<double> ann(m * m, 0.0);
    for (int nu = 0; nu < m; ++nu)
      for (int be = 0; be < m; ++be) {
        double s = 0.0;
        for (int i1 = 0; i1 < 2; ++i1)
          for (int j1 = 0; j1 < 2; ++j1)
            s += hat.entry(i1, j1, nu, be) * n[i1] * n[j1];
        ann[nu * m + be] = s;
      }
    std::vector<double> hmat;
    {
      // invert by solving ann^T h^T = I columnwise (m <= 4)
      hmat.assign(m * m, 0.0);
      for (int col = 0; col < m; ++col) {
        std::vector<double> rhs(m, 0.0);
        rhs[col] = 1.0;
        std::vector<double> amat(m * m);
        for (int r = 0; r < m; ++r)
          for (int c = 0; c < m; ++c) amat[r * m + c] = ann[r * m + c];
        std::vector<double> x = dense_solve(amat, rhs, m);
        for (int r = 0; r < m; ++r) hmat[r * m + col] = x[r];
      }
      // h^{gamma nu} ann^{nu beta} = delta: h is the left inverse
      // dense_solve gave ann * x = e_col, i.e. x = ann^{-1} e_col; h = ann^{-1}
    }

    // adjoint layer solves with data -chi*_k; conormal flux at t = 0
    const long tn = static_cast<long>(options.layer_n1) * n2;
    std::vector<std::vector<double>> conormal(
        static_cast<std::size_t>(2) * m,
        std::vector<double>(static_cast<std::size_t>(m) * tn, 0.0));
    std::vector<bool> solved(2 * m, false);
    const double rate = slowest_mode_rate(field, n);
    for (int k = 0; k < 2; ++k)
      for (int nu = 0; nu < m; ++nu) {
        double amp = 0.0;
        for (int rho = 0; rho < m; ++rho)
          amp = std::max(amp, chi_star.at(k, nu).chi.max_abs());
        if (amp < 1e-13) continue;  // zero trace: V = 0
        LayerProblem lp;
        lp.field = adj;
        lp.n = n;
        const GridFunction* trace = &chi_star.at(k, nu).chi;
        lp.data = [trace, m](const double* th, double* v) {
          for (int rho = 0; rho < m; ++rho) v[rho] = -trace->sample(rho, th);
        };
        const double T = std::min(options.t_cap, std::max(5.0, 5.0 / std::max(rate, 1e-9)));
        const int nt = std::max(96, static_cast<int>(std::ceil(T / options.layer_ht)));
        lp.grid = LayerGrid{options.layer_n1, n2, nt, T};
        lp.kappa_est = smp.kappa;
        lp.rel_tol = options.rel_tol;
        auto sol = solve_layer(lp);
        conormal[k * m + nu] = sol.conormal0;
        solved[k * m + nu] = true;
      }

    // torus quadrature of h [delta + n grad chi* n - dtV* n] a nn f on the
    // layer theta grid; for the scalar path the dtV-term times a nn is
    // exactly the conormal flux
    const double h1 = 1.0 / options.layer_n1, h2 = 1.0 / n2;
    std::vector<double> integral(m, 0.0);
    std::vector<double> atheta(field.tensor_size());
    std::vector<double> fval(m);
    for (int i1 = 0; i1 < options.layer_n1; ++i1)
      for (int i2 = 0; i2 < n2; ++i2) {
        const double th[2] = {i1 * h1, i2 * h2};
        const long it = static_cast<long>(i1) * n2 + i2;
        field.eval(th, atheta.data());
        data.eval(smp.point, th, fval.data());
        // bracket^{rho nu} = delta + n . grad chi*^{rho nu} . n
        for (int nu = 0; nu < m; ++nu) {
          double acc = 0.0;
          for (int rho = 0; rho < m; ++rho) {
            double bracket = (rho == nu) ? 1.0 : 0.0;
            for (int k = 0; k < 2; ++k) {
              double gdotn = 0.0;
              for (int l = 0; l < 2; ++l)
                gdotn += n[l] * chi_star.at(k, nu).chi.sample_gradient(rho, th, l);
              bracket += gdotn * n[k];
            }
            double annf = 0.0;  // n_i n_j a_{ij}^{rho beta} f^beta
            for (int be = 0; be < m; ++be) {
              double s = 0.0;
              for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                  s += atheta[field.idx(i, j, rho, be)] * n[i] * n[j];
              annf += s * fval[be];
            }
            acc += bracket * annf;
            // boundary-layer correction: -dtV^{rho nu} . n times a nn f;
            // the conormal flux equals (a nn) dtV for the scalar path
            if (m == 1) {
              for (int k = 0; k < 2; ++k)
                if (solved[k])
                  acc -= n[k] * conormal[k][it] * fval[0];
            }
          }
          integral[nu] += acc;
        }
      }
    if (m > 1)
      throw std::runtime_error(
          "homogenized_data: system-valued pipeline not wired (m == 1 supported)");
    for (int ga = 0; ga < m; ++ga) {
      double s = 0.0;
      for (int nu = 0; nu < m; ++nu) s += hmat[ga * m + nu] * integral[nu];
      smp.value[ga] = s * h1 * h2;
    }
  };

  if (options.parallel)
    parallel_for(out.samples.size(), run_sample, 2);
  else
    for (std::size_t i = 0; i < out.samples.size(); ++i) run_sample(i);

  // fill unreliable samples from the nearest reliable neighbor
  for (std::size_t i = 0; i < out.samples.size(); ++i)
    if (out.samples[i].reliable) out.reliable_idx.push_back(i);
  if (out.reliable_idx.empty())
    throw std::runtime_error("homogenized_data: all samples flagged unreliable");
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    FbarSample& smp = out.samples[i];
    if (smp.reliable) continue;
    double best = 1e300;
    std::size_t donor = out.reliable_idx[0];
    for (std::size_t j : out.reliable_idx) {
      double dsep = std::fabs(out.samples[j].arclength - smp.arclength);
      dsep = std::min(dsep, L - dsep);
      if (dsep < best) {
        best = dsep;
        donor = j;
      }
    }
    smp.value = out.samples[donor].value;
    smp.filled_from = static_cast<int>(donor);
  }
  return out;
}

RegularityReport regularity_probe(const HomogenizedBoundaryData& data,
                                  const std::vector<double>& qs) {
  if (data.samples.size() < 200)
    throw std::invalid_argument("regularity_probe: need >= 200 samples");
  RegularityReport rep;
  rep.samples = data.samples.size();
  rep.q = qs;
  for (double q : qs) {
    double acc = 0.0;
    for (std::size_t t = 0; t < data.reliable_idx.size(); ++t) {
      const FbarSample& a = data.samples[data.reliable_idx[t]];
      const FbarSample& b =
          data.samples[data.reliable_idx[(t + 1) % data.reliable_idx.size()]];
      double ds = b.arclength - a.arclength;
      if (ds <= 0) ds += data.perimeter;
      const double dq = std::fabs(b.value[0] - a.value[0]) / ds;
      acc += std::pow(dq, q) * ds;
    }
    rep.norm.push_back(std::pow(acc, 1.0 / q));
  }
  return rep;
}

}  // namespace homlab
