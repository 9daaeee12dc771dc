#include "homlab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace homlab {

double cz_window_sup(const Sampler1D& f, double lo, double hi, int samples) {
  double m = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double x = lo + (hi - lo) * i / samples;
    m = std::max(m, f(x));
  }
  return m;
}

namespace {

struct Decomposer {
  const Sampler1D* f;
  double q0_lo, q0_hi, tau;
  CzOptions opt;
  std::vector<DyadicCube> out;
  std::vector<long> level_count;

  double window_sup(const DyadicCube& q) const {
    const double half = 0.5 * opt.enlargement * q.side();
    const double lo = std::max(q0_lo, q.center() - half);
    const double hi = std::min(q0_hi, q.center() + half);
    return cz_window_sup(*f, lo, hi, opt.sup_samples);
  }

  // The sampled sup can undershoot the exact one, so the threshold carries
  // the safety slack; exact-threshold cases (constant F, dyadic tau) then
  // stop at the same level as the exact rule.
  bool admissible(const DyadicCube& q) const {
    return window_sup(q) <= opt.safety * tau / q.side();
  }

  void emit(DyadicCube q) {
    if (static_cast<int>(level_count.size()) <= q.level)
      level_count.resize(q.level + 1, 0);
    ++level_count[q.level];
    out.push_back(q);
  }

  void process(const DyadicCube& q) {
    if (admissible(q)) {
      emit(q);
      return;
    }
    if (q.side() < opt.floor_factor * tau) {
      DyadicCube flagged = q;
      flagged.resonant = true;  // F effectively unbounded at this resolution
      emit(flagged);
      return;
    }
    DyadicCube left{q.lo, q.center(), q.level + 1, q.ipos * 2, false};
    DyadicCube right{q.center(), q.hi, q.level + 1, q.ipos * 2 + 1, false};
    process(left);
    process(right);
  }
};

}  // namespace

PartitionCZ cz_decompose(const Sampler1D& f, double q0_lo, double q0_hi,
                         double tau, const CzOptions& options) {
  if (tau <= 0.0) throw std::invalid_argument("cz_decompose: need tau > 0");
  if (q0_hi <= q0_lo) throw std::invalid_argument("cz_decompose: empty base cube");
  Decomposer dec;
  dec.f = &f;
  dec.q0_lo = q0_lo;
  dec.q0_hi = q0_hi;
  dec.tau = tau;
  dec.opt = options;
  dec.process(DyadicCube{q0_lo, q0_hi, 0, 0, false});

  PartitionCZ p;
  p.q0_lo = q0_lo;
  p.q0_hi = q0_hi;
  p.tau = tau;
  p.options = options;
  p.cubes = std::move(dec.out);
  p.count_per_level = std::move(dec.level_count);
  return p;
}

double PartitionCZ::min_side() const {
  double v = 1e300;
  for (const auto& q : cubes) v = std::min(v, q.side());
  return v;
}

double PartitionCZ::max_side() const {
  double v = 0.0;
  for (const auto& q : cubes) v = std::max(v, q.side());
  return v;
}

double PartitionCZ::side_power_sum(double alpha) const {
  double s = 0.0;
  for (const auto& q : cubes) s += std::pow(q.side(), 1.0 + alpha);
  return s;
}

long PartitionCZ::count_at_least(double side) const {
  long c = 0;
  for (const auto& q : cubes)
    if (q.side() >= side) ++c;
  return c;
}

PartitionCheckReport verify_partition(const PartitionCZ& p, const Sampler1D& f) {
  PartitionCheckReport rep;
  const double eps = 1e-12 * p.q0_side();

  // disjointness + exact cover (cubes arrive sorted by construction)
  double cursor = p.q0_lo;
  for (const auto& q : p.cubes) {
    if (q.lo < cursor - eps) {
      rep.disjoint = false;
      rep.detail += "overlap at " + std::to_string(q.lo) + "; ";
    }
    if (q.lo > cursor + eps) {
      rep.covers = false;
      rep.detail += "gap before " + std::to_string(q.lo) + "; ";
    }
    cursor = q.hi;
  }
  if (std::fabs(cursor - p.q0_hi) > eps) rep.covers = false;

  // neighbor size ratio <= 2
  for (std::size_t i = 0; i + 1 < p.cubes.size(); ++i) {
    const double r = p.cubes[i].side() / p.cubes[i + 1].side();
    if (r > 2.0 + 1e-12 || r < 0.5 - 1e-12) {
      rep.neighbor_ratio_ok = false;
      rep.detail += "neighbor ratio " + std::to_string(r) + "; ";
    }
  }

  // stopping rule and parent violation with the same sampled sup
  Decomposer dec;
  dec.f = &f;
  dec.q0_lo = p.q0_lo;
  dec.q0_hi = p.q0_hi;
  dec.tau = p.tau;
  dec.opt = p.options;
  for (const auto& q : p.cubes) {
    if (q.resonant) continue;
    if (!dec.admissible(q)) {
      rep.stopping_ok = false;
      rep.detail += "stopping fails at level " + std::to_string(q.level) + "; ";
    }
    if (q.level > 0) {
      const double pside = 2.0 * q.side();
      const long pip = q.ipos / 2;
      DyadicCube parent{p.q0_lo + pside * pip, p.q0_lo + pside * (pip + 1),
                        q.level - 1, pip, false};
      if (dec.admissible(parent)) {
        rep.parent_violation_ok = false;
        rep.detail += "parent admissible at level " + std::to_string(q.level - 1) + "; ";
      }
    }
  }
  return rep;
}

LiftedPartition lift_partition(const LocalGraph& graph, const PartitionCZ& p) {
  const double reach = std::max(std::fabs(p.q0_lo), std::fabs(p.q0_hi));
  if (reach > graph.radius() * (1.0 + 1e-12))
    throw std::invalid_argument("lift_partition: base cube exceeds the graph patch");
  LiftedPartition lifted;
  lifted.graph = &graph;
  lifted.flat = p;
  lifted.cubes.reserve(p.cubes.size());
  static const double gx[4] = {0.069431844202973, 0.330009478207572,
                               0.669990521792428, 0.930568155797027};
  static const double gw[4] = {0.173927422568727, 0.326072577431273,
                               0.326072577431273, 0.173927422568727};
  for (const auto& q : p.cubes) {
    SurfaceCube sc;
    sc.base = q;
    sc.center_param = graph.param_at(q.center());
    sc.center = graph.lift(q.center());
    double m = 0.0;
    for (int g = 0; g < 4; ++g)
      m += gw[g] * graph.measure_density(q.lo + gx[g] * q.side());
    sc.measure = m * q.side();
    lifted.cubes.push_back(sc);
  }
  return lifted;
}

BumpSet::BumpSet(const PartitionCZ& p) : q0_lo_(p.q0_lo), q0_hi_(p.q0_hi) {
  centers_.reserve(p.cubes.size());
  radii_.reserve(p.cubes.size());
  for (const auto& q : p.cubes) {
    centers_.push_back(q.center());
    radii_.push_back(q.side());
  }
}

double BumpSet::eta(std::size_t j, double s) const {
  const double v = (s - centers_[j]) / radii_[j];
  const double u = 1.0 - v * v;
  if (u <= 1e-14) return 0.0;
  return std::exp(1.0 - 1.0 / u);
}

double BumpSet::phi(std::size_t j, double s) const {
  double total = 0.0;
  for (std::size_t k = 0; k < centers_.size(); ++k) total += eta(k, s);
  if (total <= 0.0) return 0.0;
  return eta(j, s) / total;
}

double BumpSet::sum_phi(double s) const {
  double total = 0.0;
  for (std::size_t k = 0; k < centers_.size(); ++k) total += eta(k, s);
  if (total <= 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < centers_.size(); ++k) acc += eta(k, s) / total;
  return acc;
}

double BumpSet::phi_gradient(std::size_t j, double s, double h) const {
  return (phi(j, s + h) - phi(j, s - h)) / (2.0 * h);
}

double BumpSet::gradient_bound_constant(int samples_per_cube) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < centers_.size(); ++j) {
    const double r = radii_[j];
    for (int i = 0; i <= samples_per_cube; ++i) {
      const double s = centers_[j] - r + 2.0 * r * i / samples_per_cube;
      if (s < q0_lo_ || s > q0_hi_) continue;
      worst = std::max(worst, std::fabs(phi_gradient(j, s, 1e-6 * r)) * r);
    }
  }
  return worst;
}

double BumpSet::min_on_own_cube(std::size_t j, int samples) const {
  const double r = radii_[j];
  double lo = 1e300;
  for (int i = 0; i <= samples; ++i) {
    const double s = centers_[j] - 0.5 * r + r * i / samples;
    lo = std::min(lo, phi(j, s));
  }
  return lo;
}

std::optional<KappaWitness> select_kappa_witness(const LiftedPartition& lifted,
                                                 std::size_t cube_index,
                                                 const Sampler1D& kappa_of_s,
                                                 double tau, double gamma,
                                                 int samples) {
  const DyadicCube& q = lifted.flat.cubes[cube_index];
  const LocalGraph& graph = *lifted.graph;
  const double half = 0.5 * lifted.flat.options.witness_factor * q.side();
  const double lo = std::max(lifted.flat.q0_lo, q.center() - half);
  const double hi = std::min(lifted.flat.q0_hi, q.center() + half);
  const double threshold = std::pow(tau / q.side(), gamma);

  std::optional<KappaWitness> best;
  for (int i = 0; i <= samples; ++i) {
    const double s = lo + (hi - lo) * i / samples;
    const double kv = kappa_of_s(s);
    // equality admitted: cubes of side exactly tau meet the bound with kappa = 1
    if (kv >= threshold * (1.0 - 1e-12) && (!best || kv > best->kappa)) {
      KappaWitness w;
      w.s = s;
      w.kappa = kv;
      w.param = graph.param_at(s);
      w.point = graph.lift(s);
      best = w;
    }
  }
  return best;
}

double theta(const Point2& x, const LiftedPartition& lifted, double t,
             double layer_c) {
  double acc = 0.0;
  for (std::size_t j = 0; j < lifted.cubes.size(); ++j) {
    const auto& sc = lifted.cubes[j];
    const double r = sc.base.side();
    const double dist = std::hypot(x[0] - sc.center[0], x[1] - sc.center[1]);
    if (dist < layer_c * r)
      throw std::runtime_error("theta: point inside the boundary layer of cube " +
                               std::to_string(j) + " (side " + std::to_string(r) +
                               ", distance " + std::to_string(dist) + ")");
    acc += std::pow(r, 1.0 + t) / dist;  // d = 2
  }
  return acc;
}

}  // namespace homlab
