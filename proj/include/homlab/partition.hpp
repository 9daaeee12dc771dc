#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "homlab/local_graph.hpp"

namespace homlab {

/// Dyadic interval inside the base cube (d = 2 boundaries: cubes are intervals).
struct DyadicCube {
  double lo = 0.0;
  double hi = 0.0;
  int level = 0;      // side = side(Q0) * 2^-level
  long ipos = 0;      // index among the 2^level cubes of this level
  bool resonant = false;  // bisection floor reached without the stopping rule

  double side() const { return hi - lo; }
  double center() const { return 0.5 * (lo + hi); }
};

struct CzOptions {
  double enlargement = 6.0;      // sup window factor (clamped to Q0)
  double witness_factor = 18.0;  // witness search window factor
  double safety = 1.05;          // inflation of the sampled sup
  int sup_samples = 64;          // direct samples per queried window
  double floor_factor = 0.5;     // flag instead of bisecting below floor_factor*tau
};

/// Stopping-time decomposition of Q0 adapted to a bounded sampler F >= 0:
/// every cube satisfies safety*sup(F, 6Q holed to Q0) <= tau/side and its
/// parent violates the same rule.
struct PartitionCZ {
  double q0_lo = 0.0, q0_hi = 1.0;
  double tau = 0.0;
  CzOptions options;
  std::vector<DyadicCube> cubes;        // sorted by position
  std::vector<long> count_per_level;    // diagnostics

  double q0_side() const { return q0_hi - q0_lo; }
  double min_side() const;
  double max_side() const;
  /// sum of side^(d-1+alpha) for d=2 boundaries (sides are the r_j)
  double side_power_sum(double alpha) const;
  long count_at_least(double side) const;
};

using Sampler1D = std::function<double(double)>;

PartitionCZ cz_decompose(const Sampler1D& f, double q0_lo, double q0_hi,
                         double tau, const CzOptions& options = {});

/// The same sampled sup the decomposition uses (for checks and witnesses).
double cz_window_sup(const Sampler1D& f, double lo, double hi, int samples);

struct PartitionCheckReport {
  bool disjoint = true;
  bool covers = true;
  bool neighbor_ratio_ok = true;
  bool stopping_ok = true;
  bool parent_violation_ok = true;
  std::string detail;
  bool all_ok() const {
    return disjoint && covers && neighbor_ratio_ok && stopping_ok &&
           parent_violation_ok;
  }
};

/// Re-verifies the structural properties against the same sup estimator.
PartitionCheckReport verify_partition(const PartitionCZ& p, const Sampler1D& f);

/// Surface cube: the lifted image of a tangent cube under the local graph.
struct SurfaceCube {
  DyadicCube base;      // tangent interval
  Point2 center;        // lifted center x_j
  double center_param;  // curve parameter of the lifted center
  double measure;       // arclength of the lifted interval
};

struct LiftedPartition {
  const LocalGraph* graph = nullptr;
  PartitionCZ flat;
  std::vector<SurfaceCube> cubes;
};

/// Lifts a tangent partition onto the boundary through the local graph.
/// Requires the enlarged base cube range to stay inside the graph patch.
LiftedPartition lift_partition(const LocalGraph& graph, const PartitionCZ& p);

/// Smooth partition of unity subordinate to the doubled cubes.
class BumpSet {
 public:
  explicit BumpSet(const PartitionCZ& p);

  std::size_t size() const { return centers_.size(); }
  double eta(std::size_t j, double s) const;
  double phi(std::size_t j, double s) const;   // eta_j / sum_k eta_k
  double sum_phi(double s) const;              // 1 wherever defined
  double phi_gradient(std::size_t j, double s, double h = 1e-7) const;
  /// max over the sweep of |phi_j'| * r_j (bounded by a single constant)
  double gradient_bound_constant(int samples_per_cube = 32) const;
  double min_on_own_cube(std::size_t j, int samples = 32) const;

 private:
  std::vector<double> centers_;
  std::vector<double> radii_;  // cube side r_j; support is |s-c| < r_j
  double q0_lo_, q0_hi_;
};

struct KappaWitness {
  double s = 0.0;        // tangent coordinate
  double param = 0.0;    // curve parameter
  Point2 point{};
  double kappa = 0.0;
};

/// Searches 18Q (clamped to the patch) for a point with
/// kappa > (tau/r_j)^gamma; picks the sample maximizing kappa.
std::optional<KappaWitness> select_kappa_witness(
    const LiftedPartition& lifted, std::size_t cube_index,
    const Sampler1D& kappa_of_s, double tau, double gamma, int samples = 64);

/// Theta_t(x) = sum_j r_j^(d-1+t) / |x - x_j|^(d-1) for d = 2.
/// Throws when x lies inside the boundary layer (|x - x_j| < layer_c * r_j),
/// naming the offending cube.
double theta(const Point2& x, const LiftedPartition& lifted, double t,
             double layer_c = 4.0);

}  // namespace homlab
