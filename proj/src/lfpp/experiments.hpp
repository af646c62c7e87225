#pragma once
#include <cstdint>
#include <vector>

#include "lfpp/annulus.hpp"
#include "lfpp/fit.hpp"
#include "lfpp/gff.hpp"
#include "lfpp/weights.hpp"

namespace lfpp {

// One knob set drives every experiment; commands read the fields they need.
// The epsilon -> 0 limit is taken jointly with the grid: n is the finest
// grid, ladder step k coarsens to n >> k, and eps = eps_ratio * spacing
// doubles per step, so the regression approaches eps -> 0 at step 0.
struct experiment_config {
  double xi = 0.8;
  int n = 512;                    // finest grid side
  double L = 4.0;                 // physical side of the sampled square
  int eps_ratio = 4;              // mollification scale over spacing
  int replicas = 8;
  uint64_t master_seed = 1;
  double window_fraction = 0.5;
  int threads = 1;                // worker threads for replicas (<=1: serial)
  int octaves = 3;                // eps doublings for exponent runs (steps 0..octaves)

  // fractal experiments
  double alpha = 0.5;
  double zeta = 0.1;
  double r_min = 0.0;             // 0: default 4*spacing
  double r_max = 0.25;
  int level_min = 2;
  int level_max = 6;
  double kpz_s_max = 10.0;

  // ball topology
  double quantile = 0.25;
  int refinements = 3;

  // tightness / holder
  double tight_r = 0.5;
  double tight_k1 = 0.1;  // inner circle radius within the unit square
  double tight_k2 = 0.4;  // outer circle radius; must exceed tight_k1
  std::vector<double> A_list = {1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
  double holder_margin = 0.5;
  int holder_pairs = 10000;
};

// Deterministic, collision-free seed for (step, replica) under one master.
uint64_t step_replica_seed(uint64_t master, int step, int replica);

// Replica pipeline: GFF sample -> heat-kernel mollification at eps ->
// exponential weights e^{xi h*_eps}.
struct replica_field {
  grid_field h;   // raw field
  weight_grid w;  // LFPP weights
};
replica_field make_replica_field(double xi, int n, double L, int eps_ratio, uint64_t seed);

// Median left-right crossing distance of the central unit square, paths
// confined to it: the a_eps normalizer at ladder step `step` (0 = finest).
struct a_eps_result {
  int step = 0;
  int n = 0;
  double eps = 0.0;
  double a_median = 0.0;
  std::vector<double> samples;  // per replica, replica order
  bool low_power = false;       // fewer than 8 replicas
};
a_eps_result estimate_a_eps(const experiment_config& cfg, int step);

// Exponent extraction: regress log a_eps on log eps over the refinement
// ladder; Q_hat = (1 - slope)/xi.
struct q_estimate {
  double xi = 0.0;
  double Q_hat = 0.0;
  double stderr_Q = 0.0;
  scaling_fit fit;  // log a vs log eps
  std::vector<double> eps_list;
  int replicas_per_eps = 0;
};
struct exponent_run {
  std::vector<a_eps_result> steps;
  q_estimate Q;
};
exponent_run run_exponent(const experiment_config& cfg);

// Scale constants c_r = r * a_{eps/r} / a_eps at the smallest available eps
// (ladder step 0), read off the same ladder; r_list must be dyadic 2^-j with
// j <= octaves. fit regresses log c_r on log r (slope ~ xi * Q).
struct scaling_constants {
  std::vector<double> r_list;
  std::vector<double> c_r;
  scaling_fit fit;
  double eps_used = 0.0;
  double lambda = 0.0;  // max observed |log c_r / log r| + 1
  bool sandwich_ok = false;
};
scaling_constants estimate_scaling_constants(const exponent_run& run,
                                             const std::vector<double>& r_list);

// Set-to-set distance tightness: per replica the ratio
// D(rK1, rK2; rU) / (c_r e^{xi h_r(center)}) with K1, K2 concentric circles
// of radii 0.1 and 0.4 inside the unit square U; the table reports the
// fraction of replicas with A^-1 <= ratio <= A for each A.
struct tightness_result {
  double r = 0.0;
  double c_r = 0.0;
  std::vector<double> ratios;       // per replica
  std::vector<double> A_list;
  std::vector<double> probability;  // aligned with A_list
};
tightness_result set_distance_tightness(const experiment_config& cfg, double r, double c_r,
                                        const std::vector<double>& A_list);

// Empirical Holder ratio check: max over sampled pairs of
// log Dhat / log |z-w| with Dhat = D / (a_eps e^{xi h_1(center)}), asserted
// against xi (Q_hat + 2) + margin.
struct holder_report {
  double bound = 0.0;
  double max_ratio = 0.0;
  std::vector<double> replica_max;
  size_t pairs = 0;
  bool pass = false;
};
holder_report holder_check(const experiment_config& cfg, double q_hat, double chi_margin);

// Metric-ball complement topology across grid refinements n, 2n, 4n...:
// per replica grow the ball at the window center to the given quantile of
// the center-to-window-boundary distance spectrum and count 4-connected
// complement components inside the window.
struct ball_topology_row {
  int refinement = 0;
  int n = 0;
  double radius_median = 0.0;
  double components_median = 0.0;
  std::vector<int> component_counts;  // per replica
};
struct ball_topology_result {
  std::vector<ball_topology_row> rows;
};
ball_topology_result ball_topology(const experiment_config& cfg);

// Thick-point box dimension per replica (alpha, zeta, dyadic radii
// [r_min, r_max]) over levels [level_min, level_max].
struct thick_run_result {
  std::vector<double> dims;  // per replica
  double dim_median = 0.0;
  double theory = 0.0;  // max{2 - alpha^2/2, 0}
};
thick_run_result run_thick(const experiment_config& cfg);

// KPZ dimension of the unit segment through the window center per replica,
// plus the unit-weight box dimension of the same raster for reference.
struct kpz_run_result {
  std::vector<double> s_star;  // per replica (infinite -> +inf entry)
  double s_median = 0.0;
  int infinite_count = 0;
  double box_dim = 0.0;  // of the segment raster, unit weights
};
kpz_run_result run_kpz(const experiment_config& cfg);

}  // namespace lfpp
