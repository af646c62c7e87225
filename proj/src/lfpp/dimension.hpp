#pragma once
#include <vector>

#include "lfpp/dyadic.hpp"
#include "lfpp/fit.hpp"
#include "lfpp/weights.hpp"

namespace lfpp {

struct dimension_estimate {
  enum class method_t { box_count, kpz_sum };
  method_t method = method_t::box_count;
  double value = 0.0;
  bool infinite = false;
  scaling_fit fit;  // log2(count or sum) against dyadic level
  int n_min = 0;
  int n_max = 0;
};

// Least-squares slope of log2 #{level-n dyadic squares meeting X} over
// n in [n_min, n_max]. Needs at least 4 levels and a nonempty X.
dimension_estimate box_dimension(const std::vector<vec2>& points, int n_min, int n_max);

// Per-level diameters of X within each covering dyadic square, measured in
// the internal metric of the square enlarged by one side length on every
// side. Diameters are stored normalized by their global maximum, so the
// profile feeds monotone power sums; the normalization shifts intercepts
// only, never slopes. Computed once, then reused across exponents s.
struct kpz_profile {
  int n_min = 0;
  int n_max = 0;
  std::vector<std::vector<double>> diams;  // [level - n_min][square], level order
  double diam_scale = 1.0;                 // the global max before normalization
};

kpz_profile build_kpz_profile(const std::vector<vec2>& points, const weight_grid& w, int n_min,
                              int n_max);

// Regression of log2 sum_S diam(X cap S)^s against the level n. s = 0 counts
// squares (0^0 = 1), tying the statistic to box counts exactly.
scaling_fit kpz_sum_statistic(const kpz_profile& profile, double s);
scaling_fit kpz_sum_statistic(const std::vector<vec2>& points, const weight_grid& w, double s,
                              int n_min, int n_max);

// Quantum dimension: bisection root s* of slope(s) = 0 on [0, s_max], with
// the infinite flag raised when slope stays positive at s_max.
dimension_estimate kpz_dimension(const kpz_profile& profile, double s_max = 10.0,
                                 double tol = 1e-3);
dimension_estimate kpz_dimension(const std::vector<vec2>& points, const weight_grid& w, int n_min,
                                 int n_max, double s_max = 10.0, double tol = 1e-3);

// Closed-form KPZ relation: (Q - sqrt(Q^2 - 2x))/xi for x <= Q^2/2 on [0,2],
// +infinity beyond the branch point.
double kpz_f(double x, double xi, double Q);

// Quantum dimension of the alpha-thick slice: dim_euclid / (xi * (Q - alpha)),
// valid for alpha < Q.
double thick_kpz_theory(double alpha, double dim_euclid, double xi, double Q);

// Grid vertices of a mask as physical points.
std::vector<vec2> mask_points(const region_mask& mask, double spacing, vec2 origin);

// Points along the segment a..b at the given step (endpoints included).
std::vector<vec2> raster_segment(vec2 a, vec2 b, double step);

}  // namespace lfpp
