#pragma once
#include <vector>

#include "lfpp/annulus.hpp"
#include "lfpp/gff.hpp"

namespace lfpp {

// Two-sided distance event at center z, radius r: the across-distance of
// A_{r/2,r}(z) exceeds C^{-1} c_r e^{xi h_r(z)} while the around-distance of
// A_{r,2r}(z) stays below C c_r e^{xi h_r(z)}.
struct event_record {
  vec2 center;
  double radius = 0.0;
  double threshold = 0.0;  // C
  double across_value = 0.0;
  double around_value = 0.0;
  double circle_avg = 0.0;    // h_r(z)
  double scaling_const = 0.0;  // c_r
  bool holds = false;
};

event_record check_event_E(vec2 z, double r, double C, const weight_grid& w, const grid_field& h,
                           double c_r);

// #{ j : x_j > c * (x_1 + ... + x_{j-1}) }, empty sum = 0.
int count_dominant_indices(const std::vector<double>& xs, double c);

// Deterministic upper bound for count_dominant_indices:
// max{1, log(max_j x_j / x_1)/log(1+c) - log(c)/log(1+c) + 2}.
double dominant_count_bound(const std::vector<double>& xs, double c);

}  // namespace lfpp
