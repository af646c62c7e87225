#pragma once
#include <vector>

#include "lfpp/gff.hpp"
#include "lfpp/weights.hpp"

namespace lfpp {

// Grid points whose normalized circle averages h_r(z)/log(1/r) sit inside
// [alpha - zeta, alpha + zeta] at every dyadic radius r_min * 2^k <= r_max.
// Only the central window whose circles stay inside the domain is tested.
struct thick_set {
  double alpha = 0.0;
  double zeta = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
  std::vector<double> radii;  // the dyadic radii actually tested
  region_mask points;
  region_mask window;
};

thick_set thick_points(const grid_field& h, double alpha, double zeta, double r_min, double r_max);

// Per-vertex max over the given radii of h_r(z)/log(1/r): a finite-scale
// proxy for the limsup singularity score. Batch circle averages are periodic,
// so values within a margin of r_max from the boundary wrap around; restrict
// to an interior window when that matters.
grid_field singular_scores(const grid_field& h, const std::vector<double>& radii);

}  // namespace lfpp
