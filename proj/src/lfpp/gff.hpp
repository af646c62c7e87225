#pragma once
#include <cstdint>
#include <vector>

#include "lfpp/grid_field.hpp"

namespace lfpp {

// Approximate whole-plane Gaussian free field on the n x n torus, sampled by
// filtering white noise in Fourier space with mode amplitude ~ 1/|k|. The
// zero mode is dropped and the field is shifted so the circle average of
// radius 1 (physical units) at the domain center is 0. The log-correlation
// normalization makes circle-average increments h_r - h_{2r} centered
// Gaussian with variance log 2.
//
// Requires: n a power of two >= 64, and L large enough that the radius-1
// normalization circle fits well inside the domain.
grid_field sample_gff(int n, double L, uint64_t seed);

struct circle_average_result {
  double value = 0.0;
  int samples = 0;
};

// Mean of bilinearly interpolated field values at equally spaced angles on
// the circle of radius r about z; the circle must lie inside the sampled
// square and r must be resolvable (r >= spacing).
circle_average_result circle_average(const grid_field& f, vec2 z, double r);

// Circle average about every vertex at once (torus wraparound at the seam),
// same quadrature weights as circle_average. Row-major n*n output.
std::vector<double> circle_average_all(const grid_field& f, double r);

// Heat-kernel mollification h * p_{eps^2/2} as a torus convolution. The
// kernel is truncated at radius 6*eps and renormalized to unit mass.
// Requires eps >= 2*spacing.
grid_field mollify(const grid_field& f, double eps);

int circle_sample_count(double r, double spacing);

}  // namespace lfpp
