#pragma once
#include "lfpp/shortest_path.hpp"

namespace lfpp {

// Closed annulus between radii r1 < r2; round uses the Euclidean norm,
// square the sup norm (concentric axis-aligned squares).
struct annulus_spec {
  vec2 center;
  double r1 = 0.0;
  double r2 = 0.0;
  bool square = false;
};

// Distance across the annulus: cheapest path from the inner to the outer
// boundary ring, confined to the (rasterized) closed annulus intersected
// with an optional mask.
distance_result across_annulus(const weight_grid& w, const annulus_spec& spec,
                               const region_mask* mask = nullptr);

// Length of the cheapest closed loop separating the boundary circles,
// confined to the annulus. Implemented by cutting the annulus along the
// rightward horizontal ray from the center and closing the cheapest path
// across the cut, so only loops of winding number +-1 are considered.
// The geodesic holds the loop vertices (first == last implicit closure).
distance_result around_annulus(const weight_grid& w, const annulus_spec& spec,
                               const region_mask* mask = nullptr);

// Cheapest left-right (horizontal = true) or bottom-top crossing of the
// closed physical rectangle [lo.x,hi.x] x [lo.y,hi.y], confined to it.
distance_result rect_crossing(const weight_grid& w, vec2 lo, vec2 hi, bool horizontal,
                              bool want_geodesic = false);

// Vertices of the rasterized closed annulus (half-spacing tolerance), for
// callers that need the region itself.
region_mask annulus_mask(const weight_grid& w, const annulus_spec& spec);

}  // namespace lfpp
