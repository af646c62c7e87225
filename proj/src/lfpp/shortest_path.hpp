#pragma once
#include <cstdint>
#include <limits>
#include <vector>

#include "lfpp/weights.hpp"

namespace lfpp {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct distance_result {
  double distance = kInf;
  bool reachable = false;
  std::vector<uint32_t> geodesic;  // source..target when requested
  uint64_t relaxations = 0;
};

// Multi-source / multi-target shortest path on the 8-neighbor lattice with
// edge cost spacing * |delta| * (w[u]+w[v])/2. Label-setting with a binary
// heap ordered by (distance, vertex id), so ties settle in lexicographic
// vertex order and geodesics are reproducible. Stops at the first settled
// target. mask == nullptr means the full lattice; sources and targets must
// be nonempty subsets of the mask.
distance_result grid_distance(const weight_grid& w, const std::vector<uint32_t>& sources,
                              const std::vector<uint32_t>& targets,
                              const region_mask* mask = nullptr, bool want_geodesic = false);

// Distances from a source set to every vertex (kInf where unreachable or
// outside the mask). radius_bound < kInf stops the search once the frontier
// exceeds the bound; distances beyond it are reported as kInf.
std::vector<double> grid_distance_field(const weight_grid& w, const std::vector<uint32_t>& sources,
                                        const region_mask* mask = nullptr,
                                        double radius_bound = kInf);

// Independent point-to-point queries fanned out over a worker pool; results
// come back in submission order regardless of scheduling.
std::vector<distance_result> grid_distance_many(const weight_grid& w,
                                                const std::vector<std::pair<uint32_t, uint32_t>>& pairs,
                                                const region_mask* mask = nullptr, int threads = 1);

// Closed metric ball {v : D(center, v) <= radius} in the internal metric of
// the mask.
region_mask metric_ball(const weight_grid& w, uint32_t center, double radius,
                        const region_mask& mask);

// Number of 4-connected components of window \ ball in plane topology: every
// component that reaches the window frame is connected through the ball-free
// exterior, so all such pieces count as one unbounded component; the rest are
// enclosed pockets. The asymmetry (8-ball, 4-complement) keeps discrete
// separation consistent.
int complement_components(const region_mask& ball, const region_mask& window);

}  // namespace lfpp
