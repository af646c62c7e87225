#pragma once
#include <array>
#include <cstdint>
#include <vector>

#include "lfpp/dyadic.hpp"
#include "lfpp/weights.hpp"

namespace lfpp {

// Minimal-cost crossing paths of the four child-pair rectangles of a dyadic
// square (bottom, top: left-right crossings; left, right: bottom-top), plus
// the diameter of the resulting # shape. Crossing paths use the 4-neighbor
// lattice so that two transversal crossings always share a vertex (axis
// segments can only meet at lattice points); the diameter is measured in the
// full 8-neighbor internal metric of the square enlarged by one side length.
struct hash_net {
  dyadic_square square;
  std::array<std::vector<uint32_t>, 4> paths;  // bottom, top, left, right
  double diameter = 0.0;
};

hash_net build_hash(const dyadic_square& s, const weight_grid& w);

// True when the two path networks share at least one lattice vertex.
bool hashes_intersect(const hash_net& a, const hash_net& b);

}  // namespace lfpp
