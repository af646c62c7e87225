#pragma once
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "lfpp/annulus.hpp"
#include "lfpp/grid_field.hpp"

namespace lfpp {

// Closed dyadic square [ix,ix+1] x [iy,iy+1] scaled by 2^-level, anchored at
// the coordinate origin.
struct dyadic_square {
  int level = 0;
  int64_t ix = 0;  // corner x = ix * 2^-level
  int64_t iy = 0;

  double side() const { return std::ldexp(1.0, -level); }
  vec2 corner() const { return {ix * side(), iy * side()}; }
  vec2 center() const { return {(ix + 0.5) * side(), (iy + 0.5) * side()}; }
  bool contains(vec2 p) const {
    double s = side();
    return p.x >= ix * s && p.x <= (ix + 1) * s && p.y >= iy * s && p.y <= (iy + 1) * s;
  }
  std::array<dyadic_square, 4> children() const {
    return {dyadic_square{level + 1, 2 * ix, 2 * iy}, dyadic_square{level + 1, 2 * ix + 1, 2 * iy},
            dyadic_square{level + 1, 2 * ix, 2 * iy + 1},
            dyadic_square{level + 1, 2 * ix + 1, 2 * iy + 1}};
  }
  dyadic_square parent() const {
    auto floordiv2 = [](int64_t v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); };
    return {level - 1, floordiv2(ix), floordiv2(iy)};
  }
  bool operator==(const dyadic_square&) const = default;
  bool operator<(const dyadic_square& o) const {
    if (level != o.level) return level < o.level;
    if (iy != o.iy) return iy < o.iy;
    return ix < o.ix;
  }
};

// All level-`level` closed dyadic squares meeting the point set. A point on
// a dyadic line belongs to every closed square it touches. Result is sorted,
// without duplicates.
std::vector<dyadic_square> squares_intersecting(const std::vector<vec2>& points, int level);

// Square annulus concentric with S: the region between the squares of side
// 2|S| and 3|S| centered at the center of S.
annulus_spec square_annulus(const dyadic_square& s);

// For |z - w| >= 2^-n there is a level-(n+2) square containing z whose
// square annulus excludes w; returns one (constructive search).
std::optional<dyadic_square> separating_square(vec2 z, vec2 w, int n);

}  // namespace lfpp
