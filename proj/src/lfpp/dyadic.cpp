#include "lfpp/dyadic.hpp"

#include <algorithm>
#include <cmath>

#include "lfpp/errors.hpp"

namespace lfpp {

std::vector<dyadic_square> squares_intersecting(const std::vector<vec2>& points, int level) {
  require(level >= 0 && level <= 40, errc::config, "dyadic level out of range");
  double scale = std::ldexp(1.0, level);  // 1/side
  std::vector<dyadic_square> out;
  out.reserve(points.size());
  for (const vec2& p : points) {
    double sx = p.x * scale, sy = p.y * scale;
    // Closed squares: a point on a dyadic line lies in the squares on both
    // sides, so admit indices floor(s) and floor(s)-1 when s is integral.
    auto lo = [](double s) {
      double f = std::floor(s);
      return static_cast<int64_t>(s == f ? f - 1 : f);
    };
    int64_t x1 = static_cast<int64_t>(std::floor(sx)), x0 = lo(sx);
    int64_t y1 = static_cast<int64_t>(std::floor(sy)), y0 = lo(sy);
    for (int64_t iy = y0; iy <= y1; ++iy)
      for (int64_t ix = x0; ix <= x1; ++ix) out.push_back({level, ix, iy});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

annulus_spec square_annulus(const dyadic_square& s) {
  annulus_spec spec;
  spec.center = s.center();
  spec.r1 = s.side();        // inner square has side 2|S|, half-side |S|
  spec.r2 = 1.5 * s.side();  // outer square side 3|S|
  spec.square = true;
  return spec;
}

std::optional<dyadic_square> separating_square(vec2 z, vec2 w, int n) {
  require(n >= 0 && n <= 38, errc::config, "dyadic level out of range");
  double dx = z.x - w.x, dy = z.y - w.y;
  double dist = std::hypot(dx, dy);
  require(dist >= std::ldexp(1.0, -n), errc::domain, "points closer than 2^-n");
  // Any level-(n+2) square containing z works: its annulus reaches at most
  // sqrt(2)/2 * 3 * 2^-(n+2) < 2^-n from z in sup norm terms; check anyway.
  int lev = n + 2;
  for (const dyadic_square& s : squares_intersecting({z}, lev)) {
    vec2 c = s.center();
    double sup = std::max(std::abs(w.x - c.x), std::abs(w.y - c.y));
    if (sup > 1.5 * s.side()) return s;
  }
  return std::nullopt;
}

}  // namespace lfpp
