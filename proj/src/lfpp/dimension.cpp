#include "lfpp/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lfpp/errors.hpp"
#include "lfpp/shortest_path.hpp"

namespace lfpp {

namespace {

std::vector<double> level_axis(int n_min, int n_max) {
  std::vector<double> xs;
  for (int lev = n_min; lev <= n_max; ++lev) xs.push_back(lev);
  return xs;
}

// Max pairwise internal distance among the vertices, measured inside the box
// mask. Directional extremes seed the search; farthest-point sweeps refine
// it. Exact when the farthest pair includes an extreme vertex (always true
// for constant weights), a tight lower bound otherwise.
double vertex_set_diameter(const weight_grid& w, const std::vector<uint32_t>& verts,
                           const index_rect& box) {
  if (verts.size() < 2) return 0.0;
  const int n = w.n();
  region_mask mask = region_mask::from_rect(n, box);

  auto score = [&](uint32_t v, int axis) {
    int i = static_cast<int>(v) / n, j = static_cast<int>(v) % n;
    switch (axis) {
      case 0: return i;
      case 1: return -i;
      case 2: return j;
      case 3: return -j;
      case 4: return i + j;
      case 5: return -(i + j);
      case 6: return i - j;
      default: return j - i;
    }
  };
  std::vector<uint32_t> seeds;
  for (int axis = 0; axis < 8; ++axis) {
    uint32_t arg = verts[0];
    for (uint32_t v : verts)
      if (score(v, axis) > score(arg, axis)) arg = v;
    seeds.push_back(arg);
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  std::vector<uint32_t> visited;
  double best = 0.0;
  uint32_t frontier = UINT32_MAX;
  auto sweep = [&](uint32_t src) {
    visited.push_back(src);
    std::vector<double> df = grid_distance_field(w, {src}, &mask);
    for (uint32_t v : verts)
      if (df[v] < kInf && df[v] > best) {
        best = df[v];
        frontier = v;
      }
  };
  for (uint32_t s : seeds) sweep(s);
  for (int round = 0; round < 4 && frontier != UINT32_MAX; ++round) {
    uint32_t src = frontier;
    if (std::find(visited.begin(), visited.end(), src) != visited.end()) break;
    frontier = UINT32_MAX;
    sweep(src);
  }
  return best;
}

}  // namespace

dimension_estimate box_dimension(const std::vector<vec2>& points, int n_min, int n_max) {
  require(!points.empty(), errc::domain, "box_dimension: empty point set has no dimension");
  require(n_min >= 0 && n_max - n_min >= 3, errc::config,
          "box_dimension: need at least 4 dyadic levels");
  std::vector<double> ys;
  for (int lev = n_min; lev <= n_max; ++lev)
    ys.push_back(std::log2(static_cast<double>(squares_intersecting(points, lev).size())));
  dimension_estimate est;
  est.method = dimension_estimate::method_t::box_count;
  est.fit = least_squares(level_axis(n_min, n_max), ys);
  est.value = est.fit.slope;
  est.n_min = n_min;
  est.n_max = n_max;
  return est;
}

kpz_profile build_kpz_profile(const std::vector<vec2>& points, const weight_grid& w, int n_min,
                              int n_max) {
  require(!points.empty(), errc::domain, "kpz_profile: empty point set");
  require(n_min >= 0 && n_max - n_min >= 3, errc::config,
          "kpz_profile: need at least 4 dyadic levels");
  const int n = w.n();
  const double sp = w.spacing();
  require(std::ldexp(1.0, -n_max) >= 3.0 * sp, errc::resolution,
          "kpz_profile: deepest squares rasterize below 4x4 vertices");

  // Snap each point to its nearest grid vertex once.
  std::vector<uint32_t> snapped(points.size());
  for (size_t k = 0; k < points.size(); ++k) {
    const vec2& p = points[k];
    int i = static_cast<int>(std::lround((p.y - w.origin().y) / sp));
    int j = static_cast<int>(std::lround((p.x - w.origin().x) / sp));
    require(i >= 0 && i < n && j >= 0 && j < n, errc::domain,
            "kpz_profile: point outside the sampled grid");
    snapped[k] = static_cast<uint32_t>(i) * n + j;
  }

  kpz_profile prof;
  prof.n_min = n_min;
  prof.n_max = n_max;
  double global_max = 0.0;

  auto clampi = [&](long long v) { return static_cast<int>(std::clamp<long long>(v, 0, n - 1)); };
  for (int lev = n_min; lev <= n_max; ++lev) {
    std::vector<dyadic_square> squares = squares_intersecting(points, lev);
    std::vector<std::vector<uint32_t>> buckets(squares.size());
    for (size_t k = 0; k < points.size(); ++k)
      for (const dyadic_square& s : squares_intersecting({points[k]}, lev)) {
        auto it = std::lower_bound(squares.begin(), squares.end(), s);
        buckets[static_cast<size_t>(it - squares.begin())].push_back(snapped[k]);
      }

    std::vector<double> diams(squares.size(), 0.0);
    for (size_t q = 0; q < squares.size(); ++q) {
      auto& vs = buckets[q];
      std::sort(vs.begin(), vs.end());
      vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
      const double L = squares[q].side();
      const vec2 c0 = squares[q].corner();
      index_rect box;
      box.i0 = clampi(static_cast<long long>(std::ceil((c0.y - L - w.origin().y) / sp - 1e-12)));
      box.i1 = clampi(static_cast<long long>(std::floor((c0.y + 2 * L - w.origin().y) / sp + 1e-12)));
      box.j0 = clampi(static_cast<long long>(std::ceil((c0.x - L - w.origin().x) / sp - 1e-12)));
      box.j1 = clampi(static_cast<long long>(std::floor((c0.x + 2 * L - w.origin().x) / sp + 1e-12)));
      diams[q] = vertex_set_diameter(w, vs, box);
      global_max = std::max(global_max, diams[q]);
    }
    prof.diams.push_back(std::move(diams));
  }

  require(global_max > 0.0, errc::domain, "kpz_profile: every covering square is a single point");
  prof.diam_scale = global_max;
  for (auto& level : prof.diams)
    for (double& d : level) d /= global_max;
  return prof;
}

scaling_fit kpz_sum_statistic(const kpz_profile& profile, double s) {
  require(s >= 0.0, errc::config, "kpz_sum_statistic: exponent must be nonnegative");
  std::vector<double> ys;
  for (const auto& level : profile.diams) {
    double sum = 0.0;
    for (double d : level) sum += (s == 0.0) ? 1.0 : std::pow(d, s);
    require(sum > 0.0, errc::domain, "kpz_sum_statistic: power sum vanished at some level");
    ys.push_back(std::log2(sum));
  }
  return least_squares(level_axis(profile.n_min, profile.n_max), ys);
}

scaling_fit kpz_sum_statistic(const std::vector<vec2>& points, const weight_grid& w, double s,
                              int n_min, int n_max) {
  return kpz_sum_statistic(build_kpz_profile(points, w, n_min, n_max), s);
}

dimension_estimate kpz_dimension(const kpz_profile& profile, double s_max, double tol) {
  require(s_max > 0.0 && tol > 0.0, errc::config, "kpz_dimension: bad search parameters");
  dimension_estimate est;
  est.method = dimension_estimate::method_t::kpz_sum;
  est.n_min = profile.n_min;
  est.n_max = profile.n_max;

  scaling_fit top = kpz_sum_statistic(profile, s_max);
  if (top.slope > 0.0) {
    est.infinite = true;
    est.value = std::numeric_limits<double>::infinity();
    est.fit = top;
    return est;
  }
  double lo = 0.0, hi = s_max;
  if (kpz_sum_statistic(profile, 0.0).slope <= 0.0) hi = 0.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (kpz_sum_statistic(profile, mid).slope > 0.0 ? lo : hi) = mid;
  }
  est.value = 0.5 * (lo + hi);
  est.fit = kpz_sum_statistic(profile, est.value);
  return est;
}

dimension_estimate kpz_dimension(const std::vector<vec2>& points, const weight_grid& w, int n_min,
                                 int n_max, double s_max, double tol) {
  return kpz_dimension(build_kpz_profile(points, w, n_min, n_max), s_max, tol);
}

double kpz_f(double x, double xi, double Q) {
  require(xi > 0.0 && Q > 0.0, errc::config, "kpz_f: xi and Q must be positive");
  require(x >= 0.0 && x <= 2.0, errc::domain, "kpz_f: x outside [0,2]");
  double disc = Q * Q - 2.0 * x;
  if (disc < 0.0) return std::numeric_limits<double>::infinity();
  return (Q - std::sqrt(disc)) / xi;
}

double thick_kpz_theory(double alpha, double dim_euclid, double xi, double Q) {
  require(xi > 0.0 && Q > 0.0, errc::config, "thick_kpz_theory: xi and Q must be positive");
  require(alpha < Q, errc::domain, "thick_kpz_theory: needs alpha < Q");
  return dim_euclid / (xi * (Q - alpha));
}

std::vector<vec2> mask_points(const region_mask& mask, double spacing, vec2 origin) {
  std::vector<vec2> pts;
  const int n = mask.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (mask.test(i, j)) pts.push_back({origin.x + j * spacing, origin.y + i * spacing});
  return pts;
}

std::vector<vec2> raster_segment(vec2 a, vec2 b, double step) {
  require(step > 0.0, errc::config, "raster_segment: step must be positive");
  double len = std::hypot(b.x - a.x, b.y - a.y);
  int num = std::max(1, static_cast<int>(std::ceil(len / step)));
  std::vector<vec2> pts;
  pts.reserve(num + 1);
  for (int k = 0; k <= num; ++k) {
    double t = static_cast<double>(k) / num;
    pts.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
  }
  return pts;
}

}  // namespace lfpp
