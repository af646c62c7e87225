#include "lfpp/thick_points.hpp"

#include <cmath>

#include "lfpp/errors.hpp"

namespace lfpp {

thick_set thick_points(const grid_field& h, double alpha, double zeta, double r_min,
                       double r_max) {
  const int n = h.n();
  const double sp = h.spacing();
  require(zeta > 0.0, errc::config, "thick_points: zeta must be positive");
  require(r_min >= 4.0 * sp, errc::config, "thick_points: r_min below 4 grid spacings");
  require(r_min <= r_max, errc::config, "thick_points: empty radius range");
  require(r_max < 1.0, errc::config, "thick_points: r_max must stay below 1 (log(1/r) > 0)");

  thick_set ts;
  ts.alpha = alpha;
  ts.zeta = zeta;
  ts.r_min = r_min;
  ts.r_max = r_max;
  for (double r = r_min; r <= r_max * (1.0 + 1e-12); r *= 2.0) ts.radii.push_back(r);

  const int margin = static_cast<int>(std::ceil((r_max + sp) / sp));
  require(2 * margin < n - 1, errc::config, "thick_points: r_max too large for the grid");
  index_rect win{margin, n - 1 - margin, margin, n - 1 - margin};
  ts.window = region_mask::from_rect(n, win);
  ts.points = region_mask::empty_mask(n);

  std::vector<uint8_t> pass(static_cast<size_t>(n) * n, 1);
  for (double r : ts.radii) {
    std::vector<double> avg = circle_average_all(h, r);
    const double den = std::log(1.0 / r);
    for (int i = win.i0; i <= win.i1; ++i)
      for (int j = win.j0; j <= win.j1; ++j) {
        size_t v = static_cast<size_t>(i) * n + j;
        if (std::abs(avg[v] / den - alpha) > zeta) pass[v] = 0;
      }
  }
  for (int i = win.i0; i <= win.i1; ++i)
    for (int j = win.j0; j <= win.j1; ++j) {
      uint32_t v = static_cast<uint32_t>(i) * n + j;
      if (pass[v]) ts.points.set(v, true);
    }
  return ts;
}

grid_field singular_scores(const grid_field& h, const std::vector<double>& radii) {
  require(!radii.empty(), errc::config, "singular_scores: no radii");
  const int n = h.n();
  grid_field out(n, h.spacing(), h.origin(), field_kind::deterministic);
  std::vector<double>& score = out.values();
  bool first = true;
  for (double r : radii) {
    require(r >= 4.0 * h.spacing(), errc::config, "singular_scores: radius below 4 spacings");
    require(r < 1.0, errc::config, "singular_scores: radius must stay below 1");
    std::vector<double> avg = circle_average_all(h, r);
    const double den = std::log(1.0 / r);
    for (size_t v = 0; v < score.size(); ++v) {
      double s = avg[v] / den;
      if (first || s > score[v]) score[v] = s;
    }
    first = false;
  }
  return out;
}

}  // namespace lfpp
