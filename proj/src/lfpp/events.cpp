#include "lfpp/events.hpp"

#include <algorithm>
#include <cmath>

#include "lfpp/errors.hpp"

namespace lfpp {

event_record check_event_E(vec2 z, double r, double C, const weight_grid& w, const grid_field& h,
                           double c_r) {
  require(r > 0.0 && std::isfinite(r), errc::config, "check_event_E: radius must be positive");
  require(C > 1.0, errc::config, "check_event_E: threshold C must exceed 1");
  require(c_r > 0.0, errc::config, "check_event_E: scaling constant must be positive");
  require(w.xi() > 0.0, errc::config, "check_event_E: weights carry no xi");

  event_record rec;
  rec.center = z;
  rec.radius = r;
  rec.threshold = C;
  rec.scaling_const = c_r;
  rec.circle_avg = circle_average(h, z, r).value;
  rec.across_value = across_annulus(w, {z, 0.5 * r, r}).distance;
  rec.around_value = around_annulus(w, {z, r, 2.0 * r}).distance;

  const double scale = c_r * std::exp(w.xi() * rec.circle_avg);
  rec.holds = rec.across_value > scale / C && rec.around_value < scale * C;
  return rec;
}

int count_dominant_indices(const std::vector<double>& xs, double c) {
  require(!xs.empty(), errc::config, "count_dominant_indices: empty sequence");
  require(c > 0.0, errc::config, "count_dominant_indices: c must be positive");
  for (double x : xs)
    require(x >= 0.0 && std::isfinite(x), errc::config,
            "count_dominant_indices: entries must be nonnegative finite");
  int count = 0;
  double prefix = 0.0;
  for (double x : xs) {
    if (x > c * prefix) ++count;
    prefix += x;
  }
  return count;
}

double dominant_count_bound(const std::vector<double>& xs, double c) {
  require(!xs.empty() && xs.front() > 0.0, errc::config,
          "dominant_count_bound: needs x_1 > 0");
  require(c > 0.0, errc::config, "dominant_count_bound: c must be positive");
  double mx = *std::max_element(xs.begin(), xs.end());
  double lg = std::log1p(c);
  return std::max(1.0, std::log(mx / xs.front()) / lg - std::log(c) / lg + 2.0);
}

}  // namespace lfpp
