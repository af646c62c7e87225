#pragma once
#include <algorithm>
#include <cmath>
#include <vector>

#include "lfpp/errors.hpp"

namespace lfpp {

// Ordinary least squares y ~ slope*x + intercept with the usual residual
// standard error on the slope and coefficient of determination.
struct scaling_fit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r2 = 1.0;  // 1 for a perfect (or 2-point) fit
  std::vector<double> xs, ys;
};

inline scaling_fit least_squares(std::vector<double> xs, std::vector<double> ys) {
  require(xs.size() == ys.size(), errc::config, "least_squares: length mismatch");
  require(xs.size() >= 2, errc::config, "least_squares: need at least two points");
  const size_t m = xs.size();
  double mx = 0, my = 0;
  for (size_t k = 0; k < m; ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (size_t k = 0; k < m; ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  require(sxx > 0, errc::config, "least_squares: degenerate abscissae");
  scaling_fit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0, syy = 0;
  for (size_t k = 0; k < m; ++k) {
    double r = ys[k] - (f.intercept + f.slope * xs[k]);
    ssr += r * r;
    syy += (ys[k] - my) * (ys[k] - my);
  }
  if (m > 2) f.stderr_slope = std::sqrt(ssr / (m - 2) / sxx);
  f.r2 = syy > 0 ? 1.0 - ssr / syy : 1.0;
  f.xs = std::move(xs);
  f.ys = std::move(ys);
  return f;
}

inline double median_of(std::vector<double> v) {
  require(!v.empty(), errc::config, "median_of: empty sample");
  std::sort(v.begin(), v.end());
  size_t m = v.size();
  return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

}  // namespace lfpp
