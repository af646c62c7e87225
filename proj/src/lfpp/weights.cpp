#include "lfpp/weights.hpp"

#include <cmath>

namespace lfpp {

region_mask region_mask::from_rect(int n, const index_rect& r) {
  region_mask m(n, false);
  for (int i = std::max(0, r.i0); i <= std::min(n - 1, r.i1); ++i)
    for (int j = std::max(0, r.j0); j <= std::min(n - 1, r.j1); ++j) m.set(i, j, true);
  return m;
}

size_t region_mask::count() const {
  size_t c = 0;
  for (uint8_t b : bits_) c += b;
  return c;
}

weight_grid build_weights(const grid_field& mollified, double xi) {
  require(xi > 0.0, errc::config, "build_weights: xi must be positive");
  weight_grid w(mollified.n(), mollified.spacing(), 1.0);
  w.xi_ = xi;
  w.eps_ = mollified.mollification_eps();
  w.origin_ = mollified.origin();
  const auto& src = mollified.values();
  for (size_t k = 0; k < src.size(); ++k) w.w_[k] = std::exp(xi * src[k]);
  return w;
}

}  // namespace lfpp
