#pragma once

namespace lfpp {

// Conventional matter-central-charge / background-charge / coupling triple:
// Q = sqrt((25 - c)/6), and for c <= 1 the real coupling gamma in (0,2] with
// Q = 2/gamma + gamma/2. For c in (1,25), gamma is complex and left unset.
// These relations are standard conventions; reported as such, not measured.
struct param_triple {
  double c = 0.0;
  double Q = 0.0;
  bool has_gamma = false;
  double gamma = 0.0;
};

param_triple params_from_c(double c);          // requires c < 25
param_triple params_from_Q(double Q);          // requires Q > 0
param_triple params_from_gamma(double gamma);  // requires gamma in (0,2]

}  // namespace lfpp
