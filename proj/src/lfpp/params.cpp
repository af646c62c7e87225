#include "lfpp/params.hpp"

#include <cmath>

#include "lfpp/errors.hpp"

namespace lfpp {

namespace {

param_triple finish(double c, double Q) {
  param_triple p;
  p.c = c;
  p.Q = Q;
  if (Q >= 2.0) {  // c <= 1: real coupling branch, the root <= 2
    p.gamma = Q - std::sqrt(Q * Q - 4.0);
    p.has_gamma = true;
    require(std::abs(2.0 / p.gamma + 0.5 * p.gamma - Q) <= 1e-12 * (1.0 + Q), errc::internal,
            "param triple failed its own consistency check");
  }
  return p;
}

}  // namespace

param_triple params_from_c(double c) {
  require(c < 25.0, errc::domain, "params: c must be below 25 for a real Q");
  return finish(c, std::sqrt((25.0 - c) / 6.0));
}

param_triple params_from_Q(double Q) {
  require(Q > 0.0, errc::domain, "params: Q must be positive");
  return finish(25.0 - 6.0 * Q * Q, Q);
}

param_triple params_from_gamma(double gamma) {
  require(gamma > 0.0 && gamma <= 2.0, errc::domain, "params: gamma must sit in (0,2]");
  double Q = 2.0 / gamma + 0.5 * gamma;
  return finish(25.0 - 6.0 * Q * Q, Q);
}

}  // namespace lfpp
