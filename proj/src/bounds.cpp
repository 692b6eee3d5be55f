#include "mcrt/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "mcrt/error.hpp"

namespace mcrt {

namespace {

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 2.0)) throw Error(ErrorCode::Domain, "gamma must lie in (0,2)");
}

}  // namespace

double watabiki_dimension(double gamma) {
  check_gamma(gamma);
  const double g2 = gamma * gamma;
  return 1.0 + g2 / 4.0 + 0.25 * std::sqrt((4.0 + g2) * (4.0 + g2) + 16.0 * g2);
}

BoundsTable exponent_bounds(double gamma) {
  check_gamma(gamma);
  const double g2 = gamma * gamma;
  BoundsTable b;
  b.gamma = gamma;
  b.watabiki_d = watabiki_dimension(gamma);
  b.d_minus = 2.0 * g2 / (4.0 + g2 - std::sqrt(16.0 + g2 * g2));
  b.d_plus = 2.0 + g2 / 2.0 + std::sqrt(2.0) * gamma;
  b.xi_minus = 1.0 / b.d_plus;
  b.chi_lower = std::max(b.xi_minus, 1.0 - 2.0 / g2);
  b.chi_upper = 0.5;
  return b;
}

}  // namespace mcrt
