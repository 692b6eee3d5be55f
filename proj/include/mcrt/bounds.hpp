#ifndef MCRT_BOUNDS_HPP
#define MCRT_BOUNDS_HPP

namespace mcrt {

struct BoundsTable {
  double gamma = 0;
  double watabiki_d = 0;
  double d_minus = 0;
  double d_plus = 0;
  double xi_minus = 0;
  double chi_lower = 0;
  double chi_upper = 0.5;
};

/// 1 + g^2/4 + sqrt((4 + g^2)^2 + 16 g^2) / 4. Domain error outside (0,2).
double watabiki_dimension(double gamma);

/// d- = 2g^2 / (4 + g^2 - sqrt(16 + g^4)), d+ = 2 + g^2/2 + sqrt(2) g,
/// xi- = 1/d+, chi_lower = max(xi-, 1 - 2/g^2).
BoundsTable exponent_bounds(double gamma);

}  // namespace mcrt

#endif  // MCRT_BOUNDS_HPP
