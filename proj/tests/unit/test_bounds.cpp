#include <doctest.h>

#include <cmath>

#include "mcrt/bounds.hpp"
#include "mcrt/error.hpp"

using namespace mcrt;

TEST_CASE("Watabiki dimension") {
  CHECK(watabiki_dimension(std::sqrt(8.0 / 3)) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(watabiki_dimension(std::sqrt(2.0)) == doctest::Approx(1.5 + std::sqrt(68.0) / 4));
  CHECK(watabiki_dimension(1e-6) == doctest::Approx(2.0));
  CHECK_THROWS_AS(watabiki_dimension(0.0), Error);
  CHECK_THROWS_AS(watabiki_dimension(2.0), Error);
}

TEST_CASE("closed-form bounds at special gammas") {
  const auto a = exponent_bounds(std::sqrt(2.0));
  CHECK(a.d_plus == doctest::Approx(5.0));
  CHECK(a.xi_minus == doctest::Approx(0.2));
  CHECK(a.chi_lower == doctest::Approx(0.2));
  CHECK(a.chi_upper == 0.5);
  CHECK(a.d_minus == doctest::Approx(4.0 / (6.0 - std::sqrt(20.0))));
  // curves cross at (sqrt(8/3), 1/4) and meet at (sqrt(3), 1/3)
  CHECK(exponent_bounds(std::sqrt(8.0 / 3)).chi_lower == doctest::Approx(0.25));
  CHECK(exponent_bounds(std::sqrt(3.0)).chi_lower == doctest::Approx(1.0 / 3));
  CHECK(1 - 2 / 3.0 == doctest::Approx(exponent_bounds(std::sqrt(3.0)).chi_lower));
}

TEST_CASE("kink of the chi lower bound") {
  // xi_minus = 1 - 2/gamma^2 near (1.56542, 0.183854)
  double lo = 1.4, hi = 1.7;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const auto b = exponent_bounds(mid);
    (b.xi_minus > 1 - 2 / (mid * mid) ? lo : hi) = mid;
  }
  CHECK(lo == doctest::Approx(1.56542).epsilon(1e-5));
  CHECK(exponent_bounds(lo).chi_lower == doctest::Approx(0.183854).epsilon(1e-5));
}

TEST_CASE("ordering on a grid") {
  for (int i = 1; i <= 100; ++i) {
    const double g = 0.0199 * i;
    const auto b = exponent_bounds(g);
    CHECK(b.d_minus <= b.watabiki_d + 1e-12);
    CHECK(b.watabiki_d <= b.d_plus + 1e-12);
    CHECK(std::fabs(b.xi_minus - 1 / b.d_plus) <= 1e-12);
    CHECK(b.chi_lower <= b.chi_upper);
  }
}
