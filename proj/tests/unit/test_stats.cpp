#include <doctest.h>

#include <cmath>

#include "mcrt/error.hpp"
#include "mcrt/rng.hpp"
#include "mcrt/stats.hpp"
#include "oracles/brute_force.hpp"

using namespace mcrt;

TEST_CASE("exact power laws") {
  std::vector<std::pair<double, double>> sq, flat;
  for (double x : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    sq.emplace_back(x, x * x);
    flat.emplace_back(x, 3.0);
  }
  const auto f = fit_loglog(sq);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.slope_stderr == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(f.n_points == 5);
  CHECK(fit_loglog(flat).slope == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("noisy power law") {
  Rng r(71);
  std::vector<std::pair<double, double>> pts;
  for (int i = 1; i <= 8; ++i) {
    const double x = std::pow(2.0, i);
    pts.emplace_back(x, std::pow(x, 1.5) * (1 + 0.01 * r.normal()));
  }
  const auto f = fit_loglog(pts);
  CHECK(f.slope >= 1.4);
  CHECK(f.slope <= 1.6);
  CHECK(f.slope_stderr > 0);
}

TEST_CASE("fit errors") {
  const std::vector<std::pair<double, double>> two{{1, 1}, {2, 2}};
  CHECK_THROWS_AS(fit_loglog(two), Error);
  const std::vector<std::pair<double, double>> neg{{1, 1}, {2, -2}, {3, 3}};
  CHECK_THROWS_AS(fit_loglog(neg), Error);
  const std::vector<std::pair<double, double>> same{{2, 1}, {2, 2}, {2, 3}};
  try {
    fit_loglog(same);
    FAIL("expected a rank error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Rank);
  }
}

TEST_CASE("mean and standard error") {
  const std::vector<double> xs{1, 2, 3, 4};
  const auto m = mean_stderr(xs);
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.stderr_ == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
}

TEST_CASE("KS statistic equals the naive CDF scan") {
  Rng r(72);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> a, b;
    for (int i = 0; i < 60; ++i) a.push_back(std::floor(5 * r.uniform()));
    for (int i = 0; i < 45; ++i) b.push_back(std::floor(5 * r.uniform() + 0.3));
    CHECK(ks_two_sample(a, b).statistic == doctest::Approx(oracle::ks_statistic(a, b)));
  }
}

TEST_CASE("KS p-values") {
  CHECK(ks_two_sample({1, 2, 3}, {1, 2, 3}).p_value == doctest::Approx(1.0));
  std::vector<double> a, b;
  for (int i = 0; i < 200; ++i) {
    a.push_back(i);
    b.push_back(i + 100);
  }
  CHECK(ks_two_sample(a, b).p_value < 1e-6);
  CHECK(kolmogorov_q(0.0) == doctest::Approx(1.0));
  // tabulated: Q(1.36) ~ 0.049
  CHECK(kolmogorov_q(1.36) == doctest::Approx(0.0494).epsilon(0.01));
}
