#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "mcrt/error.hpp"
#include "mcrt/paths.hpp"
#include "oracles/brute_force.hpp"

using namespace mcrt;

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

TEST_CASE("gamma parameters") {
  CHECK(GammaParams::make(kSqrt2).rho() == 0.0);
  CHECK(GammaParams::make(std::sqrt(3.0)).rho() == doctest::Approx(-std::cos(std::numbers::pi * 0.75)));
  CHECK(GammaParams::make(std::sqrt(8.0 / 3)).rho() == doctest::Approx(0.5));
  CHECK(GammaParams::make(1.0).kappa() == doctest::Approx(16.0));
  CHECK_THROWS_AS(GammaParams::make(0.0), Error);
  CHECK_THROWS_AS(GammaParams::make(2.0), Error);
  CHECK_THROWS_AS(GammaParams::make(1.0, 0.0), Error);
}

TEST_CASE("path kind names round-trip") {
  for (auto k : {PathKind::Unconditioned, PathKind::Bridge, PathKind::Excursion, PathKind::Meander,
                 PathKind::LatticeQuadrantBridge})
    CHECK(parse_path_kind(path_kind_name(k)) == k);
  CHECK_THROWS_AS(parse_path_kind("spiral"), Error);
}

TEST_CASE("sampled paths satisfy their kind invariants") {
  const auto p = GammaParams::make(kSqrt2);
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto u = sample_path(p, PathKind::Unconditioned, 200, 0.01, {3, r});
    CHECK(u.L()[0] == 0);
    CHECK(u.steps() == 200);
    const auto b = sample_path(p, PathKind::Bridge, 200, 0.01, {3, r});
    CHECK(std::fabs(b.L()[200]) < 1e-12);
    CHECK(std::fabs(b.R()[200]) < 1e-12);
    const auto e = sample_path(p, PathKind::Excursion, 200, 0.01, {3, r});
    CHECK(e.L()[0] == 0);
    CHECK(e.L()[200] == 0);
    for (std::size_t i = 0; i <= 200; ++i) {
      REQUIRE(e.L()[i] >= 0);
      REQUIRE(e.R()[i] >= 0);
    }
    const auto m = sample_path(p, PathKind::Meander, 200, 0.01, {3, r});
    for (std::size_t i = 0; i <= 200; ++i) {
      REQUIRE(m.L()[i] >= 0);
      REQUIRE(m.R()[i] >= 0);
    }
  }
}

TEST_CASE("sampling is deterministic in the seed") {
  const auto p = GammaParams::make(1.5);
  CHECK(sample_path(p, PathKind::Unconditioned, 64, 0.1, {9, 4}) ==
        sample_path(p, PathKind::Unconditioned, 64, 0.1, {9, 4}));
  CHECK_FALSE(sample_path(p, PathKind::Unconditioned, 64, 0.1, {9, 4}) ==
              sample_path(p, PathKind::Unconditioned, 64, 0.1, {9, 5}));
}

TEST_CASE("increment covariance matches rho") {
  const auto p = GammaParams::make(std::sqrt(3.0));
  const std::size_t M = 200000;
  const double dt = 0.5;
  const auto u = sample_path(p, PathKind::Unconditioned, M, dt, {1, 0});
  double sll = 0, srr = 0, slr = 0;
  for (std::size_t i = 0; i < M; ++i) {
    const double a = u.L()[i + 1] - u.L()[i], b = u.R()[i + 1] - u.R()[i];
    sll += a * a;
    srr += b * b;
    slr += a * b;
  }
  CHECK(sll / M == doctest::Approx(dt).epsilon(0.02));
  CHECK(srr / M == doctest::Approx(dt).epsilon(0.02));
  CHECK(slr / std::sqrt(sll * srr) == doctest::Approx(p.rho()).epsilon(0.02));
}

TEST_CASE("excursion and meander need independent coordinates") {
  const auto p = GammaParams::make(std::sqrt(3.0));
  CHECK_THROWS_AS(sample_path(p, PathKind::Excursion, 16, 0.1, {1, 0}), Error);
  CHECK_THROWS_AS(sample_path(p, PathKind::Meander, 16, 0.1, {1, 0}), Error);
}

TEST_CASE("constructor rejects broken invariants") {
  CHECK_THROWS_AS(PathSample(PathKind::Unconditioned, 0.1, {1.0, 0.0}, {0.0, 0.0}), Error);
  CHECK_THROWS_AS(PathSample(PathKind::Excursion, 0.1, {0.0, -1.0, 0.0}, {0.0, 1.0, 0.0}), Error);
  CHECK_THROWS_AS(PathSample(PathKind::LatticeQuadrantBridge, 1, {0.0, 1.0, 0.0}, {0.0, 1.0, 0.0}),
                  Error);
}

TEST_CASE("quadrant walk counts agree with enumeration") {
  for (int n = 1; n <= 4; ++n) CHECK(quadrant_walk_count(n) == oracle::quadrant_walks(n).size());
  CHECK(quadrant_walk_count(1) == 2);
  CHECK(quadrant_walk_count(2) == 10);
}

TEST_CASE("exhaustive lattice sampler reaches every walk") {
  std::set<std::vector<double>> seen;
  for (std::uint64_t s = 0; s < 400; ++s) {
    const auto w = sample_lattice_walk(3, {s, 0}, LatticeMethod::Exhaustive);
    auto key = w.L();
    key.insert(key.end(), w.R().begin(), w.R().end());
    seen.insert(key);
  }
  CHECK(seen.size() == quadrant_walk_count(3));
}

TEST_CASE("rejection lattice walks are quadrant bridges") {
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto w = sample_lattice_walk(50, {2, r}, LatticeMethod::Rejection);
    CHECK(w.kind() == PathKind::LatticeQuadrantBridge);
    CHECK(w.steps() == 100);
    CHECK(w.L().back() == 0);
    CHECK(w.R().back() == 0);
  }
}

TEST_CASE("Cov(L_1, R_1) over replicates") {
  const auto p = GammaParams::make(std::sqrt(8.0 / 3));
  const int reps = 200;
  std::vector<double> prod;
  for (int r = 0; r < reps; ++r) {
    const auto u = sample_path(p, PathKind::Unconditioned, 100000, 1e-5, {13, std::uint64_t(r)});
    prod.push_back(u.L().back() * u.R().back());
  }
  double mean = 0, var = 0;
  for (double v : prod) mean += v / reps;
  for (double v : prod) var += (v - mean) * (v - mean) / (reps - 1);
  CHECK(std::fabs(mean - p.rho() * p.alpha_scale) <= 3 * std::sqrt(var / reps));
}

TEST_CASE("Var(L_t / sqrt t) matches alpha_scale") {
  const auto p = GammaParams::make(1.1, 2.0);
  const int reps = 600;
  double ss = 0;
  for (int r = 0; r < reps; ++r) {
    const auto u = sample_path(p, PathKind::Unconditioned, 50, 0.08, {14, std::uint64_t(r)});
    const double z = u.L().back() / std::sqrt(4.0);
    ss += z * z;
  }
  // ss / alpha is chi-square with reps degrees of freedom
  const double chi = ss / p.alpha_scale;
  CHECK(std::fabs(chi - reps) <= 3 * std::sqrt(2.0 * reps));
}

TEST_CASE("size errors") {
  const auto p = GammaParams::make(1.0);
  CHECK_THROWS_AS(sample_path(p, PathKind::Unconditioned, 0, 0.1, {1, 0}), Error);
  CHECK_THROWS_AS(sample_lattice_walk(7, {1, 0}, LatticeMethod::Exhaustive), Error);
  CHECK_THROWS_AS(sample_lattice_walk(0, {1, 0}, LatticeMethod::Rejection), Error);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto w = sample_lattice_walk(1, {s, 0}, LatticeMethod::Exhaustive);
    const bool ew = w.L() == std::vector<double>{0, 1, 0};
    const bool ns = w.R() == std::vector<double>{0, 1, 0};
    CHECK(ew != ns);
  }
}
