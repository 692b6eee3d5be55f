#include <doctest.h>

#include <cmath>

#include "mcrt/error.hpp"
#include "mcrt/peano_features.hpp"
#include "oracles/brute_force.hpp"

using namespace mcrt;

TEST_CASE("running minima equal the naive scan") {
  for (std::uint64_t r = 0; r < 10; ++r) {
    const auto p = sample_path(GammaParams::make(1.2), PathKind::Unconditioned, 300, 0.01, {61, r});
    for (std::size_t from : {std::size_t{0}, std::size_t{17}})
      CHECK(running_min_times(p.L(), from) == oracle::running_minima(p.L(), from));
    const auto w = sample_free_lattice_walk(200, {61, r});
    CHECK(running_min_times(w.R(), 0) == oracle::running_minima(w.R(), 0));
  }
}

TEST_CASE("monotone paths") {
  const PathSample down(PathKind::Unconditioned, 1, {0, -1, -2, -3, -4}, {0, -1, -2, -3, -4});
  const PathSample up(PathKind::Unconditioned, 1, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4});
  CHECK(running_min_times(down.L()).size() == 5);
  CHECK(running_min_times(up.L()) == std::vector<std::size_t>{0});
  CHECK(simultaneous_running_min_cells(up, CellDecomposition::for_path(up, 1)) == 0);
  CHECK(simultaneous_running_min_cells(down, CellDecomposition::for_path(down, 1)) == 4);
  CHECK(boundary_cell_count(down, CellDecomposition::for_path(down, 1)) == 4);
  CHECK(boundary_cell_count(up, CellDecomposition::for_path(up, 2)) == 2);
  CHECK(boundary_cell_count(up, CellDecomposition::for_path(up, 4)) == 1);
}

TEST_CASE("feature bounds on random paths") {
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto p = sample_path(GammaParams::make(1.5), PathKind::Unconditioned, 512, 1.0 / 512, {62, r});
    const auto cells = CellDecomposition::for_path(p, 4);
    const auto bs = boundary_sets(p, cells, 0, static_cast<Vertex>(cells.cell_count - 1));
    const auto sim = simultaneous_running_min_cells(p, cells);
    CHECK(sim <= bs.lower_left.size());
    CHECK(sim <= bs.lower_right.size());
    const auto bc = boundary_cell_count(p, cells);
    CHECK(bc >= 2);
    CHECK(bc <= cells.cell_count);
  }
}

TEST_CASE("quadrant stay indicator") {
  const PathSample p(PathKind::Unconditioned, 1, {0, -0.5, 1, -2}, {0, 1, -0.2, 0});
  CHECK(quadrant_stay_indicator(p, 1, 1, 0));
  CHECK(quadrant_stay_indicator(p, 1, 1, 2));
  CHECK_FALSE(quadrant_stay_indicator(p, 1, 1, 3));
  CHECK_FALSE(quadrant_stay_indicator(p, 0.4, 1, 1));
  CHECK(quadrant_stay_indicator(p, INFINITY, INFINITY, 3));
  CHECK_THROWS_AS(quadrant_stay_indicator(p, 1, 1, 4), Error);
}

TEST_CASE("first long excursion") {
  // E W E W ... : L = 0 1 0 1 0 ...
  std::vector<double> L{0, 1, 0, 1, 0, 1, 0}, R(7, 0.0);
  const PathSample w(PathKind::Unconditioned, 1, L, R);
  const auto win = first_long_excursion(w, 0, 2);
  CHECK(win.start == 0);
  CHECK(win.end == 2);
  CHECK_THROWS_AS(first_long_excursion(w, 0, 3), Error);
  CHECK_THROWS_AS(first_long_excursion(w, 0, 0), Error);
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto p = sample_path(GammaParams::make(1.0), PathKind::Unconditioned, 2000, 1e-3, {63, r});
    try {
      const auto e = first_long_excursion(p, 1, 50);
      const auto& x = p.R();
      CHECK(e.end - e.start >= 50);
      CHECK(x[e.end] <= oracle::scan_min(x, 0, e.end));
      CHECK(x[e.start] <= oracle::scan_min(x, 0, e.start));
      for (std::size_t t = e.start + 1; t < e.end; ++t) CHECK(x[t] > x[e.start]);
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::NotFound);
    }
  }
}
