#ifndef MCRT_PEANO_FEATURES_HPP
#define MCRT_PEANO_FEATURES_HPP

#include <cstddef>
#include <vector>

#include "mcrt/mated_graph.hpp"
#include "mcrt/paths.hpp"

namespace mcrt {

/// Indices t (from `from`) with x[t] <= min x[from..t]; ties count.
std::vector<std::size_t> running_min_times(const std::vector<double>& x, std::size_t from = 0);

/// Cells containing some t > 0 where both coordinates sit at their running
/// minimum over [0, t].
std::size_t simultaneous_running_min_cells(const PathSample& path, const CellDecomposition& cells);

/// Size of the union of the four boundary sets of the whole interval.
std::size_t boundary_cell_count(const PathSample& path, const CellDecomposition& cells);

/// True iff L stays >= -delta_L and R stays >= -delta_R on samples [0, horizon].
bool quadrant_stay_indicator(const PathSample& path, double delta_L, double delta_R,
                             std::size_t horizon);

struct ExcursionWindow {
  std::size_t start = 0, end = 0;
};

/// First gap [a, b] between consecutive running-minimum times of the
/// coordinate (0 = L, 1 = R) with b - a >= min_length. NotFound otherwise.
ExcursionWindow first_long_excursion(const PathSample& path, int coord, std::size_t min_length);

}  // namespace mcrt

#endif  // MCRT_PEANO_FEATURES_HPP
