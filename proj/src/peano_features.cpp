#include "mcrt/peano_features.hpp"

#include "mcrt/error.hpp"

namespace mcrt {

std::vector<std::size_t> running_min_times(const std::vector<double>& x, std::size_t from) {
  std::vector<std::size_t> out;
  if (from >= x.size()) return out;
  double run = x[from];
  for (std::size_t t = from; t < x.size(); ++t)
    if (x[t] <= run) {
      run = x[t];
      out.push_back(t);
    }
  return out;
}

std::size_t simultaneous_running_min_cells(const PathSample& path, const CellDecomposition& cells) {
  if (cells.steps() != path.steps())
    throw Error(ErrorCode::Divisibility, "decomposition does not match the path length");
  const auto& L = path.L();
  const auto& R = path.R();
  const std::size_t K = cells.cell_size;
  std::vector<char> hit(cells.cell_count, 0);
  double ml = L[0], mr = R[0];
  for (std::size_t t = 1; t <= path.steps(); ++t) {
    const bool a = L[t] <= ml, b = R[t] <= mr;
    if (a) ml = L[t];
    if (b) mr = R[t];
    if (a && b) {
      hit[(t - 1) / K] = 1;
      if (t % K == 0 && t / K < cells.cell_count) hit[t / K] = 1;
    }
  }
  std::size_t n = 0;
  for (char h : hit) n += h != 0;
  return n;
}

std::size_t boundary_cell_count(const PathSample& path, const CellDecomposition& cells) {
  return boundary_sets(path, cells, 0, static_cast<Vertex>(cells.cell_count - 1)).all().size();
}

bool quadrant_stay_indicator(const PathSample& path, double delta_L, double delta_R,
                             std::size_t horizon) {
  if (horizon > path.steps()) throw Error(ErrorCode::InvalidArgument, "horizon beyond path end");
  for (std::size_t t = 0; t <= horizon; ++t)
    if (path.L()[t] < -delta_L || path.R()[t] < -delta_R) return false;
  return true;
}

ExcursionWindow first_long_excursion(const PathSample& path, int coord, std::size_t min_length) {
  if (min_length < 1) throw Error(ErrorCode::InvalidArgument, "min_length must be >= 1");
  const auto times = running_min_times(path.coord(coord), 0);
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] - times[i - 1] >= min_length) return {times[i - 1], times[i]};
  throw Error(ErrorCode::NotFound, "no excursion above the running minimum is long enough");
}

}  // namespace mcrt
