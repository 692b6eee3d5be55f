#ifndef MCRT_GRAPH_METRICS_HPP
#define MCRT_GRAPH_METRICS_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcrt/mated_graph.hpp"

namespace mcrt {

using Dist = std::int32_t;
inline constexpr Dist kUnreachable = std::numeric_limits<Dist>::max();

struct DistanceField {
  std::vector<Vertex> sources;
  std::vector<Dist> dist;
};

/// Multi-source BFS. Throws InvalidArgument on an empty or invalid source set.
DistanceField sssp(const StructureGraph& g, std::span<const Vertex> sources);

/// Reusable BFS scratch space; one per thread.
class Bfs {
public:
  explicit Bfs(std::size_t n = 0) : dist_(n, kUnreachable) { queue_.reserve(n); }
  /// Runs from `src`, optionally stopping after depth `max_depth`.
  /// Returns the eccentricity reached (largest finite distance).
  Dist run(const StructureGraph& g, Vertex src, Dist max_depth = kUnreachable);
  Dist run(const StructureGraph& g, std::span<const Vertex> srcs, Dist max_depth = kUnreachable);
  const std::vector<Dist>& dist() const { return dist_; }
  /// Vertices reached by the last run, in BFS order.
  std::span<const Vertex> visited() const { return queue_; }

private:
  void reset(std::size_t n);
  std::vector<Dist> dist_;
  std::vector<Vertex> queue_;
};

struct DiameterMethod {
  enum Kind { Exact, DoubleSweep } kind = Exact;
  int rounds = 8;
  std::size_t exact_threshold = 8192;
  unsigned jobs = 1;

  static DiameterMethod exact(unsigned jobs = 1) { return {Exact, 8, 8192, jobs}; }
  static DiameterMethod double_sweep(int rounds = 8) { return {DoubleSweep, rounds, 8192, 1}; }
};

/// Exact: all-source BFS (SizeLimit above the threshold). DoubleSweep:
/// largest eccentricity seen over `rounds` farthest-point restarts from
/// vertex 0, a lower bound on the diameter.
Dist diameter(const StructureGraph& g, const DiameterMethod& method);

std::size_t ball_size(const StructureGraph& g, Vertex center, Dist radius);
/// counts[r] = ball size of radius r, for r = 0..max_radius.
std::vector<std::size_t> ball_profile(const StructureGraph& g, Vertex center, Dist max_radius);

/// All-pairs distance matrix (row-major), for small graphs.
std::vector<Dist> all_pairs_distances(const StructureGraph& g, unsigned jobs = 1);

struct SandwichReport {
  bool pass = true;  // every literal inequality held
  std::size_t comparisons = 0;
  Dist diam_coarse = 0, diam_fine = 0;
  std::string witness;  // first violation, empty on success

  bool lower_pass = true;     // d_c <= d_f everywhere
  bool diameter_pass = true;  // diam_f >= diam_c
  std::size_t upper_violations = 0;  // pairs with d_f > 2 d_c
  Dist max_excess = 0;               // max of d_f - 2 d_c
  bool plus_one_pass = true;  // d_f <= 2 d_c + 1 everywhere
  bool exists_pass = true;    // for each y0, some y1 in x1 has d_f <= 2 d_c
};

/// For each coarse pair (x0, x1) and each of the four fine choices
/// y in {2x, 2x+1} (0-based), checks d_c(x0,x1) <= d_f(y0,y1) <= 2 d_c(x0,x1);
/// also diam(fine) >= diam(coarse). Fine must have twice the vertices.
/// The upper inequality can fail by one when x0 != x1 (only the far halves
/// touch), so the weaker forms are recorded separately.
SandwichReport refinement_sandwich_check(const StructureGraph& coarse, const StructureGraph& fine,
                                         std::span<const std::pair<Vertex, Vertex>> pairs);

std::vector<std::pair<Vertex, Vertex>> all_vertex_pairs(std::size_t n);

struct BlockDiameterReport {
  bool pass = true;
  Dist whole = 0;
  Dist block_sum = 0;
  std::size_t blocks = 0;
};

/// Splits the N cells into consecutive dyadic blocks (binary expansion of
/// N, largest first) and checks diam(G) <= sum of block diameters + (blocks - 1).
BlockDiameterReport dyadic_block_check(const PathSample& path, const CellDecomposition& cells);

struct StabilityReport {
  bool pass = true;
  Dist max_difference = 0;
  Dist bound = 0;
  std::size_t combinations = 0;
  std::string witness;
};

/// Fine cells are coarse cells split into 2^m pieces. Every coarse cell in
/// `refine_set` gets each lattice sub-path with the same boundary vector as
/// the original; the rest of the path is fixed. Reports the largest spread
/// of fine distances over all combinations, for the given fine endpoint
/// pairs (all pairs when empty). The path must move one coordinate by +-1
/// per step. Throws SizeLimit when the number of combinations exceeds
/// `budget`.
StabilityReport resubdivision_stability_check(
    const PathSample& path, const CellDecomposition& coarse, std::span<const Vertex> refine_set,
    int m, std::span<const std::pair<Vertex, Vertex>> endpoints = {},
    std::size_t budget = 200000);

/// Successive frontier sets grown from fine vertex y0: V_1 = {coarse cell of
/// y0}; V_{k+1} adds the unrefined coarse cells nearest to y0 in the graph
/// where cells of V_k are refined and the rest are coarse. Returns
/// V_k \ V_{k-1} for k = 1, 2, ...
std::vector<std::vector<Vertex>> frontier_refine_sets(const PathSample& path,
                                                      const CellDecomposition& coarse, int m,
                                                      Vertex y0);

}  // namespace mcrt

#endif  // MCRT_GRAPH_METRICS_HPP
