#ifndef MCRT_MATED_GRAPH_HPP
#define MCRT_MATED_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mcrt/paths.hpp"
#include "mcrt/range_min.hpp"

namespace mcrt {

using Vertex = std::uint32_t;

/// N cells of K steps each. Vertex v (0-based) is the cell covering the
/// inclusive sample range [v*K, (v+1)*K]; it is cell v+1 in 1-based terms.
struct CellDecomposition {
  std::size_t cell_size = 1;   // K
  std::size_t cell_count = 1;  // N
  double time_per_cell = 1.0;  // K * dt

  /// Throws Divisibility unless K divides the path's step count.
  static CellDecomposition for_path(const PathSample& path, std::size_t K);

  std::size_t steps() const { return cell_size * cell_count; }
  std::size_t first_sample(Vertex v) const { return v * cell_size; }
  std::size_t last_sample(Vertex v) const { return (v + 1) * cell_size; }
  bool operator==(const CellDecomposition&) const = default;
};

/// New decomposition with cells K/f over the same path.
CellDecomposition refine_cells(const CellDecomposition& cells, std::size_t factor);

struct BoundaryLengthVector {
  double dl_lower = 0, dl_upper = 0, dr_lower = 0, dr_upper = 0;
  bool operator==(const BoundaryLengthVector&) const = default;
};

/// Displacements of each coordinate from its minimum over samples [a, b].
BoundaryLengthVector boundary_vector(const PathSample& path, std::size_t a, std::size_t b);

/// Boundary vector of the concatenation of consecutive intervals, from
/// their individual vectors alone. Throws InvalidArgument on an empty list.
BoundaryLengthVector combine_boundary_vectors(std::span<const BoundaryLengthVector> parts);

enum EdgeLabel : std::uint8_t {
  kConsecutive = 1,
  kLMatch = 2,
  kRMatch = 4,
};

struct Edge {
  Vertex u = 0, v = 0;
  std::uint8_t label = 0;
  bool operator==(const Edge&) const = default;
};

/// Undirected graph in compressed form with sorted neighbor lists.
/// Consecutive pairs carry kConsecutive only; L/R labels mark the
/// coordinate(s) that make a non-consecutive pair adjacent.
class StructureGraph {
public:
  StructureGraph() = default;
  /// Edges may come in any order and may repeat; labels of repeats are OR-ed.
  StructureGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::span<const std::uint8_t> labels(Vertex v) const {
    return {labels_.data() + offsets_[v], labels_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(Vertex u, Vertex v) const;
  /// Label of edge {u,v}, 0 when not adjacent.
  std::uint8_t label(Vertex u, Vertex v) const;
  /// All edges with u < v, sorted.
  std::vector<Edge> edges() const;

  bool operator==(const StructureGraph&) const = default;

private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::vector<std::uint8_t> labels_;
};

enum class AdjacencyRule { Continuous, Lattice };

/// Linear-sweep builder. Lattice requires a LatticeQuadrantBridge path and
/// K = 1, and uses strict inequalities; Continuous uses <=.
StructureGraph build_graph(const PathSample& path, const CellDecomposition& cells,
                           AdjacencyRule rule);

/// Continuous-rule graph on an arbitrary partition of the samples into
/// cells [b[k], b[k+1]]; breakpoints strictly increasing, b.front() = 0,
/// b.back() = M.
StructureGraph build_partition_graph(const PathSample& path,
                                     const std::vector<std::size_t>& breakpoints);

/// Continuous-rule sweep over a sequence of cell minima (one coordinate).
void sweep_continuous(std::span<const double> cell_min, std::uint8_t label, std::vector<Edge>& out);
/// Strict lattice sweep over boundary values c[0..N] (one coordinate).
void sweep_lattice(std::span<const double> c, std::uint8_t label, std::vector<Edge>& out);

/// Direct pairwise evaluation of the continuous adjacency condition on a
/// partition, with range-minimum queries. Quadratic when used for all pairs.
class PartitionPredicate {
public:
  PartitionPredicate(const PathSample& path, std::vector<std::size_t> breakpoints);
  std::size_t size() const { return breakpoints_.size() - 1; }
  /// Label bits that hold for the pair (0 if not adjacent).
  std::uint8_t evaluate(Vertex i, Vertex j) const;
  StructureGraph all_pairs() const;

private:
  std::vector<std::size_t> breakpoints_;
  RangeMin rmq_[2];
};

std::vector<std::size_t> uniform_breakpoints(const CellDecomposition& cells);

/// Cells of [lo, hi] (0-based, inclusive) touched by running minima of
/// each coordinate, forward from the interval's left end (lower_*) and
/// backward from its right end (upper_*). "_left"/"_right" name the
/// coordinate: left = L, right = R.
struct BoundarySets {
  std::vector<Vertex> lower_left, lower_right, upper_left, upper_right;
  /// Sorted union of all four.
  std::vector<Vertex> all() const;
};

BoundarySets boundary_sets(const PathSample& path, const CellDecomposition& cells, Vertex lo,
                           Vertex hi);

/// Rebuild the graph from per-cell boundary vectors alone.
StructureGraph graph_from_boundary_vectors(std::span<const BoundaryLengthVector> deltas,
                                           AdjacencyRule rule);

/// Per-cell boundary vectors of a decomposition.
std::vector<BoundaryLengthVector> cell_boundary_vectors(const PathSample& path,
                                                        const CellDecomposition& cells);

std::string edge_label_string(std::uint8_t label);

/// "i j label" per line, 1-based vertices, label among C, L, R, LR.
void write_edge_list(std::ostream& os, const StructureGraph& g);

}  // namespace mcrt

#endif  // MCRT_MATED_GRAPH_HPP
