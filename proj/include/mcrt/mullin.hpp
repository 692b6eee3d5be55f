#ifndef MCRT_MULLIN_HPP
#define MCRT_MULLIN_HPP

#include <string>
#include <vector>

#include "mcrt/mated_graph.hpp"
#include "mcrt/paths.hpp"

namespace mcrt {

/// Tree contour d and dual-tree contour d_star, each of length 2n + 1.
struct ContourPair {
  std::vector<int> d, d_star;
  bool operator==(const ContourPair&) const = default;
};

/// Triangle adjacency graph: vertex i (0-based) is triangle i+1.
struct TriangleGraph {
  StructureGraph graph;
};

/// Walk string over {E, W, N, S} -> LatticeQuadrantBridge path
/// (E/W move d, N/S move d_star). Throws Encoding on bad input.
PathSample walk_from_string(const std::string& walk);
std::string walk_to_string(const PathSample& walk);

ContourPair walk_to_trees(const PathSample& walk);
/// Throws InvalidContour when the pair violates its invariants.
PathSample trees_to_walk(const ContourPair& pair);

/// Direct O(n^2) evaluation of the triangle adjacency condition:
/// |i1 - i2| = 1, or d(i1-1) v d(i2) < min d over [i1, i2-1], or the same for d_star.
TriangleGraph walk_to_triangle_graph(const PathSample& walk);

/// All quadrant walks with 2n steps in lexicographic order E < N < S < W.
/// n <= 4 (SizeLimit otherwise).
std::vector<std::string> enumerate_quadrant_walks(int n);

}  // namespace mcrt

#endif  // MCRT_MULLIN_HPP
