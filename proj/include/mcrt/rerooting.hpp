#ifndef MCRT_REROOTING_HPP
#define MCRT_REROOTING_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "mcrt/mated_graph.hpp"
#include "mcrt/paths.hpp"
#include "mcrt/stats.hpp"

namespace mcrt {

/// Contour re-rooting at sample t:
///   X'[s] = (X[t] - m) + (X[u] - m),  u = (s + t) mod M,
/// with m the minimum of X over the index range between t and u.
/// Accepts Excursion and LatticeQuadrantBridge paths (kind is preserved).
PathSample reroot(const PathSample& path, std::size_t t);

/// Same formula without the kind check; the output is tagged Unconditioned.
/// Only meaningful for building deliberately wrong comparators.
PathSample reroot_unchecked(const PathSample& path, std::size_t t);

struct ShiftReport {
  bool pass = true;
  std::size_t edges_checked = 0;
  std::string witness;
};

/// Checks that cells x1, x2 are adjacent before re-rooting at the
/// cell-aligned sample `pivot` iff cells x1 - p, x2 - p (mod N, p = pivot/K)
/// are adjacent after. Continuous rule.
ShiftReport reroot_graph_shift_check(const PathSample& path, const CellDecomposition& cells,
                                     std::size_t pivot);

/// MaxDegree is the default: root degree and diameter have almost no power
/// against the re-rooted-bridge control at N = 512.
enum class RerootStatistic { Diameter, RootDegree, MaxDegree };

struct RerootLawConfig {
  std::size_t cells = 512;         // N
  std::size_t cell_samples = 1;    // K
  std::size_t replicates = 400;
  std::size_t pivot = 0;           // sample index in [0, N*K]
  RerootStatistic statistic = RerootStatistic::MaxDegree;
  std::uint64_t master_seed = 1;
  unsigned jobs = 1;
  /// Negative control: compare against re-rooted non-excursion bridges.
  bool corrupt = false;
};

struct RerootLawReport {
  KsResult ks;
  std::vector<double> base, rerooted;
};

/// Two-sample KS comparison of the statistic on G(excursion) and on
/// G(reroot(excursion, pivot)) over the same replicates (the samples are
/// paired, which makes the asymptotic p-value conservative).
RerootLawReport reroot_law_test(const GammaParams& params, const RerootLawConfig& cfg);

}  // namespace mcrt

#endif  // MCRT_REROOTING_HPP
