#include "mcrt/selftest.hpp"

#include <cmath>
#include <sstream>

#include "mcrt/bounds.hpp"
#include "mcrt/graph_metrics.hpp"
#include "mcrt/mated_graph.hpp"
#include "mcrt/mullin.hpp"
#include "mcrt/peano_features.hpp"
#include "mcrt/rerooting.hpp"

namespace mcrt {

namespace {

const GammaParams kSqrt2 = GammaParams::make(std::sqrt(2.0));

struct Suite {
  std::vector<CheckResult> out;
  void add(const std::string& name, bool pass, const std::string& detail = "") {
    out.push_back({name, pass, detail});
  }
};

PathSample gaussian(std::uint64_t seed, std::size_t idx, std::size_t M, double gamma = std::sqrt(2.0)) {
  return sample_path(GammaParams::make(gamma), PathKind::Unconditioned, M, 1.0 / static_cast<double>(M),
                     {seed, idx});
}

// Wrap samples [a, b] between two cells whose minima lie far below
// everything, so "adjacent to some outside cell" becomes checkable.
PathSample deep_embedding(const PathSample& p, std::size_t a, std::size_t b, std::size_t K) {
  const double deep = -1e9;
  std::vector<double> L, R;
  for (std::size_t i = 0; i < K; ++i) {
    L.push_back(deep);
    R.push_back(deep);
  }
  for (std::size_t t = a; t <= b; ++t) {
    L.push_back(p.L()[t]);
    R.push_back(p.R()[t]);
  }
  for (std::size_t i = 0; i < K; ++i) {
    L.push_back(deep);
    R.push_back(deep);
  }
  const double l0 = L[0], r0 = R[0];
  for (auto& v : L) v -= l0;
  for (auto& v : R) v -= r0;
  return PathSample(PathKind::Unconditioned, p.dt(), std::move(L), std::move(R));
}

}  // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed, unsigned jobs) {
  Suite s;
  (void)jobs;

  s.add("seed-golden", derive_replicate_seed({0, 0}) == kSeedGolden00);

  {
    bool ok = true;
    std::size_t budget_bad = 0;
    for (std::size_t r = 0; r < 20 && ok; ++r)
      for (std::size_t K : {std::size_t{1}, std::size_t{4}}) {
        const auto p = gaussian(seed, r, 128 * K);
        const auto cells = CellDecomposition::for_path(p, K);
        const auto g = build_graph(p, cells, AdjacencyRule::Continuous);
        ok = ok && g == PartitionPredicate(p, uniform_breakpoints(cells)).all_pairs();
        if (g.edge_count() > 4 * g.size()) ++budget_bad;
      }
    s.add("sweep-equals-predicate", ok);
    s.add("edge-budget", budget_bad == 0);
  }

  {
    bool ok = true;
    for (int n = 1; n <= 4; ++n)
      for (const auto& w : enumerate_quadrant_walks(n)) {
        const auto p = walk_from_string(w);
        const auto g = build_graph(p, CellDecomposition::for_path(p, 1), AdjacencyRule::Lattice);
        ok = ok && g == walk_to_triangle_graph(p).graph;
        ok = ok && trees_to_walk(walk_to_trees(p)) == p;
        ok = ok && diameter(g, DiameterMethod::exact()) < static_cast<Dist>(g.size());
      }
    s.add("mullin-layer", ok);
    s.add("mullin-counts", enumerate_quadrant_walks(1).size() == 2 &&
                               enumerate_quadrant_walks(2).size() == 10 &&
                               enumerate_quadrant_walks(3).size() == quadrant_walk_count(3));
  }

  {
    bool ok = true, add_ok = true;
    for (std::size_t r = 0; r < 20; ++r) {
      const auto p = gaussian(seed + 1, r, 256);
      const auto cells = CellDecomposition::for_path(p, 2);
      const auto deltas = cell_boundary_vectors(p, cells);
      ok = ok && graph_from_boundary_vectors(deltas, AdjacencyRule::Continuous) ==
                     build_graph(p, cells, AdjacencyRule::Continuous);
      const auto whole = combine_boundary_vectors(deltas);
      const auto direct = boundary_vector(p, 0, p.steps());
      add_ok = add_ok && std::fabs(whole.dl_lower - direct.dl_lower) < 1e-9 &&
               std::fabs(whole.dl_upper - direct.dl_upper) < 1e-9 &&
               std::fabs(whole.dr_lower - direct.dr_lower) < 1e-9 &&
               std::fabs(whole.dr_upper - direct.dr_upper) < 1e-9;
    }
    s.add("boundary-vector-reconstruction", ok);
    s.add("boundary-vector-additivity", add_ok);
  }

  {
    bool ok = true;
    for (std::size_t r = 0; r < 10 && ok; ++r) {
      const auto p = gaussian(seed + 2, r, 128);
      const auto cells = CellDecomposition::for_path(p, 2);
      const auto lo = static_cast<Vertex>(r % 7), hi = static_cast<Vertex>(40 + r);
      const auto bs = boundary_sets(p, cells, lo, hi);
      const auto emb = deep_embedding(p, lo * 2, (hi + 1) * 2, 2);
      const auto g = build_graph(emb, CellDecomposition::for_path(emb, 2), AdjacencyRule::Continuous);
      const auto last = static_cast<Vertex>(g.size() - 1);
      std::vector<Vertex> ll, lr, ul, ur;
      for (Vertex x = lo; x <= hi; ++x) {
        const Vertex v = x - lo + 1;
        const auto a = g.label(0, v), b = g.label(v, last);
        if (a & (kLMatch | kConsecutive)) ll.push_back(x);
        if (a & (kRMatch | kConsecutive)) lr.push_back(x);
        if (b & (kLMatch | kConsecutive)) ul.push_back(x);
        if (b & (kRMatch | kConsecutive)) ur.push_back(x);
      }
      ok = ll == bs.lower_left && lr == bs.lower_right && ul == bs.upper_left && ur == bs.upper_right;
    }
    s.add("boundary-sets-vs-adjacency", ok);
  }

  {
    bool ok = true, block_ok = true;
    for (std::size_t r = 0; r < 10; ++r) {
      const auto p = gaussian(seed + 3, r, 256);
      const auto coarse = CellDecomposition::for_path(p, 4);
      const auto gc = build_graph(p, coarse, AdjacencyRule::Continuous);
      const auto gf = build_graph(p, refine_cells(coarse, 2), AdjacencyRule::Continuous);
      const auto rep = refinement_sandwich_check(gc, gf, all_vertex_pairs(gc.size()));
      ok = ok && rep.lower_pass && rep.diameter_pass && rep.plus_one_pass && rep.exists_pass;
      const auto q = gaussian(seed + 4, r, 100);
      block_ok = block_ok && dyadic_block_check(q, CellDecomposition::for_path(q, 1)).pass;
    }
    s.add("refinement-sandwich-corrected", ok, "d_c <= d_f <= 2 d_c + 1, min over y1 <= 2 d_c");
    s.add("dyadic-block-diameter", block_ok);
  }

  {
    // exact on lattice excursions; Gaussian samples miss minima that fall
    // inside a step, so only the error is reported for those
    auto involution_error = [](const PathSample& e, std::size_t t) {
      const auto back = reroot(reroot(e, t), e.steps() - t);
      double worst = 0;
      for (int c = 0; c < 2; ++c)
        for (std::size_t i = 0; i <= e.steps(); ++i) {
          const double a = e.coord(c)[i], b = back.coord(c)[i];
          worst = std::max(worst, std::fabs(a - b) / std::max(1.0, std::fabs(a)));
        }
      return worst;
    };
    double worst = 0, gaussian_worst = 0;
    bool shift_ok = true, nonneg = true;
    for (std::size_t r = 0; r < 10; ++r) {
      const auto w = sample_lattice_walk(32, {seed + 6, r}, LatticeMethod::Rejection);
      const std::size_t M = w.steps();
      for (std::size_t t : {std::size_t{0}, std::size_t{7}, M / 2, M - 1, M}) {
        worst = std::max(worst, involution_error(w, t));
        const auto f = reroot(w, t);
        nonneg = nonneg && f.L()[0] == 0 && f.L()[M] == 0 && f.R()[0] == 0 && f.R()[M] == 0;
        for (std::size_t i = 0; i <= M; ++i) nonneg = nonneg && f.L()[i] >= 0 && f.R()[i] >= 0;
      }
      const auto e = sample_path(kSqrt2, PathKind::Excursion, 256, 1.0 / 256, {seed + 5, r});
      gaussian_worst = std::max(gaussian_worst, involution_error(e, 128));
      const auto cells = CellDecomposition::for_path(w, 2);
      for (std::size_t piv = 0; piv <= M; piv += 2)
        shift_ok = shift_ok && reroot_graph_shift_check(w, cells, piv).pass;
    }
    std::ostringstream os;
    os << "lattice max relative error " << worst << ", gaussian " << gaussian_worst;
    s.add("reroot-involution", worst <= 1e-12, os.str());
    s.add("reroot-endpoints", nonneg);
    s.add("reroot-shift-lattice", shift_ok);
  }

  {
    bool ok = true;
    for (std::size_t r = 0; r < 5 && ok; ++r) {
      const auto w = sample_free_lattice_walk(8, {seed + 7, r});
      const auto coarse = CellDecomposition::for_path(w, 2);
      for (Vertex y0 = 0; y0 < 8 && ok; ++y0) {
        std::vector<std::pair<Vertex, Vertex>> ends;
        for (Vertex y1 = 0; y1 < 8; ++y1) ends.emplace_back(y0, y1);
        for (const auto& set : frontier_refine_sets(w, coarse, 1, y0))
          ok = ok && resubdivision_stability_check(w, coarse, set, 1, ends).pass;
      }
    }
    s.add("resubdivision-stability", ok);
  }

  {
    bool ok = true;
    for (int i = 1; i <= 100; ++i) {
      const double g = 0.0199 * i;
      const auto b = exponent_bounds(g);
      ok = ok && b.d_minus <= b.watabiki_d + 1e-12 && b.watabiki_d <= b.d_plus + 1e-12 &&
           std::fabs(b.xi_minus - 1.0 / b.d_plus) <= 1e-12;
    }
    s.add("bounds-consistency", ok);
  }

  {
    const auto p = gaussian(seed + 8, 0, 512);
    const auto cells = CellDecomposition::for_path(p, 4);
    const auto sim = simultaneous_running_min_cells(p, cells);
    const auto ll = boundary_sets(p, cells, 0, static_cast<Vertex>(cells.cell_count - 1));
    const auto bc = boundary_cell_count(p, cells);
    s.add("peano-feature-bounds",
          sim <= ll.lower_left.size() && sim <= ll.lower_right.size() && bc >= 2 &&
              bc <= cells.cell_count);
  }
  return s.out;
}

}  // namespace mcrt
