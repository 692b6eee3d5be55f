// Acceptance run: one PASS/FAIL line per criterion. Exit status 0 only if
// every criterion passes. Tolerances, sizes and time budgets are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mcrt/bounds.hpp"
#include "mcrt/experiments.hpp"
#include "mcrt/graph_metrics.hpp"
#include "mcrt/mated_graph.hpp"
#include "mcrt/mullin.hpp"
#include "mcrt/rerooting.hpp"
#include "oracles/brute_force.hpp"

using namespace mcrt;

namespace {

// 1
constexpr std::size_t kOraclePaths = 100;
constexpr std::size_t kOracleCells = 512;
// 2
constexpr std::size_t kReconstructInstances = 100;
// 3
constexpr std::size_t kSandwichInstances = 50;
constexpr std::size_t kSandwichFineCells = 256;
// 4
constexpr std::size_t kInvolutionExcursions = 50;
constexpr std::size_t kInvolutionPivots = 16;
constexpr double kInvolutionTol = 1e-12;
constexpr std::size_t kShiftCells = 256;
constexpr std::size_t kShiftInstances = 10;
constexpr std::size_t kKsCells = 512;
constexpr std::size_t kKsReplicates = 400;
constexpr double kKsAlpha = 0.01;
// 6
constexpr double kBoundaryTarget = 0.5, kBoundaryTol = 0.1;
// 7
constexpr double kCutTarget = 1.0 / 3, kCutTol = 0.15, kCutFlatMax = 0.1;
// 8
constexpr double kConeTarget = -1.0, kConeTol = 0.15;
constexpr std::size_t kConeReplicates = 100000;
// 9
constexpr double kVolumeSlack = 0.5;
constexpr std::size_t kVolumeReplicates = 50;
// 10
constexpr double kChiSlack = 0.1, kChiMax = 0.55;
// 12
constexpr std::size_t kStabilityWalksPerN = 6;
// 13
constexpr double kBoundsTol = 1e-12;

constexpr std::uint64_t kSeed = 1;

const double kSqrt2 = std::sqrt(2.0), kSqrt83 = std::sqrt(8.0 / 3), kSqrt3 = std::sqrt(3.0);

struct Outcome {
  bool pass = true;
  std::string detail;
};

oracle::EdgeMap as_map(const StructureGraph& g) {
  oracle::EdgeMap m;
  for (const auto& e : g.edges()) m[{int(e.u), int(e.v)}] = e.label;
  return m;
}

std::string num(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

ExperimentConfig config(ExperimentKind kind, double gamma, std::vector<long> scales,
                        std::size_t replicates) {
  ExperimentConfig c;
  c.kind = kind;
  c.gamma = gamma;
  c.scales = std::move(scales);
  c.replicates = replicates;
  c.master_seed = kSeed;
  return c;
}

Outcome adjacency_oracle() {
  Outcome o;
  std::size_t compared = 0;
  const double gammas[3] = {kSqrt2, kSqrt83, kSqrt3};
  for (std::size_t r = 0; r < kOraclePaths; ++r) {
    for (std::size_t K : {std::size_t{1}, std::size_t{4}, std::size_t{16}}) {
      const std::size_t M = kOracleCells * K;
      const auto p = sample_path(GammaParams::make(gammas[r % 3]), PathKind::Unconditioned, M,
                                 1.0 / static_cast<double>(M), {kSeed, r});
      const auto g = build_graph(p, CellDecomposition::for_path(p, K), AdjacencyRule::Continuous);
      ++compared;
      if (as_map(g) != oracle::continuous_adjacency_incremental(p.L(), p.R(), K)) {
        o.pass = false;
        o.detail = "mismatch on path " + std::to_string(r) + " K=" + std::to_string(K);
        return o;
      }
    }
  }
  std::size_t walks = 0;
  for (int n = 1; n <= 4; ++n)
    for (const auto& s : oracle::quadrant_walks(n)) {
      const auto w = walk_from_string(s);
      ++walks;
      if (as_map(build_graph(w, CellDecomposition::for_path(w, 1), AdjacencyRule::Lattice)) !=
          oracle::lattice_adjacency(w.L(), w.R())) {
        o.pass = false;
        o.detail = "lattice mismatch on " + s;
        return o;
      }
    }
  o.detail = std::to_string(compared) + " Gaussian graphs, " + std::to_string(walks) + " lattice walks";
  return o;
}

Outcome boundary_reconstruction() {
  Outcome o;
  const double gammas[3] = {kSqrt2, kSqrt83, kSqrt3};
  for (std::size_t r = 0; r < kReconstructInstances; ++r) {
    const std::size_t K = std::size_t{1} << (r % 4);
    const std::size_t M = 256 * K;
    const auto p = sample_path(GammaParams::make(gammas[r % 3]), PathKind::Unconditioned, M,
                               1.0 / static_cast<double>(M), {kSeed + 1, r});
    const auto cells = CellDecomposition::for_path(p, K);
    if (!(graph_from_boundary_vectors(cell_boundary_vectors(p, cells), AdjacencyRule::Continuous) ==
          build_graph(p, cells, AdjacencyRule::Continuous))) {
      o.pass = false;
      o.detail = "mismatch on instance " + std::to_string(r);
      return o;
    }
  }
  o.detail = std::to_string(kReconstructInstances) + " instances";
  return o;
}

Outcome sandwich() {
  Outcome o;
  std::size_t comparisons = 0, violations = 0, bad_instances = 0;
  Dist excess = 0;
  bool lower = true, diam = true, plus_one = true, exists = true;
  std::string witness;
  for (std::size_t r = 0; r < kSandwichInstances; ++r) {
    const std::size_t M = kSandwichFineCells * 2;
    const auto p = sample_path(GammaParams::make(r % 2 ? kSqrt3 : kSqrt2), PathKind::Unconditioned, M,
                               1.0 / static_cast<double>(M), {kSeed + 2, r});
    const auto coarse = CellDecomposition::for_path(p, 4);
    const auto rep = refinement_sandwich_check(
        build_graph(p, coarse, AdjacencyRule::Continuous),
        build_graph(p, refine_cells(coarse, 2), AdjacencyRule::Continuous),
        all_vertex_pairs(coarse.cell_count));
    comparisons += rep.comparisons;
    violations += rep.upper_violations;
    bad_instances += !rep.pass;
    excess = std::max(excess, rep.max_excess);
    lower = lower && rep.lower_pass;
    diam = diam && rep.diameter_pass;
    plus_one = plus_one && rep.plus_one_pass;
    exists = exists && rep.exists_pass;
    if (witness.empty()) witness = rep.witness;
  }
  o.pass = bad_instances == 0;
  o.detail = std::to_string(comparisons) + " comparisons; lower bound " + (lower ? "ok" : "VIOLATED") +
             ", diameter monotone " + (diam ? "ok" : "VIOLATED") + "; upper 2*d_c violated " +
             std::to_string(violations) + " times in " + std::to_string(bad_instances) +
             " instances (max excess " + std::to_string(excess) + ", e.g. " + witness +
             "); 2*d_c+1 " + (plus_one ? "holds" : "VIOLATED") + ", min over y1 <= 2*d_c " +
             (exists ? "holds" : "VIOLATED");
  return o;
}

Outcome rerooting() {
  Outcome o;
  // involution, exact on lattice excursions
  double worst = 0;
  for (std::size_t r = 0; r < kInvolutionExcursions; ++r) {
    const auto w = sample_lattice_walk(64, {kSeed + 3, r}, LatticeMethod::Rejection);
    const std::size_t M = w.steps();
    for (std::size_t k = 0; k < kInvolutionPivots; ++k) {
      const std::size_t t = k * M / (kInvolutionPivots - 1);
      const auto back = reroot(reroot(w, t), M - t);
      for (int c = 0; c < 2; ++c)
        for (std::size_t i = 0; i <= M; ++i) {
          const double a = w.coord(c)[i];
          worst = std::max(worst, std::fabs(back.coord(c)[i] - a) / std::max(1.0, std::fabs(a)));
        }
    }
  }
  double gaussian_worst = 0;
  for (std::size_t r = 0; r < 5; ++r) {
    const auto e = sample_path(GammaParams::make(kSqrt2), PathKind::Excursion, 512, 1.0 / 512,
                               {kSeed + 4, r});
    const auto back = reroot(reroot(e, 200), 312);
    for (std::size_t i = 0; i <= 512; ++i)
      gaussian_worst = std::max(gaussian_worst, std::fabs(back.L()[i] - e.L()[i]));
  }
  const bool invol = worst <= kInvolutionTol;

  bool shift = true;
  std::size_t pivots = 0;
  for (std::size_t r = 0; r < kShiftInstances && shift; ++r) {
    const auto w = sample_lattice_walk(kShiftCells / 2, {kSeed + 5, r}, LatticeMethod::Rejection);
    for (std::size_t K : {std::size_t{1}, std::size_t{2}}) {
      const auto cells = CellDecomposition::for_path(w, K);
      for (std::size_t piv = 0; piv <= w.steps() && shift; piv += K, ++pivots)
        shift = reroot_graph_shift_check(w, cells, piv).pass;
    }
  }

  RerootLawConfig cfg;
  cfg.cells = kKsCells;
  cfg.replicates = kKsReplicates;
  cfg.pivot = kKsCells / 2;
  cfg.statistic = RerootStatistic::MaxDegree;
  cfg.master_seed = kSeed;
  cfg.jobs = 0;
  const auto null = reroot_law_test(GammaParams::make(kSqrt2), cfg);
  cfg.corrupt = true;
  const auto control = reroot_law_test(GammaParams::make(kSqrt2), cfg);
  const bool ks = null.ks.p_value > kKsAlpha && control.ks.p_value < kKsAlpha;

  o.pass = invol && shift && ks;
  o.detail = "involution max rel err " + num(worst) + " on lattice excursions (Gaussian samples: " +
             num(gaussian_worst) + "); shift " + (shift ? "exact" : "FAILED") + " on " +
             std::to_string(pivots) + " pivots; KS (max degree) null p=" + num(null.ks.p_value) +
             ", control p=" + num(control.ks.p_value, 3);
  return o;
}

Outcome mullin_layer() {
  Outcome o;
  const bool counts = enumerate_quadrant_walks(1).size() == 2 && enumerate_quadrant_walks(2).size() == 10;
  bool same = true, round = true, tri = true;
  std::size_t total = 0;
  for (int n = 1; n <= 4; ++n) {
    const auto walks = enumerate_quadrant_walks(n);
    same = same && walks == oracle::quadrant_walks(n);
    for (const auto& s : walks) {
      const auto w = walk_from_string(s);
      ++total;
      round = round && trees_to_walk(walk_to_trees(w)) == w;
      tri = tri && walk_to_triangle_graph(w).graph ==
                       build_graph(w, CellDecomposition::for_path(w, 1), AdjacencyRule::Lattice);
    }
  }
  o.pass = counts && same && round && tri;
  o.detail = std::string("|D_1|=2, |D_2|=10 ") + (counts && same ? "ok" : "WRONG") + "; " +
             std::to_string(total) + " walks round-trip " + (round ? "ok" : "FAILED") +
             ", triangle graph " + (tri ? "ok" : "FAILED");
  return o;
}

Outcome slope_window(const ExperimentResult& r, double lo, double hi, const std::string& label) {
  Outcome o;
  o.pass = r.fit && r.fit->slope >= lo && r.fit->slope <= hi;
  o.detail = label + " slope " + (r.fit ? num(r.fit->slope) : "n/a") + " in [" + num(lo) + ", " +
             num(hi) + "]";
  return o;
}

Outcome boundary_count() {
  const auto r = run_experiment(config(ExperimentKind::BoundaryCount, kSqrt2,
                                       {8, 9, 10, 11, 12, 13, 14, 15, 16}, 200));
  return slope_window(r, kBoundaryTarget - kBoundaryTol, kBoundaryTarget + kBoundaryTol, "");
}

Outcome cut_cells() {
  const std::vector<long> scales{8, 9, 10, 11, 12, 13, 14, 15, 16};
  const auto a = slope_window(run_experiment(config(ExperimentKind::CutCells, kSqrt3, scales, 200)),
                              kCutTarget - kCutTol, kCutTarget + kCutTol, "sqrt3");
  const auto b = run_experiment(config(ExperimentKind::CutCells, kSqrt2, scales, 200));
  Outcome o;
  const bool flat = b.fit && b.fit->slope <= kCutFlatMax;
  o.pass = a.pass && flat;
  o.detail = a.detail + "; sqrt2 slope " + (b.fit ? num(b.fit->slope) : "n/a") + " <= " + num(kCutFlatMax);
  return o;
}

Outcome cone() {
  auto c = config(ExperimentKind::ConeProbability, kSqrt2, {1, 2, 4, 8, 16, 32, 64}, kConeReplicates);
  c.delta = 1.0;
  return slope_window(run_experiment(c), kConeTarget - kConeTol, kConeTarget + kConeTol, "");
}

Outcome ball_volume() {
  Outcome o;
  for (double g : {kSqrt2, kSqrt83, kSqrt3}) {
    auto c = config(ExperimentKind::BallVolume, g, {8, 12, 16, 24, 32, 48, 64}, kVolumeReplicates);
    c.window_cells = 2'000'000;
    const auto r = run_experiment(c);
    const auto b = exponent_bounds(g);
    auto w = slope_window(r, b.d_minus - kVolumeSlack, b.d_plus + kVolumeSlack, "gamma " + num(g, 5));
    if (g == kSqrt83 && r.fit) {
      const bool in4 = r.fit->slope >= 3 && r.fit->slope <= 5;
      w.pass = w.pass && in4;
      w.detail += in4 ? " and in [3, 5]" : " but NOT in [3, 5]";
    }
    o.pass = o.pass && w.pass;
    o.detail += (o.detail.empty() ? "" : "; ") + w.detail;
  }
  return o;
}

Outcome chi_bounds() {
  Outcome o;
  for (double g : {kSqrt2, kSqrt83, kSqrt3}) {
    auto c = config(ExperimentKind::DiameterScaling, g, {6, 7, 8, 9, 10, 11, 12}, 200);
    c.diameter_method = DiameterMethod::Exact;
    const auto b = exponent_bounds(g);
    const auto w = slope_window(run_experiment(c), b.chi_lower - kChiSlack, kChiMax, "gamma " + num(g, 5));
    o.pass = o.pass && w.pass;
    o.detail += (o.detail.empty() ? "" : "; ") + w.detail;
  }
  return o;
}

Outcome submultiplicativity() {
  auto c = config(ExperimentKind::Submultiplicativity, kSqrt2, {6, 7, 8, 9, 10}, 200);
  c.m_values = {2, 3, 4};
  const auto r = run_experiment(c);
  Outcome o;
  o.pass = !r.ratios.empty();
  for (const auto& q : r.ratios) {
    o.pass = o.pass && q.holds;
    o.detail += "(" + std::to_string(q.n) + "," + std::to_string(q.m) + ") ratio " + num(q.ratio) +
                " vs n^5 " + num(q.n_pow5, 6) + "; ";
  }
  if (r.ratios.empty()) o.detail = "no admissible (n, m) pair";
  return o;
}

Outcome resubdivision() {
  Outcome o;
  std::size_t checks = 0;
  Dist worst = 0;
  for (std::size_t N = 2; N <= 6; ++N)
    for (std::size_t r = 0; r < kStabilityWalksPerN; ++r) {
      const auto w = sample_free_lattice_walk(2 * N, {kSeed + 6 + N, r});
      const auto coarse = CellDecomposition::for_path(w, 2);
      std::vector<std::vector<Vertex>> sets;
      for (Vertex x = 0; x < N; ++x) sets.push_back({x});
      for (Vertex y0 = 0; y0 < 2 * N; ++y0)
        for (auto& s : frontier_refine_sets(w, coarse, 1, y0)) sets.push_back(std::move(s));
      for (const auto& s : sets) {
        const auto rep = resubdivision_stability_check(w, coarse, s, 1);
        ++checks;
        worst = std::max(worst, rep.max_difference);
        if (!rep.pass) {
          o.pass = false;
          if (o.detail.empty()) o.detail = rep.witness + "; ";
        }
      }
    }
  o.detail += std::to_string(checks) + " refine sets, max distance change " + std::to_string(worst) +
              " (bound 2)";
  return o;
}

Outcome bounds_table() {
  Outcome o;
  double worst = 0;
  for (int i = 1; i <= 100; ++i) {
    const double g = 0.0199 * i;
    const auto b = exponent_bounds(g);
    o.pass = o.pass && b.d_minus <= b.watabiki_d + kBoundsTol && b.watabiki_d <= b.d_plus + kBoundsTol;
    worst = std::max(worst, std::fabs(b.xi_minus - 1 / b.d_plus));
  }
  o.pass = o.pass && worst <= kBoundsTol;
  o.detail = "100 gamma values, max |xi_- - 1/d_+| = " + num(worst);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "adjacency-oracle", 60, adjacency_oracle},
      {2, "boundary-vector-reconstruction", 60, boundary_reconstruction},
      {3, "refinement-sandwich", 60, sandwich},
      {4, "rerooting", 300, rerooting},
      {5, "mullin-layer", 60, mullin_layer},
      {6, "boundary-count-exponent", 600, boundary_count},
      {7, "cut-cell-exponent", 600, cut_cells},
      {8, "cone-probability-exponent", 600, cone},
      {9, "ball-volume-exponent", 1800, ball_volume},
      {10, "chi-bounds", 1800, chi_bounds},
      {11, "submultiplicativity", 1200, submultiplicativity},
      {12, "resubdivision-stability", 300, resubdivision},
      {13, "bounds-table", 1, bounds_table},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = out.pass && in_time;
    failed += !pass;
    std::printf("%s %2d %s: %s [%.1fs of %.0fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
