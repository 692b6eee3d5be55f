#include "mcrt/rerooting.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mcrt/error.hpp"
#include "mcrt/graph_metrics.hpp"
#include "mcrt/parallel.hpp"

namespace mcrt {

namespace {

std::vector<double> reroot_coord(const std::vector<double>& x, std::size_t t) {
  const std::size_t M = x.size() - 1;
  std::vector<double> fwd(M + 1), bwd(M + 1), out(M + 1);
  // fwd[u] = min x[t..u] for u >= t; bwd[u] = min x[u..t] for u <= t
  fwd[t] = bwd[t] = x[t];
  for (std::size_t u = t + 1; u <= M; ++u) fwd[u] = std::min(fwd[u - 1], x[u]);
  for (std::size_t u = t; u-- > 0;) bwd[u] = std::min(bwd[u + 1], x[u]);
  for (std::size_t s = 0; s <= M; ++s) {
    const std::size_t u = M == 0 ? 0 : (s + t) % M;
    const double m = u >= t ? fwd[u] : bwd[u];
    out[s] = (x[t] - m) + (x[u] - m);
  }
  return out;
}

}  // namespace

PathSample reroot_unchecked(const PathSample& path, std::size_t t) {
  if (t > path.steps()) throw Error(ErrorCode::InvalidArgument, "pivot out of range");
  return PathSample(PathKind::Unconditioned, path.dt(), reroot_coord(path.L(), t),
                    reroot_coord(path.R(), t));
}

PathSample reroot(const PathSample& path, std::size_t t) {
  if (path.kind() != PathKind::Excursion && path.kind() != PathKind::LatticeQuadrantBridge)
    throw Error(ErrorCode::UnsupportedKind, "re-rooting needs an excursion");
  if (t > path.steps()) throw Error(ErrorCode::InvalidArgument, "pivot out of range");
  return PathSample(path.kind(), path.dt(), reroot_coord(path.L(), t), reroot_coord(path.R(), t));
}

ShiftReport reroot_graph_shift_check(const PathSample& path, const CellDecomposition& cells,
                                     std::size_t pivot) {
  if (cells.steps() != path.steps())
    throw Error(ErrorCode::Divisibility, "decomposition does not match the path length");
  if (pivot > path.steps() || pivot % cells.cell_size != 0)
    throw Error(ErrorCode::Alignment, "pivot must be a cell boundary");
  const std::size_t N = cells.cell_count;
  const std::size_t p = (pivot / cells.cell_size) % N;
  const auto g = build_graph(path, cells, AdjacencyRule::Continuous);
  const auto h = build_graph(reroot(path, pivot), cells, AdjacencyRule::Continuous);
  auto shift = [&](Vertex v) { return static_cast<Vertex>((v + N - p) % N); };
  std::set<std::pair<Vertex, Vertex>> mapped;
  for (const auto& e : g.edges()) {
    Vertex a = shift(e.u), b = shift(e.v);
    if (a > b) std::swap(a, b);
    mapped.emplace(a, b);
  }
  ShiftReport rep;
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const auto& e : h.edges()) {
    ++rep.edges_checked;
    seen.emplace(e.u, e.v);
    if (rep.pass && !mapped.count({e.u, e.v})) {
      std::ostringstream os;
      os << "edge (" << e.u + 1 << "," << e.v + 1 << ") after re-rooting has no preimage";
      rep.witness = os.str();
      rep.pass = false;
    }
  }
  for (const auto& [a, b] : mapped) {
    if (rep.pass && !seen.count({a, b})) {
      std::ostringstream os;
      os << "shifted edge (" << a + 1 << "," << b + 1 << ") missing after re-rooting";
      rep.witness = os.str();
      rep.pass = false;
    }
  }
  return rep;
}

RerootLawReport reroot_law_test(const GammaParams& params, const RerootLawConfig& cfg) {
  if (params.rho() != 0.0)
    throw Error(ErrorCode::UnsupportedParameter, "re-rooting invariance needs rho = 0");
  if (cfg.replicates < 2 || cfg.cells < 1 || cfg.cell_samples < 1)
    throw Error(ErrorCode::Config, "bad re-rooting test configuration");
  const std::size_t M = cfg.cells * cfg.cell_samples;
  if (cfg.pivot > M) throw Error(ErrorCode::InvalidArgument, "pivot out of range");
  const double dt = 1.0 / static_cast<double>(M);
  CellDecomposition cells{cfg.cell_samples, cfg.cells, cfg.cell_samples * dt};
  auto statistic = [&](const PathSample& p) -> double {
    const auto g = build_graph(p, cells, AdjacencyRule::Continuous);
    if (cfg.statistic == RerootStatistic::RootDegree) return static_cast<double>(g.degree(0));
    if (cfg.statistic == RerootStatistic::MaxDegree) {
      std::size_t m = 0;
      for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) m = std::max(m, g.degree(v));
      return static_cast<double>(m);
    }
    const auto method =
        g.size() <= 8192 ? DiameterMethod::exact() : DiameterMethod::double_sweep(8);
    return static_cast<double>(diameter(g, method));
  };
  RerootLawReport rep;
  rep.base.resize(cfg.replicates);
  rep.rerooted.resize(cfg.replicates);
  parallel_for(cfg.replicates, cfg.jobs, [&](std::size_t r, unsigned) {
    const SeedSpec seed{cfg.master_seed, r};
    const auto exc = sample_path(params, PathKind::Excursion, M, dt, seed);
    rep.base[r] = statistic(exc);
    if (cfg.corrupt) {
      const auto br = sample_path(params, PathKind::Bridge, M, dt, seed);
      rep.rerooted[r] = statistic(reroot_unchecked(br, cfg.pivot));
    } else {
      rep.rerooted[r] = statistic(reroot(exc, cfg.pivot));
    }
  });
  rep.ks = ks_two_sample(rep.base, rep.rerooted);
  return rep;
}

}  // namespace mcrt
