#include "mcrt/graph_metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "mcrt/error.hpp"
#include "mcrt/parallel.hpp"

namespace mcrt {

void Bfs::reset(std::size_t n) {
  if (dist_.size() != n) {
    dist_.assign(n, kUnreachable);
  } else {
    for (Vertex v : queue_) dist_[v] = kUnreachable;
  }
  queue_.clear();
}

Dist Bfs::run(const StructureGraph& g, Vertex src, Dist max_depth) {
  return run(g, std::span<const Vertex>(&src, 1), max_depth);
}

Dist Bfs::run(const StructureGraph& g, std::span<const Vertex> srcs, Dist max_depth) {
  reset(g.size());
  for (Vertex s : srcs) {
    if (dist_[s] != 0) {
      dist_[s] = 0;
      queue_.push_back(s);
    }
  }
  Dist ecc = 0;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const Vertex u = queue_[head];
    const Dist du = dist_[u];
    ecc = du;
    if (du >= max_depth) continue;
    for (Vertex w : g.neighbors(u)) {
      if (dist_[w] == kUnreachable) {
        dist_[w] = du + 1;
        queue_.push_back(w);
      }
    }
  }
  return ecc;
}

DistanceField sssp(const StructureGraph& g, std::span<const Vertex> sources) {
  if (sources.empty()) throw Error(ErrorCode::InvalidArgument, "empty source set");
  for (Vertex s : sources)
    if (s >= g.size()) throw Error(ErrorCode::InvalidArgument, "source out of range");
  Bfs bfs(g.size());
  bfs.run(g, sources);
  return {std::vector<Vertex>(sources.begin(), sources.end()), bfs.dist()};
}

Dist diameter(const StructureGraph& g, const DiameterMethod& method) {
  const std::size_t n = g.size();
  if (n <= 1) return 0;
  if (method.kind == DiameterMethod::Exact) {
    if (n > method.exact_threshold)
      throw Error(ErrorCode::SizeLimit, "graph exceeds the exact-diameter threshold");
    const unsigned jobs = std::min<unsigned>(resolve_jobs(method.jobs), 64);
    std::vector<Bfs> scratch(jobs, Bfs(n));
    std::vector<Dist> ecc(n, 0);
    parallel_for(n, jobs, [&](std::size_t s, unsigned w) {
      ecc[s] = scratch[w].run(g, static_cast<Vertex>(s));
    });
    return *std::max_element(ecc.begin(), ecc.end());
  }
  Bfs bfs(n);
  Vertex start = 0;
  Dist best = 0;
  for (int r = 0; r < std::max(1, method.rounds); ++r) {
    const Dist e = bfs.run(g, start);
    best = std::max(best, e);
    const auto& d = bfs.dist();
    Vertex far = start;
    for (Vertex v = 0; v < n; ++v)
      if (d[v] != kUnreachable && d[v] > d[far]) far = v;
    start = far;
  }
  return best;
}

std::size_t ball_size(const StructureGraph& g, Vertex center, Dist radius) {
  if (center >= g.size()) throw Error(ErrorCode::InvalidArgument, "center out of range");
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "negative radius");
  Bfs bfs(g.size());
  bfs.run(g, center, radius);
  return bfs.visited().size();
}

std::vector<std::size_t> ball_profile(const StructureGraph& g, Vertex center, Dist max_radius) {
  if (center >= g.size()) throw Error(ErrorCode::InvalidArgument, "center out of range");
  if (max_radius < 0) throw Error(ErrorCode::InvalidArgument, "negative radius");
  Bfs bfs(g.size());
  bfs.run(g, center, max_radius);
  std::vector<std::size_t> counts(static_cast<std::size_t>(max_radius) + 1, 0);
  for (Vertex v : bfs.visited()) ++counts[static_cast<std::size_t>(bfs.dist()[v])];
  for (std::size_t r = 1; r < counts.size(); ++r) counts[r] += counts[r - 1];
  return counts;
}

std::vector<Dist> all_pairs_distances(const StructureGraph& g, unsigned jobs) {
  const std::size_t n = g.size();
  std::vector<Dist> out(n * n);
  jobs = std::min<unsigned>(resolve_jobs(jobs), 64);
  std::vector<Bfs> scratch(jobs, Bfs(n));
  parallel_for(n, jobs, [&](std::size_t s, unsigned w) {
    scratch[w].run(g, static_cast<Vertex>(s));
    std::copy(scratch[w].dist().begin(), scratch[w].dist().end(), out.begin() + s * n);
  });
  return out;
}

std::vector<std::pair<Vertex, Vertex>> all_vertex_pairs(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(n * (n + 1) / 2);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i; j < n; ++j) out.emplace_back(i, j);
  return out;
}

SandwichReport refinement_sandwich_check(const StructureGraph& coarse, const StructureGraph& fine,
                                         std::span<const std::pair<Vertex, Vertex>> pairs) {
  const std::size_t nc = coarse.size(), nf = fine.size();
  if (nf != 2 * nc) throw Error(ErrorCode::InvalidArgument, "fine graph must have 2N vertices");
  SandwichReport rep;
  const auto dc = all_pairs_distances(coarse);
  const auto df = all_pairs_distances(fine);
  rep.diam_coarse = *std::max_element(dc.begin(), dc.end());
  rep.diam_fine = *std::max_element(df.begin(), df.end());
  auto fail = [&](const std::string& msg) {
    if (rep.pass) rep.witness = msg;
    rep.pass = false;
  };
  if (rep.diam_fine < rep.diam_coarse) {
    rep.diameter_pass = false;
    fail("diameter decreased under refinement");
  }
  for (const auto& [x0, x1] : pairs) {
    if (x0 >= nc || x1 >= nc) throw Error(ErrorCode::InvalidArgument, "pair out of range");
    const Dist c = dc[x0 * nc + x1];
    for (int a = 0; a < 2; ++a) {
      Dist best = kUnreachable;
      for (int b = 0; b < 2; ++b) {
        const Vertex y0 = 2 * x0 + a, y1 = 2 * x1 + b;
        if (x0 == x1 && y0 != y1) continue;
        const Dist f = df[y0 * nf + y1];
        best = std::min(best, f);
        ++rep.comparisons;
        if (f < c) rep.lower_pass = false;
        if (f > 2 * c) {
          ++rep.upper_violations;
          rep.max_excess = std::max(rep.max_excess, f - 2 * c);
        }
        if (f > 2 * c + 1) rep.plus_one_pass = false;
        if (f < c || f > 2 * c) {
          std::ostringstream os;
          os << "coarse (" << x0 + 1 << "," << x1 + 1 << ") dist " << c << " vs fine (" << y0 + 1
             << "," << y1 + 1 << ") dist " << f;
          fail(os.str());
        }
      }
      if (best > 2 * c) rep.exists_pass = false;
    }
  }
  return rep;
}

BlockDiameterReport dyadic_block_check(const PathSample& path, const CellDecomposition& cells) {
  const auto g = build_graph(path, cells, AdjacencyRule::Continuous);
  BlockDiameterReport rep;
  rep.whole = diameter(g, DiameterMethod::exact());
  std::size_t start = 0;
  const std::size_t N = cells.cell_count, K = cells.cell_size;
  for (int bit = std::bit_width(N) - 1; bit >= 0; --bit) {
    const std::size_t len = std::size_t{1} << bit;
    if (!(N & len)) continue;
    std::vector<double> L(path.L().begin() + start * K, path.L().begin() + (start + len) * K + 1);
    std::vector<double> R(path.R().begin() + start * K, path.R().begin() + (start + len) * K + 1);
    const double l0 = L[0], r0 = R[0];
    for (auto& v : L) v -= l0;
    for (auto& v : R) v -= r0;
    PathSample piece(PathKind::Unconditioned, path.dt(), std::move(L), std::move(R));
    const auto gb = build_graph(piece, CellDecomposition::for_path(piece, K), AdjacencyRule::Continuous);
    rep.block_sum += diameter(gb, DiameterMethod::exact());
    ++rep.blocks;
    start += len;
  }
  rep.pass = rep.whole <= rep.block_sum + static_cast<Dist>(rep.blocks) - 1;
  return rep;
}

namespace {

constexpr int kStepL[4] = {1, 0, 0, -1};
constexpr int kStepR[4] = {0, 1, -1, 0};

void require_unit_steps(const PathSample& path) {
  for (std::size_t i = 0; i < path.steps(); ++i) {
    const double a = std::fabs(path.L()[i + 1] - path.L()[i]);
    const double b = std::fabs(path.R()[i + 1] - path.R()[i]);
    if (!((a == 1.0 && b == 0.0) || (a == 0.0 && b == 1.0)))
      throw Error(ErrorCode::InvalidArgument, "path must move one coordinate by 1 per step");
  }
}

// Step sequences of `len` unit steps starting at (l0, r0) whose boundary
// vector equals `target`.
std::vector<std::vector<int>> compatible_subpaths(std::size_t len, const BoundaryLengthVector& target) {
  std::vector<std::vector<int>> out;
  std::vector<int> seq(len, 0);
  const std::size_t total = std::size_t{1} << (2 * len);
  for (std::size_t code = 0; code < total; ++code) {
    double l = 0, r = 0, ml = 0, mr = 0;
    for (std::size_t i = 0; i < len; ++i) {
      seq[i] = static_cast<int>((code >> (2 * i)) & 3u);
      l += kStepL[seq[i]];
      r += kStepR[seq[i]];
      ml = std::min(ml, l);
      mr = std::min(mr, r);
    }
    const BoundaryLengthVector d{-ml, l - ml, -mr, r - mr};
    if (d == target) out.push_back(seq);
  }
  return out;
}

}  // namespace

StabilityReport resubdivision_stability_check(const PathSample& path, const CellDecomposition& coarse,
                                              std::span<const Vertex> refine_set, int m,
                                              std::span<const std::pair<Vertex, Vertex>> endpoints,
                                              std::size_t budget) {
  if (m < 0 || m > 20) throw Error(ErrorCode::InvalidArgument, "m out of range");
  if (coarse.steps() != path.steps())
    throw Error(ErrorCode::Divisibility, "decomposition does not match the path length");
  const std::size_t split = std::size_t{1} << m;
  const CellDecomposition fine = refine_cells(coarse, split);
  require_unit_steps(path);
  const std::size_t Kc = coarse.cell_size;
  if (!refine_set.empty() && Kc > 8)
    throw Error(ErrorCode::SizeLimit, "coarse cells too long to enumerate sub-paths");

  std::vector<Vertex> cellset(refine_set.begin(), refine_set.end());
  std::sort(cellset.begin(), cellset.end());
  cellset.erase(std::unique(cellset.begin(), cellset.end()), cellset.end());
  std::vector<std::vector<std::vector<int>>> options;
  std::size_t combos = 1;
  for (Vertex x : cellset) {
    if (x >= coarse.cell_count) throw Error(ErrorCode::InvalidArgument, "refine cell out of range");
    options.push_back(compatible_subpaths(
        Kc, boundary_vector(path, coarse.first_sample(x), coarse.last_sample(x))));
    combos *= options.back().size();
    if (combos > budget) throw Error(ErrorCode::SizeLimit, "enumeration budget exceeded");
  }

  const std::size_t nf = fine.cell_count;
  std::vector<std::pair<Vertex, Vertex>> pairs(endpoints.begin(), endpoints.end());
  if (pairs.empty()) pairs = all_vertex_pairs(nf);
  std::vector<Vertex> sources;
  for (const auto& p : pairs) {
    if (p.first >= nf || p.second >= nf) throw Error(ErrorCode::InvalidArgument, "endpoint out of range");
    sources.push_back(p.first);
  }
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());

  std::vector<Dist> lo(pairs.size(), kUnreachable), hi(pairs.size(), 0);
  std::vector<std::size_t> pick(cellset.size(), 0);
  std::vector<double> L = path.L(), R = path.R();
  const auto breaks = uniform_breakpoints(fine);
  Bfs bfs(nf);
  std::vector<Dist> dist_by_source(sources.size() * nf);
  StabilityReport rep;
  rep.bound = static_cast<Dist>(split);
  for (std::size_t c = 0; c < combos; ++c) {
    for (std::size_t k = 0; k < cellset.size(); ++k) {
      const auto& seq = options[k][pick[k]];
      const std::size_t a = coarse.first_sample(cellset[k]);
      for (std::size_t i = 0; i < Kc; ++i) {
        L[a + i + 1] = L[a + i] + kStepL[seq[i]];
        R[a + i + 1] = R[a + i] + kStepR[seq[i]];
      }
    }
    const PathSample variant(PathKind::Unconditioned, path.dt(), L, R);
    const auto g = build_partition_graph(variant, breaks);
    for (std::size_t s = 0; s < sources.size(); ++s) {
      bfs.run(g, sources[s]);
      std::copy(bfs.dist().begin(), bfs.dist().end(), dist_by_source.begin() + s * nf);
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const std::size_t s = static_cast<std::size_t>(
          std::lower_bound(sources.begin(), sources.end(), pairs[p].first) - sources.begin());
      const Dist d = dist_by_source[s * nf + pairs[p].second];
      lo[p] = std::min(lo[p], d);
      hi[p] = std::max(hi[p], d);
    }
    ++rep.combinations;
    for (std::size_t k = 0; k < pick.size(); ++k) {
      if (++pick[k] < options[k].size()) break;
      pick[k] = 0;
    }
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const Dist diff = hi[p] - lo[p];
    if (diff > rep.max_difference) {
      rep.max_difference = diff;
      std::ostringstream os;
      os << "fine pair (" << pairs[p].first + 1 << "," << pairs[p].second + 1 << ") ranges over ["
         << lo[p] << "," << hi[p] << "]";
      rep.witness = os.str();
    }
  }
  rep.pass = rep.max_difference <= rep.bound;
  return rep;
}

std::vector<std::vector<Vertex>> frontier_refine_sets(const PathSample& path,
                                                      const CellDecomposition& coarse, int m,
                                                      Vertex y0) {
  const std::size_t split = std::size_t{1} << m;
  const CellDecomposition fine = refine_cells(coarse, split);
  if (y0 >= fine.cell_count) throw Error(ErrorCode::InvalidArgument, "y0 out of range");
  const std::size_t N = coarse.cell_count;
  std::vector<char> refined(N, 0);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> next{static_cast<Vertex>(y0 / split)};
  for (;;) {
    for (Vertex x : next) refined[x] = 1;
    out.push_back(next);
    if (std::all_of(refined.begin(), refined.end(), [](char c) { return c != 0; })) break;
    // hybrid partition: refined coarse cells are split, the others kept whole
    std::vector<std::size_t> breaks{0};
    std::vector<Vertex> coarse_of;  // hybrid vertex -> coarse cell, for unrefined ones
    std::vector<char> is_coarse;
    Vertex hy0 = 0;
    for (Vertex x = 0; x < N; ++x) {
      if (refined[x]) {
        for (std::size_t p = 0; p < split; ++p) {
          if (x * split + p == y0) hy0 = static_cast<Vertex>(coarse_of.size());
          breaks.push_back(coarse.first_sample(x) + (p + 1) * fine.cell_size);
          coarse_of.push_back(x);
          is_coarse.push_back(0);
        }
      } else {
        breaks.push_back(coarse.last_sample(x));
        coarse_of.push_back(x);
        is_coarse.push_back(1);
      }
    }
    const auto g = build_partition_graph(path, breaks);
    const auto field = sssp(g, std::span<const Vertex>(&hy0, 1));
    Dist best = kUnreachable;
    for (std::size_t v = 0; v < coarse_of.size(); ++v)
      if (is_coarse[v]) best = std::min(best, field.dist[v]);
    next.clear();
    for (std::size_t v = 0; v < coarse_of.size(); ++v)
      if (is_coarse[v] && field.dist[v] == best) next.push_back(coarse_of[v]);
  }
  return out;
}

}  // namespace mcrt
