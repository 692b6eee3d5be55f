#include "mcrt/mated_graph.hpp"

#include <algorithm>
#include <ostream>

#include "mcrt/error.hpp"

namespace mcrt {

CellDecomposition CellDecomposition::for_path(const PathSample& path, std::size_t K) {
  if (K == 0) throw Error(ErrorCode::InvalidArgument, "cell size must be positive");
  const std::size_t M = path.steps();
  if (M == 0 || M % K != 0)
    throw Error(ErrorCode::Divisibility, "cell size must divide the step count");
  return {K, M / K, static_cast<double>(K) * path.dt()};
}

CellDecomposition refine_cells(const CellDecomposition& cells, std::size_t factor) {
  if (factor == 0 || cells.cell_size % factor != 0)
    throw Error(ErrorCode::Divisibility, "refinement factor must divide the cell size");
  CellDecomposition out = cells;
  out.cell_size = cells.cell_size / factor;
  out.cell_count = cells.cell_count * factor;
  out.time_per_cell = cells.time_per_cell / static_cast<double>(factor);
  return out;
}

BoundaryLengthVector boundary_vector(const PathSample& path, std::size_t a, std::size_t b) {
  if (a >= b || b > path.steps()) throw Error(ErrorCode::InvalidInterval, "need 0 <= a < b <= M");
  const auto& L = path.L();
  const auto& R = path.R();
  const double ml = *std::min_element(L.begin() + a, L.begin() + b + 1);
  const double mr = *std::min_element(R.begin() + a, R.begin() + b + 1);
  return {L[a] - ml, L[b] - ml, R[a] - mr, R[b] - mr};
}

BoundaryLengthVector combine_boundary_vectors(std::span<const BoundaryLengthVector> parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "no parts to combine");
  // Track each coordinate relative to its value at the left end.
  double lmin = -parts[0].dl_lower, lcur = parts[0].dl_upper - parts[0].dl_lower;
  double rmin = -parts[0].dr_lower, rcur = parts[0].dr_upper - parts[0].dr_lower;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    lmin = std::min(lmin, lcur - parts[i].dl_lower);
    rmin = std::min(rmin, rcur - parts[i].dr_lower);
    lcur += parts[i].dl_upper - parts[i].dl_lower;
    rcur += parts[i].dr_upper - parts[i].dr_lower;
  }
  return {-lmin, lcur - lmin, -rmin, rcur - rmin};
}

StructureGraph::StructureGraph(std::size_t n, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v || e.v >= n) throw Error(ErrorCode::InvalidArgument, "bad edge endpoint");
  }
  {
    // bucket by u, then sort the (short) buckets by v
    std::vector<std::size_t> start(n + 1, 0);
    for (const auto& e : edges) ++start[e.u + 1];
    for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];
    std::vector<Edge> sorted(edges.size());
    std::vector<std::size_t> pos(start.begin(), start.end() - 1);
    for (const auto& e : edges) sorted[pos[e.u]++] = e;
    for (std::size_t i = 0; i < n; ++i)
      std::sort(sorted.begin() + start[i], sorted.begin() + start[i + 1],
                [](const Edge& a, const Edge& b) { return a.v < b.v; });
    edges.swap(sorted);
  }
  std::size_t w = 0;
  for (std::size_t r = 0; r < edges.size(); ++r) {
    if (w > 0 && edges[w - 1].u == edges[r].u && edges[w - 1].v == edges[r].v) {
      edges[w - 1].label |= edges[r].label;
    } else {
      edges[w++] = edges[r];
    }
  }
  edges.resize(w);
  offsets_.assign(n + 1, 0);
  for (const auto& e : edges) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  targets_.resize(2 * edges.size());
  labels_.resize(2 * edges.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // sorted edge order keeps every neighbor list sorted
  for (const auto& e : edges) {
    targets_[fill[e.u]] = e.v;
    labels_[fill[e.u]++] = e.label;
    targets_[fill[e.v]] = e.u;
    labels_[fill[e.v]++] = e.label;
  }
}

std::uint8_t StructureGraph::label(Vertex u, Vertex v) const {
  if (u >= size() || v >= size()) return 0;
  const auto nb = neighbors(u);
  const auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return 0;
  return labels_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
}

bool StructureGraph::adjacent(Vertex u, Vertex v) const { return label(u, v) != 0; }

std::vector<Edge> StructureGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < size(); ++u) {
    const auto nb = neighbors(u);
    const auto lb = labels(u);
    for (std::size_t k = 0; k < nb.size(); ++k)
      if (nb[k] > u) out.push_back({u, nb[k], lb[k]});
  }
  return out;
}

void sweep_continuous(std::span<const double> m, std::uint8_t label, std::vector<Edge>& out) {
  // Stack of non-strict suffix minima of m[0..j-1], non-decreasing upward.
  std::vector<Vertex> st;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (st.size() >= 2) {
      for (std::size_t k = st.size() - 1; k-- > 0;) {
        if (m[j] <= m[st[k + 1]])
          out.push_back({st[k], static_cast<Vertex>(j), label});
        else
          break;
      }
    }
    while (!st.empty() && m[st.back()] > m[j]) st.pop_back();
    st.push_back(static_cast<Vertex>(j));
  }
}

void sweep_lattice(std::span<const double> c, std::uint8_t label, std::vector<Edge>& out) {
  // Pair (l, r) of boundary indices, r >= l + 2, joins cells l and r-1 when
  // max(c[l], c[r]) < min c[l+1..r-1]. Stack holds strict suffix minima.
  std::vector<std::size_t> st;
  for (std::size_t r = 0; r < c.size(); ++r) {
    if (st.size() >= 2) {
      for (std::size_t k = st.size() - 1; k-- > 0;) {
        if (c[r] < c[st[k + 1]])
          out.push_back({static_cast<Vertex>(st[k]), static_cast<Vertex>(r - 1), label});
        else
          break;
      }
    }
    while (!st.empty() && c[st.back()] >= c[r]) st.pop_back();
    st.push_back(r);
  }
}

namespace {

void add_consecutive(std::size_t n, std::vector<Edge>& out) {
  for (std::size_t i = 0; i + 1 < n; ++i)
    out.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1), kConsecutive});
}

// Drops sweep edges between consecutive cells; those carry only kConsecutive.
void drop_consecutive_matches(std::vector<Edge>& edges, std::size_t keep_from) {
  std::size_t w = keep_from;
  for (std::size_t r = keep_from; r < edges.size(); ++r) {
    const Edge& e = edges[r];
    const Vertex lo = std::min(e.u, e.v), hi = std::max(e.u, e.v);
    if (hi == lo + 1) continue;
    edges[w++] = e;
  }
  edges.resize(w);
}

StructureGraph graph_from_minima(const std::vector<double>& ml, const std::vector<double>& mr) {
  const std::size_t n = ml.size();
  std::vector<Edge> edges;
  edges.reserve(4 * n);
  sweep_continuous(ml, kLMatch, edges);
  sweep_continuous(mr, kRMatch, edges);
  add_consecutive(n, edges);
  return StructureGraph(n, std::move(edges));
}

StructureGraph graph_from_values(const std::vector<double>& cl, const std::vector<double>& cr) {
  const std::size_t n = cl.size() - 1;
  std::vector<Edge> edges;
  edges.reserve(4 * n);
  sweep_lattice(cl, kLMatch, edges);
  sweep_lattice(cr, kRMatch, edges);
  drop_consecutive_matches(edges, 0);
  add_consecutive(n, edges);
  return StructureGraph(n, std::move(edges));
}

void partition_minima(const PathSample& path, const std::vector<std::size_t>& b,
                      std::vector<double>& ml, std::vector<double>& mr) {
  const std::size_t n = b.size() - 1;
  ml.resize(n);
  mr.resize(n);
  const auto& L = path.L();
  const auto& R = path.R();
  for (std::size_t k = 0; k < n; ++k) {
    double a = L[b[k]], c = R[b[k]];
    for (std::size_t t = b[k] + 1; t <= b[k + 1]; ++t) {
      a = std::min(a, L[t]);
      c = std::min(c, R[t]);
    }
    ml[k] = a;
    mr[k] = c;
  }
}

void check_breakpoints(const PathSample& path, const std::vector<std::size_t>& b) {
  if (b.size() < 2 || b.front() != 0 || b.back() != path.steps())
    throw Error(ErrorCode::InvalidArgument, "breakpoints must run from 0 to M");
  for (std::size_t k = 0; k + 1 < b.size(); ++k)
    if (b[k] >= b[k + 1]) throw Error(ErrorCode::InvalidArgument, "breakpoints must increase");
}

}  // namespace

std::vector<std::size_t> uniform_breakpoints(const CellDecomposition& cells) {
  std::vector<std::size_t> b(cells.cell_count + 1);
  for (std::size_t k = 0; k <= cells.cell_count; ++k) b[k] = k * cells.cell_size;
  return b;
}

StructureGraph build_graph(const PathSample& path, const CellDecomposition& cells,
                           AdjacencyRule rule) {
  if (cells.steps() != path.steps())
    throw Error(ErrorCode::Divisibility, "decomposition does not match the path length");
  if (rule == AdjacencyRule::Lattice) {
    if (path.kind() != PathKind::LatticeQuadrantBridge || cells.cell_size != 1)
      throw Error(ErrorCode::ModeMismatch, "lattice rule needs a quadrant walk with unit cells");
    return graph_from_values(path.L(), path.R());
  }
  std::vector<double> ml, mr;
  partition_minima(path, uniform_breakpoints(cells), ml, mr);
  return graph_from_minima(ml, mr);
}

StructureGraph build_partition_graph(const PathSample& path,
                                     const std::vector<std::size_t>& breakpoints) {
  check_breakpoints(path, breakpoints);
  std::vector<double> ml, mr;
  partition_minima(path, breakpoints, ml, mr);
  return graph_from_minima(ml, mr);
}

PartitionPredicate::PartitionPredicate(const PathSample& path, std::vector<std::size_t> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  check_breakpoints(path, breakpoints_);
  rmq_[0] = RangeMin(path.L());
  rmq_[1] = RangeMin(path.R());
}

std::uint8_t PartitionPredicate::evaluate(Vertex i, Vertex j) const {
  if (i > j) std::swap(i, j);
  if (i == j) return 0;
  if (j == i + 1) return kConsecutive;
  std::uint8_t out = 0;
  const auto& b = breakpoints_;
  for (int c = 0; c < 2; ++c) {
    const double mi = rmq_[c].query(b[i], b[i + 1]);
    const double mj = rmq_[c].query(b[j], b[j + 1]);
    const double mid = rmq_[c].query(b[i + 1], b[j]);
    if (std::max(mi, mj) <= mid) out |= (c == 0 ? kLMatch : kRMatch);
  }
  return out;
}

StructureGraph PartitionPredicate::all_pairs() const {
  std::vector<Edge> edges;
  const std::size_t n = size();
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (auto lab = evaluate(i, j)) edges.push_back({i, j, lab});
  return StructureGraph(n, std::move(edges));
}

std::vector<Vertex> BoundarySets::all() const {
  std::vector<Vertex> out;
  for (const auto* s : {&lower_left, &lower_right, &upper_left, &upper_right})
    out.insert(out.end(), s->begin(), s->end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Cells in [lo, hi] whose closed sample range holds a marked time.
std::vector<Vertex> cells_of_times(const std::vector<std::size_t>& times, std::size_t K, Vertex lo,
                                   Vertex hi) {
  std::vector<Vertex> out;
  for (std::size_t t : times) {
    const std::size_t v = t / K;
    if (t % K == 0 && v >= 1 && v - 1 >= lo && v - 1 <= hi) out.push_back(static_cast<Vertex>(v - 1));
    if (v >= lo && v <= hi) out.push_back(static_cast<Vertex>(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

BoundarySets boundary_sets(const PathSample& path, const CellDecomposition& cells, Vertex lo,
                           Vertex hi) {
  if (lo > hi || hi >= cells.cell_count)
    throw Error(ErrorCode::InvalidInterval, "need lo <= hi < N");
  if (cells.steps() != path.steps())
    throw Error(ErrorCode::Divisibility, "decomposition does not match the path length");
  const std::size_t K = cells.cell_size;
  const std::size_t a = lo * K, b = (hi + 1) * K;
  BoundarySets out;
  for (int c = 0; c < 2; ++c) {
    const auto& x = path.coord(c);
    std::vector<std::size_t> fwd, bwd;
    double run = x[a];
    for (std::size_t t = a; t <= b; ++t)
      if (x[t] <= run) {
        run = x[t];
        fwd.push_back(t);
      }
    run = x[b];
    for (std::size_t t = b + 1; t-- > a;)
      if (x[t] <= run) {
        run = x[t];
        bwd.push_back(t);
      }
    (c == 0 ? out.lower_left : out.lower_right) = cells_of_times(fwd, K, lo, hi);
    (c == 0 ? out.upper_left : out.upper_right) = cells_of_times(bwd, K, lo, hi);
  }
  return out;
}

std::vector<BoundaryLengthVector> cell_boundary_vectors(const PathSample& path,
                                                        const CellDecomposition& cells) {
  if (cells.steps() != path.steps())
    throw Error(ErrorCode::Divisibility, "decomposition does not match the path length");
  std::vector<BoundaryLengthVector> out(cells.cell_count);
  for (Vertex v = 0; v < cells.cell_count; ++v)
    out[v] = boundary_vector(path, cells.first_sample(v), cells.last_sample(v));
  return out;
}

StructureGraph graph_from_boundary_vectors(std::span<const BoundaryLengthVector> deltas,
                                           AdjacencyRule rule) {
  if (deltas.empty()) throw Error(ErrorCode::InvalidArgument, "no boundary vectors");
  for (const auto& d : deltas)
    if (!(d.dl_lower >= 0 && d.dl_upper >= 0 && d.dr_lower >= 0 && d.dr_upper >= 0))
      throw Error(ErrorCode::InvalidDelta, "boundary vector components must be nonnegative");
  const std::size_t n = deltas.size();
  // cell boundary values v_0 = 0, v_k = v_{k-1} + upper - lower; cell min = v_{k-1} - lower
  std::vector<double> vl(n + 1, 0.0), vr(n + 1, 0.0), ml(n), mr(n);
  for (std::size_t k = 0; k < n; ++k) {
    ml[k] = vl[k] - deltas[k].dl_lower;
    mr[k] = vr[k] - deltas[k].dr_lower;
    vl[k + 1] = vl[k] + (deltas[k].dl_upper - deltas[k].dl_lower);
    vr[k + 1] = vr[k] + (deltas[k].dr_upper - deltas[k].dr_lower);
  }
  if (rule == AdjacencyRule::Lattice) return graph_from_values(vl, vr);
  return graph_from_minima(ml, mr);
}

std::string edge_label_string(std::uint8_t label) {
  std::string s;
  if (label & kConsecutive) s += 'C';
  if (label & kLMatch) s += 'L';
  if (label & kRMatch) s += 'R';
  return s;
}

void write_edge_list(std::ostream& os, const StructureGraph& g) {
  for (const auto& e : g.edges())
    os << (e.u + 1) << ' ' << (e.v + 1) << ' ' << edge_label_string(e.label) << '\n';
}

}  // namespace mcrt
