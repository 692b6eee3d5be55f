#include "mcrt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mcrt/error.hpp"
#include "mcrt/parallel.hpp"
#include "mcrt/peano_features.hpp"
#include "mcrt/rerooting.hpp"

namespace mcrt {

namespace {

constexpr ExperimentKind kAllKinds[] = {
    ExperimentKind::DiameterScaling,     ExperimentKind::FixedPairDistance,
    ExperimentKind::BallVolume,          ExperimentKind::BoundaryCount,
    ExperimentKind::CutCells,            ExperimentKind::ConeProbability,
    ExperimentKind::Submultiplicativity, ExperimentKind::LowerBoundaryDistance,
    ExperimentKind::ThreeArcDistance,    ExperimentKind::RerootInvariance,
};

bool needs_rho_zero(ExperimentKind k) {
  return k == ExperimentKind::LowerBoundaryDistance || k == ExperimentKind::ThreeArcDistance ||
         k == ExperimentKind::RerootInvariance;
}

bool is_dyadic(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::DiameterScaling:
    case ExperimentKind::FixedPairDistance:
    case ExperimentKind::BoundaryCount:
    case ExperimentKind::CutCells:
    case ExperimentKind::Submultiplicativity:
    case ExperimentKind::LowerBoundaryDistance:
    case ExperimentKind::ThreeArcDistance:
      return true;
    default:
      return false;
  }
}

SeedSpec stream(std::uint64_t master, std::size_t scale_index, std::size_t replicate) {
  return {master, (static_cast<std::uint64_t>(scale_index) << 32) + replicate};
}

std::string fmt17(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

const char* experiment_kind_name(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::DiameterScaling: return "DiameterScaling";
    case ExperimentKind::FixedPairDistance: return "FixedPairDistance";
    case ExperimentKind::BallVolume: return "BallVolume";
    case ExperimentKind::BoundaryCount: return "BoundaryCount";
    case ExperimentKind::CutCells: return "CutCells";
    case ExperimentKind::ConeProbability: return "ConeProbability";
    case ExperimentKind::Submultiplicativity: return "Submultiplicativity";
    case ExperimentKind::LowerBoundaryDistance: return "LowerBoundaryDistance";
    case ExperimentKind::ThreeArcDistance: return "ThreeArcDistance";
    case ExperimentKind::RerootInvariance: return "RerootInvariance";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (auto k : kAllKinds)
    if (name == experiment_kind_name(k)) return k;
  throw Error(ErrorCode::Config, "unknown experiment kind '" + name + "'");
}

std::size_t ExperimentConfig::resolved_cell_samples() const {
  if (cell_samples != 0) return cell_samples;
  switch (kind) {
    case ExperimentKind::BoundaryCount: return 16;
    case ExperimentKind::CutCells: return 64;
    case ExperimentKind::RerootInvariance: return 1;
    default: return 4;
  }
}

void ExperimentConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 2.0)) throw Error(ErrorCode::Domain, "gamma must lie in (0,2)");
  if (replicates < 10) throw Error(ErrorCode::Config, "at least 10 replicates are required");
  if (scales.empty()) throw Error(ErrorCode::Config, "scales must be nonempty");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (scales[i] <= 0) throw Error(ErrorCode::Config, "scales must be positive");
    if (i > 0 && scales[i] <= scales[i - 1])
      throw Error(ErrorCode::Config, "scales must be strictly increasing");
  }
  if (is_dyadic(kind) && scales.back() > 24)
    throw Error(ErrorCode::Config, "dyadic levels above 24 are not supported");
  if (needs_rho_zero(kind) && GammaParams::make(gamma).rho() != 0.0)
    throw Error(ErrorCode::UnsupportedParameter,
                std::string(experiment_kind_name(kind)) + " needs gamma = sqrt(2)");
  if (kind == ExperimentKind::ConeProbability && !(delta > 0.0))
    throw Error(ErrorCode::Config, "delta must be positive");
  if (kind == ExperimentKind::ConeProbability && steps_per_unit == 0)
    throw Error(ErrorCode::Config, "steps_per_unit must be positive");
  if (kind == ExperimentKind::BallVolume && window_cells < 4)
    throw Error(ErrorCode::Config, "window too small");
  if (kind == ExperimentKind::Submultiplicativity && m_values.empty())
    throw Error(ErrorCode::Config, "m_values must be nonempty");
  if (kind == ExperimentKind::RerootInvariance && scales.size() != 1)
    throw Error(ErrorCode::Config, "RerootInvariance takes a single cell count");
}

bool ExperimentResult::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

struct Runner {
  const ExperimentConfig& cfg;
  GammaParams params;
  ExperimentResult& out;

  DiameterMethod method_for(std::size_t n) const {
    DiameterMethod m;
    m.kind = cfg.diameter_method;
    m.rounds = cfg.sweep_rounds;
    m.exact_threshold = cfg.exact_threshold;
    m.jobs = 1;
    if (m.kind == DiameterMethod::Exact && n > cfg.exact_threshold) m.kind = DiameterMethod::DoubleSweep;
    return m;
  }

  void add_row(const std::string& kind, double scale, std::span<const double> values) {
    const auto ms = mean_stderr(values);
    out.rows.push_back({kind, cfg.gamma, scale, values.size(), ms.mean, ms.stderr_, cfg.master_seed});
  }

  void fit_rows(std::span<const double> xs) {
    if (out.rows.size() < 3) {
      out.notes.push_back("fewer than 3 scales: no exponent fit");
      return;
    }
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
      if (out.rows[i].mean <= 0) {
        out.notes.push_back("nonpositive mean at scale " + fmt17(out.rows[i].scale) +
                            " excluded from fit");
        continue;
      }
      pts.emplace_back(xs[i], out.rows[i].mean);
    }
    if (pts.size() >= 3) out.fit = fit_loglog(pts);
  }

  void window_check(const std::string& name, double lo, double hi) {
    CheckResult c{name, false, ""};
    if (out.fit) {
      c.pass = out.fit->slope >= lo && out.fit->slope <= hi;
      c.detail = "slope " + fmt17(out.fit->slope) + " in [" + fmt17(lo) + ", " + fmt17(hi) + "]";
    } else {
      c.detail = "no fit";
    }
    out.checks.push_back(c);
  }

  // Coupled dyadic design: one path per replicate at the finest level;
  // coarser graphs group its samples. f(graph, level, path, cells) -> value.
  template <class F>
  std::vector<std::vector<double>> coupled(const std::vector<long>& levels, F&& f) {
    const std::size_t K = cfg.resolved_cell_samples();
    const long top = levels.back();
    const std::size_t M = (std::size_t{1} << top) * K;
    const double dt = 1.0 / static_cast<double>(M);
    std::vector<std::vector<double>> vals(levels.size(), std::vector<double>(cfg.replicates));
    parallel_for(cfg.replicates, cfg.jobs, [&](std::size_t r, unsigned) {
      const auto path = sample_path(params, PathKind::Unconditioned, M, dt, stream(cfg.master_seed, 0, r));
      for (std::size_t i = 0; i < levels.size(); ++i) {
        const std::size_t N = std::size_t{1} << levels[i];
        const CellDecomposition cells{M / N, N, 1.0 / static_cast<double>(N)};
        const auto g = build_graph(path, cells, AdjacencyRule::Continuous);
        vals[i][r] = f(g, levels[i], path, cells);
      }
    });
    return vals;
  }

  // Independent path per level, K samples per cell at every level.
  template <class F>
  std::vector<std::vector<double>> independent(F&& f) {
    const std::size_t K = cfg.resolved_cell_samples();
    std::vector<std::vector<double>> vals(cfg.scales.size(), std::vector<double>(cfg.replicates));
    for (std::size_t i = 0; i < cfg.scales.size(); ++i) {
      const std::size_t N = std::size_t{1} << cfg.scales[i];
      const std::size_t M = N * K;
      const double dt = 1.0 / static_cast<double>(M);
      const CellDecomposition cells{K, N, 1.0 / static_cast<double>(N)};
      parallel_for(cfg.replicates, cfg.jobs, [&](std::size_t r, unsigned) {
        const auto path = sample_path(params, PathKind::Unconditioned, M, dt, stream(cfg.master_seed, i, r));
        vals[i][r] = f(path, cells);
      });
    }
    return vals;
  }

  std::vector<double> dyadic_x() const {
    std::vector<double> xs;
    for (long n : cfg.scales) xs.push_back(std::ldexp(1.0, static_cast<int>(n)));
    return xs;
  }

  void diameter_scaling() {
    const auto vals = coupled(cfg.scales, [&](const StructureGraph& g, long n, const PathSample&,
                                              const CellDecomposition&) {
      return static_cast<double>(diameter(g, method_for(std::size_t{1} << n)));
    });
    for (std::size_t i = 0; i < cfg.scales.size(); ++i)
      add_row(experiment_kind_name(cfg.kind), static_cast<double>(cfg.scales[i]), vals[i]);
    std::size_t violations = 0;
    for (std::size_t r = 0; r < cfg.replicates; ++r)
      for (std::size_t i = 1; i < cfg.scales.size(); ++i)
        if (vals[i][r] < vals[i - 1][r]) ++violations;
    const bool all_exact = cfg.diameter_method == DiameterMethod::Exact &&
                           (std::size_t{1} << cfg.scales.back()) <= cfg.exact_threshold;
    if (all_exact) {
      out.checks.push_back({"coupled-monotonicity", violations == 0,
                            std::to_string(violations) + " decreases of D_n along single paths"});
    } else {
      out.notes.push_back("heuristic diameters in use: " + std::to_string(violations) +
                          " monotonicity violations (lower bounds only)");
    }
    fit_rows(dyadic_x());
    window_check("chi-window", out.bounds.chi_lower - 0.1, 0.55);
  }

  void fixed_pair() {
    const auto vals = coupled(cfg.scales, [&](const StructureGraph& g, long, const PathSample&,
                                              const CellDecomposition&) {
      const Vertex src = 0;
      Bfs bfs(g.size());
      bfs.run(g, src);
      return static_cast<double>(bfs.dist()[g.size() - 1]);
    });
    for (std::size_t i = 0; i < cfg.scales.size(); ++i)
      add_row(experiment_kind_name(cfg.kind), static_cast<double>(cfg.scales[i]), vals[i]);
    fit_rows(dyadic_x());
    window_check("chi-window", out.bounds.chi_lower - 0.1, 0.55);
  }

  void ball_volume() {
    const std::size_t W = cfg.window_cells, K = cfg.resolved_cell_samples();
    const auto R = static_cast<Dist>(cfg.scales.back());
    std::vector<std::vector<double>> vals(cfg.scales.size(), std::vector<double>(cfg.replicates));
    std::vector<char> truncated(cfg.replicates, 0);
    parallel_for(cfg.replicates, cfg.jobs, [&](std::size_t r, unsigned) {
      // cells (-W/2, W/2] of unit mass; vertex W/2 - 1 is the cell [-1, 0]
      const auto path = sample_path(params, PathKind::Unconditioned, W * K,
                                    1.0 / static_cast<double>(K), stream(cfg.master_seed, 0, r));
      const CellDecomposition cells{K, W, 1.0};
      const auto g = build_graph(path, cells, AdjacencyRule::Continuous);
      const auto root = static_cast<Vertex>(W / 2 - 1);
      Bfs bfs(g.size());
      bfs.run(g, root, R);
      const auto& d = bfs.dist();
      if (d[0] != kUnreachable || d[W - 1] != kUnreachable) truncated[r] = 1;
      std::vector<std::size_t> counts(static_cast<std::size_t>(R) + 1, 0);
      for (Vertex v : bfs.visited()) ++counts[static_cast<std::size_t>(d[v])];
      for (std::size_t k = 1; k < counts.size(); ++k) counts[k] += counts[k - 1];
      for (std::size_t i = 0; i < cfg.scales.size(); ++i)
        vals[i][r] = static_cast<double>(counts[static_cast<std::size_t>(cfg.scales[i])]);
    });
    std::vector<double> xs;
    for (std::size_t i = 0; i < cfg.scales.size(); ++i) {
      add_row(experiment_kind_name(cfg.kind), static_cast<double>(cfg.scales[i]), vals[i]);
      xs.push_back(static_cast<double>(cfg.scales[i]));
    }
    const auto nt = static_cast<std::size_t>(std::count(truncated.begin(), truncated.end(), 1));
    out.notes.push_back(std::to_string(nt) + " of " + std::to_string(cfg.replicates) +
                        " balls reached the window edge");
    fit_rows(xs);
    window_check("volume-window", out.bounds.d_minus - 0.5, out.bounds.d_plus + 0.5);
    if (std::fabs(cfg.gamma - std::sqrt(8.0 / 3.0)) < 1e-3) window_check("volume-window-8/3", 3.0, 5.0);
  }

  void boundary_count() {
    const auto vals = independent([&](const PathSample& p, const CellDecomposition& c) {
      return static_cast<double>(boundary_cell_count(p, c));
    });
    for (std::size_t i = 0; i < cfg.scales.size(); ++i)
      add_row(experiment_kind_name(cfg.kind), static_cast<double>(cfg.scales[i]), vals[i]);
    fit_rows(dyadic_x());
    window_check("boundary-window", 0.4, 0.6);
  }

  void cut_cells() {
    const auto vals = independent([&](const PathSample& p, const CellDecomposition& c) {
      return static_cast<double>(simultaneous_running_min_cells(p, c));
    });
    for (std::size_t i = 0; i < cfg.scales.size(); ++i)
      add_row(experiment_kind_name(cfg.kind), static_cast<double>(cfg.scales[i]), vals[i]);
    fit_rows(dyadic_x());
    const double target = std::max(0.0, 1.0 - 2.0 / (cfg.gamma * cfg.gamma));
    if (target < 1e-9)
      window_check("cut-window", -1e300, 0.1);
    else
      window_check("cut-window", target - 0.15, target + 0.15);
  }

  void cone() {
    const double spu = static_cast<double>(cfg.steps_per_unit);
    std::vector<std::size_t> horizon;
    for (long T : cfg.scales) horizon.push_back(static_cast<std::size_t>(T) * cfg.steps_per_unit);
    const std::size_t M = horizon.back();
    std::vector<std::vector<double>> vals(cfg.scales.size(), std::vector<double>(cfg.replicates));
    parallel_for(cfg.replicates, cfg.jobs, [&](std::size_t r, unsigned) {
      const auto path = sample_path(params, PathKind::Unconditioned, M, 1.0 / spu, stream(cfg.master_seed, 0, r));
      for (std::size_t i = 0; i < horizon.size(); ++i)
        vals[i][r] = quadrant_stay_indicator(path, cfg.delta, cfg.delta, horizon[i]) ? 1.0 : 0.0;
    });
    std::vector<double> xs;
    for (std::size_t i = 0; i < cfg.scales.size(); ++i) {
      add_row(experiment_kind_name(cfg.kind), static_cast<double>(cfg.scales[i]), vals[i]);
      xs.push_back(static_cast<double>(cfg.scales[i]));
    }
    fit_rows(xs);
    const double target = -2.0 / (cfg.gamma * cfg.gamma);
    window_check("cone-window", target - 0.15, target + 0.15);
  }

  void submultiplicativity() {
    std::vector<std::pair<long, long>> pairs;
    std::set<long> need;
    for (long n : cfg.scales)
      for (long m : cfg.m_values)
        if (std::pow(static_cast<double>(n), 2.0 / 3.0) <= static_cast<double>(m)) {
          pairs.emplace_back(n, m);
          need.insert(n);
          need.insert(m);
          need.insert(n + m);
        }
    if (pairs.empty()) throw Error(ErrorCode::Config, "no (n, m) pair satisfies n^(2/3) <= m");
    const std::vector<long> levels(need.begin(), need.end());
    if (levels.back() > 24) throw Error(ErrorCode::Config, "n + m too large");
    const auto vals = coupled(levels, [&](const StructureGraph& g, long n, const PathSample&,
                                          const CellDecomposition&) {
      return static_cast<double>(diameter(g, method_for(std::size_t{1} << n)));
    });
    std::map<long, double> mean;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      add_row(experiment_kind_name(cfg.kind), static_cast<double>(levels[i]), vals[i]);
      mean[levels[i]] = out.rows.back().mean;
    }
    bool all = true;
    for (const auto& [n, m] : pairs) {
      RatioRow row;
      row.n = n;
      row.m = m;
      row.d_nm = mean[n + m];
      row.d_n = mean[n];
      row.d_m = mean[m];
      row.ratio = row.d_nm / (row.d_n * row.d_m);
      row.n_pow5 = std::pow(static_cast<double>(n), 5.0);
      row.holds = row.ratio <= row.n_pow5;
      all = all && row.holds;
      out.ratios.push_back(row);
    }
    out.checks.push_back({"submultiplicativity", all,
                          std::to_string(pairs.size()) + " (n, m) pairs compared with C = 1"});
  }

  void boundary_distance(bool three_arc) {
    const auto vals = coupled(cfg.scales, [&](const StructureGraph& g, long, const PathSample& p,
                                              const CellDecomposition& c) {
      const auto bs = boundary_sets(p, c, 0, static_cast<Vertex>(c.cell_count - 1));
      std::vector<Vertex> target = bs.lower_left;
      target.insert(target.end(), bs.lower_right.begin(), bs.lower_right.end());
      if (three_arc) target.insert(target.end(), bs.upper_left.begin(), bs.upper_left.end());
      Bfs bfs(g.size());
      const Dist ecc = bfs.run(g, target);
      if (three_arc) return static_cast<double>(ecc);
      return static_cast<double>(bfs.dist()[g.size() - 1]);
    });
    for (std::size_t i = 0; i < cfg.scales.size(); ++i)
      add_row(experiment_kind_name(cfg.kind), static_cast<double>(cfg.scales[i]), vals[i]);
    fit_rows(dyadic_x());
    double chi = out.bounds.chi_lower;
    if (cfg.chi_hat) {
      chi = *cfg.chi_hat;
    } else if (out.fit) {
      chi = out.fit->slope;
    }
    out.notes.push_back("normalization exponent " + fmt17(chi));
    const double scale = std::ldexp(1.0, static_cast<int>(cfg.scales.back()));
    std::size_t hits = 0;
    for (double v : vals.back()) {
      out.normalized.push_back(v / std::pow(scale, chi));
      if (out.normalized.back() >= cfg.frequency_threshold) ++hits;
    }
    out.checks.push_back({"positive-frequency", hits > 0,
                          std::to_string(hits) + " of " + std::to_string(vals.back().size()) +
                              " normalized values >= " + fmt17(cfg.frequency_threshold)});
  }

  void reroot_invariance() {
    RerootLawConfig rc;
    rc.cells = static_cast<std::size_t>(cfg.scales[0]);
    rc.cell_samples = cfg.resolved_cell_samples();
    rc.replicates = cfg.replicates;
    rc.pivot = rc.cells * rc.cell_samples / 2;
    rc.statistic = RerootStatistic::MaxDegree;
    rc.master_seed = cfg.master_seed;
    rc.jobs = cfg.jobs;
    const auto rep = reroot_law_test(params, rc);
    const std::string k = experiment_kind_name(cfg.kind);
    add_row(k + "/base", static_cast<double>(rc.cells), rep.base);
    add_row(k + "/rerooted", static_cast<double>(rc.cells), rep.rerooted);
    out.ks = rep.ks;
    out.checks.push_back({"ks-null", rep.ks.p_value > 0.01, "p = " + fmt17(rep.ks.p_value)});
  }
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult out;
  out.config = config;
  out.bounds = exponent_bounds(config.gamma);
  Runner run{config, GammaParams::make(config.gamma), out};
  switch (config.kind) {
    case ExperimentKind::DiameterScaling: run.diameter_scaling(); break;
    case ExperimentKind::FixedPairDistance: run.fixed_pair(); break;
    case ExperimentKind::BallVolume: run.ball_volume(); break;
    case ExperimentKind::BoundaryCount: run.boundary_count(); break;
    case ExperimentKind::CutCells: run.cut_cells(); break;
    case ExperimentKind::ConeProbability: run.cone(); break;
    case ExperimentKind::Submultiplicativity: run.submultiplicativity(); break;
    case ExperimentKind::LowerBoundaryDistance: run.boundary_distance(false); break;
    case ExperimentKind::ThreeArcDistance: run.boundary_distance(true); break;
    case ExperimentKind::RerootInvariance: run.reroot_invariance(); break;
  }
  return out;
}

void write_csv(std::ostream& os, const ExperimentResult& r) {
  os << "kind,gamma,scale,replicates,mean,stderr,seed\n";
  os << std::setprecision(17);
  for (const auto& row : r.rows)
    os << row.kind << ',' << row.gamma << ',' << row.scale << ',' << row.replicates << ','
       << row.mean << ',' << row.stderr_ << ',' << row.seed << '\n';
}

void write_plot(std::ostream& os, const ExperimentResult& r) {
  os << "# " << experiment_kind_name(r.config.kind) << " gamma=" << fmt17(r.config.gamma) << '\n';
  os << "# scale mean stderr\n" << std::setprecision(17);
  for (const auto& row : r.rows) os << row.scale << ' ' << row.mean << ' ' << row.stderr_ << '\n';
}

void write_json(std::ostream& os, const ExperimentResult& r) {
  using nlohmann::json;
  json j;
  const auto& c = r.config;
  j["kind"] = experiment_kind_name(c.kind);
  j["gamma"] = c.gamma;
  j["config"] = {{"scales", c.scales},
                 {"replicates", c.replicates},
                 {"seed", c.master_seed},
                 {"diameter_method", c.diameter_method == DiameterMethod::Exact ? "exact" : "double_sweep"},
                 {"cell_samples", c.resolved_cell_samples()}};
  j["bounds"] = {{"gamma", r.bounds.gamma},         {"watabiki_d", r.bounds.watabiki_d},
                 {"d_minus", r.bounds.d_minus},     {"d_plus", r.bounds.d_plus},
                 {"xi_minus", r.bounds.xi_minus},   {"chi_lower", r.bounds.chi_lower},
                 {"chi_upper", r.bounds.chi_upper}};
  j["rows"] = json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"kind", row.kind},
                         {"scale", row.scale},
                         {"replicates", row.replicates},
                         {"mean", row.mean},
                         {"stderr", row.stderr_}});
  if (r.fit)
    j["fit"] = {{"slope", r.fit->slope},
                {"intercept", r.fit->intercept},
                {"slope_stderr", r.fit->slope_stderr},
                {"n_points", r.fit->n_points},
                {"r_squared", r.fit->r_squared}};
  if (!r.ratios.empty()) {
    j["ratios"] = json::array();
    for (const auto& q : r.ratios)
      j["ratios"].push_back({{"n", q.n},
                             {"m", q.m},
                             {"mean_d_n_plus_m", q.d_nm},
                             {"mean_d_n", q.d_n},
                             {"mean_d_m", q.d_m},
                             {"ratio", q.ratio},
                             {"n_pow5", q.n_pow5},
                             {"holds", q.holds}});
  }
  if (r.ks) j["ks"] = {{"statistic", r.ks->statistic}, {"p_value", r.ks->p_value}};
  if (!r.normalized.empty()) j["normalized"] = r.normalized;
  j["checks"] = json::array();
  for (const auto& ch : r.checks)
    j["checks"].push_back({{"name", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
  j["notes"] = r.notes;
  j["pass"] = r.all_checks_pass();
  os << j.dump(2) << '\n';
}

}  // namespace mcrt
