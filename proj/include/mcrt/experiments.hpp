#ifndef MCRT_EXPERIMENTS_HPP
#define MCRT_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mcrt/bounds.hpp"
#include "mcrt/graph_metrics.hpp"
#include "mcrt/paths.hpp"
#include "mcrt/stats.hpp"

namespace mcrt {

enum class ExperimentKind {
  DiameterScaling,
  FixedPairDistance,
  BallVolume,
  BoundaryCount,
  CutCells,
  ConeProbability,
  Submultiplicativity,
  LowerBoundaryDistance,
  ThreeArcDistance,
  RerootInvariance,
};

const char* experiment_kind_name(ExperimentKind kind) noexcept;
ExperimentKind parse_experiment_kind(const std::string& name);

/// Meaning of `scales` per kind:
///   DiameterScaling, FixedPairDistance, BoundaryCount, CutCells,
///   LowerBoundaryDistance, ThreeArcDistance: dyadic level n (2^n cells on (0,1]);
///   Submultiplicativity: the levels n of the (n, m) pairs;
///   BallVolume: radii; ConeProbability: horizons T; RerootInvariance: cell count N.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::DiameterScaling;
  double gamma = 1.4142135623730951;
  std::vector<long> scales;
  std::size_t replicates = 100;
  std::uint64_t master_seed = 1;
  DiameterMethod::Kind diameter_method = DiameterMethod::Exact;
  int sweep_rounds = 8;
  std::size_t exact_threshold = 8192;
  /// Samples per cell (at the finest level for coupled designs); 0 = kind default.
  std::size_t cell_samples = 0;
  std::size_t window_cells = 2'000'000;  // BallVolume
  double delta = 1.0;                    // ConeProbability
  std::size_t steps_per_unit = 64;       // ConeProbability
  std::vector<long> m_values{2, 3, 4};   // Submultiplicativity
  std::optional<double> chi_hat;         // boundary-distance normalization
  double frequency_threshold = 0.5;      // boundary-distance positive-frequency level
  unsigned jobs = 0;

  /// Throws Config / Domain / UnsupportedParameter on invalid settings.
  void validate() const;
  std::size_t resolved_cell_samples() const;
};

struct ResultRow {
  std::string kind;
  double gamma = 0;
  double scale = 0;
  std::size_t replicates = 0;
  double mean = 0;
  double stderr_ = 0;
  std::uint64_t seed = 0;
};

struct RatioRow {
  long n = 0, m = 0;
  double d_nm = 0, d_n = 0, d_m = 0;
  double ratio = 0;     // d_nm / (d_n d_m)
  double n_pow5 = 0;
  bool holds = false;   // ratio <= n^5
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExperimentResult {
  ExperimentConfig config;
  BoundsTable bounds;
  std::vector<ResultRow> rows;
  std::optional<ExponentFit> fit;
  std::vector<RatioRow> ratios;
  std::optional<KsResult> ks;
  /// Boundary-distance kinds: per-replicate values at the largest scale,
  /// divided by 2^(n chi_hat).
  std::vector<double> normalized;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  bool all_checks_pass() const;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Header: kind,gamma,scale,replicates,mean,stderr,seed. 17 significant digits.
void write_csv(std::ostream& os, const ExperimentResult& r);
void write_json(std::ostream& os, const ExperimentResult& r);
/// Two columns "scale mean" plus a stderr column, '#'-comment header.
void write_plot(std::ostream& os, const ExperimentResult& r);

}  // namespace mcrt

#endif  // MCRT_EXPERIMENTS_HPP
