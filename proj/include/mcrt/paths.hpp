#ifndef MCRT_PATHS_HPP
#define MCRT_PATHS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mcrt/rng.hpp"

namespace mcrt {

/// Correlation parameters of the two-coordinate Brownian motion.
struct GammaParams {
  double gamma = 1.4142135623730951;
  double alpha_scale = 1.0;

  /// Throws Domain unless gamma in (0,2) and alpha_scale > 0.
  static GammaParams make(double gamma, double alpha_scale = 1.0);

  /// -cos(pi gamma^2 / 4); returns exactly 0 when gamma^2 == 2.
  double rho() const;
  double kappa() const { return 16.0 / (gamma * gamma); }
};

enum class PathKind { Unconditioned, Bridge, Excursion, Meander, LatticeQuadrantBridge };

const char* path_kind_name(PathKind kind) noexcept;
PathKind parse_path_kind(const std::string& name);

/// A discretized two-coordinate path. Immutable once built; the
/// constructor enforces the invariants of the kind tag.
class PathSample {
public:
  PathSample(PathKind kind, double dt, std::vector<double> L, std::vector<double> R);

  PathKind kind() const noexcept { return kind_; }
  double dt() const noexcept { return dt_; }
  /// Number of steps M (samples are 0..M).
  std::size_t steps() const noexcept { return L_.size() - 1; }
  const std::vector<double>& L() const noexcept { return L_; }
  const std::vector<double>& R() const noexcept { return R_; }
  const std::vector<double>& coord(int c) const noexcept { return c == 0 ? L_ : R_; }

  bool operator==(const PathSample& o) const = default;

private:
  PathKind kind_;
  double dt_;
  std::vector<double> L_;
  std::vector<double> R_;
};

/// Sample a path with M steps of length dt.
PathSample sample_path(const GammaParams& params, PathKind kind, std::size_t M, double dt,
                       SeedSpec seed);

enum class LatticeMethod { Rejection, Exhaustive };

/// Uniform (Rejection) or indexed (Exhaustive, index = seed mod |D_n|)
/// quadrant walk with 2n unit steps, as a LatticeQuadrantBridge path.
PathSample sample_lattice_walk(std::size_t n, SeedSpec seed, LatticeMethod method);

/// Simple lattice walk (one coordinate moves by +-1 per step, no quadrant
/// constraint), tagged Unconditioned. Used for small exhaustive checks.
PathSample sample_free_lattice_walk(std::size_t steps, SeedSpec seed);

/// Number of quadrant walks of 2n steps, C_n C_{n+1}. Exact for n <= 30.
std::uint64_t quadrant_walk_count(std::size_t n);

}  // namespace mcrt

#endif  // MCRT_PATHS_HPP
