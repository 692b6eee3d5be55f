#ifndef MCRT_RNG_HPP
#define MCRT_RNG_HPP

#include <cstdint>

namespace mcrt {

/// SplitMix64 output function applied to x + golden gamma.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t replicate_index = 0;
};

/// Deterministic per-replicate seed. Frozen: changing this breaks every
/// stored golden value.
constexpr std::uint64_t derive_replicate_seed(SeedSpec spec) noexcept {
  return mix64(spec.master_seed ^ (spec.replicate_index * 0xd1b54a32d192ed03ULL));
}

/// Counter-based generator: the k-th draw is mix64(seed + k * golden),
/// i.e. the plain SplitMix64 sequence. No platform-dependent
/// distributions are used anywhere, so streams are bit-reproducible.
class Rng {
public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), bound > 0. Lemire's method with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Standard normal (Marsaglia polar method, second value cached).
  double normal() noexcept;

private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mcrt

#endif  // MCRT_RNG_HPP
