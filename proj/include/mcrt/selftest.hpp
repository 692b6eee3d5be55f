#ifndef MCRT_SELFTEST_HPP
#define MCRT_SELFTEST_HPP

#include <cstdint>
#include <vector>

#include "mcrt/experiments.hpp"

namespace mcrt {

/// Golden value of derive_replicate_seed({0, 0}); also stored in
/// tests/data/seed_vectors.txt.
inline constexpr std::uint64_t kSeedGolden00 = 0xe220a8397b1dcdafULL;

/// Deterministic invariant checks of every module at small sizes.
std::vector<CheckResult> run_selftest(std::uint64_t seed = 1, unsigned jobs = 0);

}  // namespace mcrt

#endif  // MCRT_SELFTEST_HPP
