#include "mcrt/rng.hpp"
#include "mcrt/error.hpp"

#include <cmath>

namespace mcrt {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSize: return "invalid-size";
    case ErrorCode::UnsupportedKind: return "unsupported-kind";
    case ErrorCode::UnsupportedParameter: return "unsupported-parameter";
    case ErrorCode::InvalidInterval: return "invalid-interval";
    case ErrorCode::ModeMismatch: return "mode-mismatch";
    case ErrorCode::InvalidDelta: return "invalid-delta";
    case ErrorCode::Divisibility: return "divisibility";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::SizeLimit: return "size-limit";
    case ErrorCode::Alignment: return "alignment";
    case ErrorCode::NotFound: return "not-found";
    case ErrorCode::Encoding: return "encoding";
    case ErrorCode::InvalidContour: return "invalid-contour";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Rank: return "rank";
    case ErrorCode::Config: return "config";
  }
  return "unknown";
}

std::uint64_t Rng::below(std::uint64_t bound) noexcept {
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

}  // namespace mcrt
