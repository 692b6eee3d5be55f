#include "mcrt/paths.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "mcrt/error.hpp"

namespace mcrt {

GammaParams GammaParams::make(double gamma, double alpha_scale) {
  if (!(gamma > 0.0 && gamma < 2.0)) throw Error(ErrorCode::Domain, "gamma must lie in (0,2)");
  if (!(alpha_scale > 0.0)) throw Error(ErrorCode::Domain, "alpha_scale must be positive");
  GammaParams p;
  p.gamma = gamma;
  p.alpha_scale = alpha_scale;
  return p;
}

double GammaParams::rho() const {
  const double g2 = gamma * gamma;
  // sqrt(2)^2 is not exactly 2 in binary; snap so gamma = sqrt(2) means rho = 0
  if (std::fabs(g2 - 2.0) < 1e-12) return 0.0;
  return -std::cos(std::numbers::pi * g2 / 4.0);
}

const char* path_kind_name(PathKind kind) noexcept {
  switch (kind) {
    case PathKind::Unconditioned: return "unconditioned";
    case PathKind::Bridge: return "bridge";
    case PathKind::Excursion: return "excursion";
    case PathKind::Meander: return "meander";
    case PathKind::LatticeQuadrantBridge: return "lattice";
  }
  return "?";
}

PathKind parse_path_kind(const std::string& name) {
  for (auto k : {PathKind::Unconditioned, PathKind::Bridge, PathKind::Excursion, PathKind::Meander,
                 PathKind::LatticeQuadrantBridge}) {
    if (name == path_kind_name(k)) return k;
  }
  throw Error(ErrorCode::UnsupportedKind, "unknown path kind '" + name + "'");
}

namespace {

bool nonnegative(const std::vector<double>& v) {
  for (double x : v)
    if (x < 0.0) return false;
  return true;
}

}  // namespace

PathSample::PathSample(PathKind kind, double dt, std::vector<double> L, std::vector<double> R)
    : kind_(kind), dt_(dt), L_(std::move(L)), R_(std::move(R)) {
  if (!(dt_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (L_.empty() || L_.size() != R_.size())
    throw Error(ErrorCode::InvalidSize, "L and R must have equal nonzero length");
  if (L_[0] != 0.0 || R_[0] != 0.0)
    throw Error(ErrorCode::InvalidArgument, "path must start at the origin");
  const std::size_t M = L_.size() - 1;
  switch (kind_) {
    case PathKind::Unconditioned:
    case PathKind::Bridge:
      break;
    case PathKind::Excursion:
      if (L_[M] != 0.0 || R_[M] != 0.0 || !nonnegative(L_) || !nonnegative(R_))
        throw Error(ErrorCode::InvalidArgument, "excursion must be nonnegative with zero endpoints");
      break;
    case PathKind::Meander:
      if (!nonnegative(L_) || !nonnegative(R_))
        throw Error(ErrorCode::InvalidArgument, "meander must be nonnegative");
      break;
    case PathKind::LatticeQuadrantBridge:
      if (L_[M] != 0.0 || R_[M] != 0.0 || !nonnegative(L_) || !nonnegative(R_))
        throw Error(ErrorCode::Encoding, "quadrant walk must stay nonnegative and end at 0");
      for (std::size_t i = 0; i < M; ++i) {
        const double a = std::fabs(L_[i + 1] - L_[i]);
        const double b = std::fabs(R_[i + 1] - R_[i]);
        if (!((a == 1.0 && b == 0.0) || (a == 0.0 && b == 1.0)))
          throw Error(ErrorCode::Encoding, "each lattice step must move one coordinate by 1");
      }
      break;
  }
}

namespace {

void correlated_walk(Rng& rng, double rho, double sd, std::size_t M, std::vector<double>& L,
                     std::vector<double>& R) {
  L.assign(M + 1, 0.0);
  R.assign(M + 1, 0.0);
  const double c = std::sqrt(1.0 - rho * rho);
  for (std::size_t k = 0; k < M; ++k) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    L[k + 1] = L[k] + sd * z1;
    R[k + 1] = R[k] + sd * (rho * z1 + c * z2);
  }
}

void bridge_in_place(std::vector<double>& x) {
  const std::size_t M = x.size() - 1;
  const double end = x[M];
  for (std::size_t k = 0; k <= M; ++k)
    x[k] -= end * static_cast<double>(k) / static_cast<double>(M);
  x[M] = 0.0;
}

std::vector<double> gaussian_walk(Rng& rng, double sd, std::size_t M) {
  std::vector<double> x(M + 1, 0.0);
  for (std::size_t k = 0; k < M; ++k) x[k + 1] = x[k] + sd * rng.normal();
  return x;
}

// Vervaat: rotate the bridge cyclically so that its earliest minimum comes first.
std::vector<double> vervaat(const std::vector<double>& b) {
  const std::size_t M = b.size() - 1;
  std::size_t k = 0;
  for (std::size_t i = 1; i < M; ++i)
    if (b[i] < b[k]) k = i;
  std::vector<double> e(M + 1);
  for (std::size_t s = 0; s < M; ++s) e[s] = b[(k + s) % M] - b[k];
  e[M] = 0.0;
  return e;
}

// Meander from the piece of a long walk after its last zero, rescaled.
std::vector<double> meander(Rng& rng, double sd, std::size_t M) {
  const std::size_t big = 4 * M;
  for (;;) {
    const std::vector<double> w = gaussian_walk(rng, 1.0, big);
    double gstar = 0.0;
    for (std::size_t i = big; i-- > 0;) {
      if (w[i] == 0.0) {
        gstar = static_cast<double>(i);
        break;
      }
      if ((w[i] < 0.0) != (w[i + 1] < 0.0)) {
        gstar = static_cast<double>(i) + w[i] / (w[i] - w[i + 1]);
        break;
      }
    }
    const double remain = static_cast<double>(big) - gstar;
    if (remain < static_cast<double>(M)) continue;
    const double scale = sd * std::sqrt(static_cast<double>(M) / remain);
    std::vector<double> out(M + 1, 0.0);
    for (std::size_t s = 1; s <= M; ++s) {
      const double t = gstar + remain * static_cast<double>(s) / static_cast<double>(M);
      auto i = static_cast<std::size_t>(t);
      if (i >= big) i = big - 1;
      const double f = t - static_cast<double>(i);
      out[s] = scale * std::fabs(w[i] + f * (w[i + 1] - w[i]));
    }
    return out;
  }
}

}  // namespace

PathSample sample_path(const GammaParams& params, PathKind kind, std::size_t M, double dt,
                       SeedSpec seed) {
  if (M == 0) throw Error(ErrorCode::InvalidSize, "M must be at least 1");
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  const double rho = params.rho();
  const double sd = std::sqrt(params.alpha_scale * dt);
  Rng rng(derive_replicate_seed(seed));
  std::vector<double> L, R;
  switch (kind) {
    case PathKind::Unconditioned:
      correlated_walk(rng, rho, sd, M, L, R);
      break;
    case PathKind::Bridge:
      correlated_walk(rng, rho, sd, M, L, R);
      bridge_in_place(L);
      bridge_in_place(R);
      break;
    case PathKind::Excursion:
    case PathKind::Meander: {
      if (rho != 0.0)
        throw Error(ErrorCode::UnsupportedKind,
                    "excursion and meander samplers need independent coordinates (rho = 0)");
      if (kind == PathKind::Excursion) {
        std::vector<double> bl = gaussian_walk(rng, sd, M);
        std::vector<double> br = gaussian_walk(rng, sd, M);
        bridge_in_place(bl);
        bridge_in_place(br);
        L = vervaat(bl);
        R = vervaat(br);
      } else {
        L = meander(rng, sd, M);
        R = meander(rng, sd, M);
      }
      break;
    }
    case PathKind::LatticeQuadrantBridge:
      throw Error(ErrorCode::UnsupportedKind, "use sample_lattice_walk for lattice paths");
  }
  return PathSample(kind, dt, std::move(L), std::move(R));
}

std::uint64_t quadrant_walk_count(std::size_t n) {
  // C_n * C_{n+1}, via exact incremental Catalan numbers
  std::uint64_t c = 1;  // C_0
  std::uint64_t cn = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k == n) cn = c;
    c = c * 2 * (2 * k + 1) / (k + 2);
  }
  return cn * c;
}

namespace {

// Step table in lexicographic order E < N < S < W.
constexpr std::array<std::array<int, 2>, 4> kSteps{{{1, 0}, {0, 1}, {0, -1}, {-1, 0}}};

PathSample walk_from_moves(const std::vector<int>& moves) {
  std::vector<double> L(moves.size() + 1, 0.0), R(moves.size() + 1, 0.0);
  for (std::size_t i = 0; i < moves.size(); ++i) {
    L[i + 1] = L[i] + kSteps[moves[i]][0];
    R[i + 1] = R[i] + kSteps[moves[i]][1];
  }
  return PathSample(PathKind::LatticeQuadrantBridge, 1.0, std::move(L), std::move(R));
}

}  // namespace

PathSample sample_lattice_walk(std::size_t n, SeedSpec seed, LatticeMethod method) {
  if (n == 0) throw Error(ErrorCode::InvalidSize, "n must be at least 1");
  const std::size_t M = 2 * n;
  Rng rng(derive_replicate_seed(seed));
  std::vector<int> moves(M);
  if (method == LatticeMethod::Exhaustive) {
    if (M > 12) throw Error(ErrorCode::SizeLimit, "exhaustive lattice walks need 2n <= 12");
    // ways[r][x][y]: quadrant walks of r steps from (x,y) to the origin
    const std::size_t H = n + 1;
    std::vector<std::uint64_t> ways((M + 1) * H * H, 0);
    auto at = [&](std::size_t r, std::size_t x, std::size_t y) -> std::uint64_t& {
      return ways[(r * H + x) * H + y];
    };
    at(0, 0, 0) = 1;
    for (std::size_t r = 1; r <= M; ++r)
      for (std::size_t x = 0; x < H; ++x)
        for (std::size_t y = 0; y < H; ++y)
          for (const auto& s : kSteps) {
            const long nx = static_cast<long>(x) + s[0], ny = static_cast<long>(y) + s[1];
            if (nx < 0 || ny < 0 || nx >= static_cast<long>(H) || ny >= static_cast<long>(H))
              continue;
            at(r, x, y) += at(r - 1, static_cast<std::size_t>(nx), static_cast<std::size_t>(ny));
          }
    std::uint64_t index = derive_replicate_seed(seed) % at(M, 0, 0);
    long x = 0, y = 0;
    for (std::size_t i = 0; i < M; ++i) {
      const std::size_t r = M - i - 1;
      for (int d = 0; d < 4; ++d) {
        const long nx = x + kSteps[d][0], ny = y + kSteps[d][1];
        if (nx < 0 || ny < 0 || nx >= static_cast<long>(H) || ny >= static_cast<long>(H)) continue;
        const std::uint64_t w = at(r, static_cast<std::size_t>(nx), static_cast<std::size_t>(ny));
        if (index < w) {
          moves[i] = d;
          x = nx;
          y = ny;
          break;
        }
        index -= w;
      }
    }
    return walk_from_moves(moves);
  }
  constexpr std::uint64_t kMaxAttempts = 10'000'000;
  for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    long x = 0, y = 0;
    bool ok = true;
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < M && ok; ++i) {
      if (i % 32 == 0) bits = rng.next_u64();
      const int d = static_cast<int>(bits & 3u);
      bits >>= 2;
      moves[i] = d;
      x += kSteps[d][0];
      y += kSteps[d][1];
      // abort as soon as the walk leaves the quadrant or cannot return in time
      const long left = static_cast<long>(M - i - 1);
      if (x < 0 || y < 0 || x + y > left) ok = false;
    }
    if (ok && x == 0 && y == 0) return walk_from_moves(moves);
  }
  throw Error(ErrorCode::SizeLimit, "lattice rejection sampler exceeded 1e7 attempts");
}

PathSample sample_free_lattice_walk(std::size_t steps, SeedSpec seed) {
  if (steps == 0) throw Error(ErrorCode::InvalidSize, "steps must be at least 1");
  Rng rng(derive_replicate_seed(seed));
  std::vector<double> L(steps + 1, 0.0), R(steps + 1, 0.0);
  for (std::size_t i = 0; i < steps; ++i) {
    const auto d = static_cast<std::size_t>(rng.below(4));
    L[i + 1] = L[i] + kSteps[d][0];
    R[i + 1] = R[i] + kSteps[d][1];
  }
  return PathSample(PathKind::Unconditioned, 1.0, std::move(L), std::move(R));
}

}  // namespace mcrt
