#include "mcrt/mullin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "mcrt/error.hpp"

namespace mcrt {

namespace {

void require_walk(const PathSample& walk) {
  if (walk.kind() != PathKind::LatticeQuadrantBridge)
    throw Error(ErrorCode::Encoding, "expected a quadrant walk");
  if (walk.steps() % 2 != 0) throw Error(ErrorCode::Encoding, "walk length must be even");
}

}  // namespace

PathSample walk_from_string(const std::string& walk) {
  std::vector<double> L{0.0}, R{0.0};
  for (char ch : walk) {
    double dl = 0, dr = 0;
    switch (ch) {
      case 'E': dl = 1; break;
      case 'W': dl = -1; break;
      case 'N': dr = 1; break;
      case 'S': dr = -1; break;
      default: throw Error(ErrorCode::Encoding, std::string("bad step character '") + ch + "'");
    }
    L.push_back(L.back() + dl);
    R.push_back(R.back() + dr);
  }
  if (walk.empty() || walk.size() % 2 != 0)
    throw Error(ErrorCode::Encoding, "walk must have a positive even length");
  try {
    return PathSample(PathKind::LatticeQuadrantBridge, 1.0, std::move(L), std::move(R));
  } catch (const Error&) {
    throw Error(ErrorCode::Encoding, "'" + walk + "' is not a quadrant walk");
  }
}

std::string walk_to_string(const PathSample& walk) {
  require_walk(walk);
  std::string out;
  for (std::size_t i = 0; i < walk.steps(); ++i) {
    const double dl = walk.L()[i + 1] - walk.L()[i];
    const double dr = walk.R()[i + 1] - walk.R()[i];
    out += dl > 0 ? 'E' : dl < 0 ? 'W' : dr > 0 ? 'N' : 'S';
  }
  return out;
}

ContourPair walk_to_trees(const PathSample& walk) {
  require_walk(walk);
  ContourPair p;
  for (std::size_t i = 0; i <= walk.steps(); ++i) {
    p.d.push_back(static_cast<int>(walk.L()[i]));
    p.d_star.push_back(static_cast<int>(walk.R()[i]));
  }
  return p;
}

PathSample trees_to_walk(const ContourPair& pair) {
  const std::size_t len = pair.d.size();
  if (len < 3 || len % 2 == 0 || pair.d_star.size() != len)
    throw Error(ErrorCode::InvalidContour, "contours must both have odd length 2n+1 >= 3");
  if (pair.d.front() != 0 || pair.d.back() != 0 || pair.d_star.front() != 0 ||
      pair.d_star.back() != 0)
    throw Error(ErrorCode::InvalidContour, "contours must start and end at 0");
  std::vector<double> L(len), R(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (pair.d[i] < 0 || pair.d_star[i] < 0)
      throw Error(ErrorCode::InvalidContour, "contours must stay nonnegative");
    if (i > 0) {
      const int a = std::abs(pair.d[i] - pair.d[i - 1]);
      const int b = std::abs(pair.d_star[i] - pair.d_star[i - 1]);
      if (a + b != 1 || a > 1 || b > 1)
        throw Error(ErrorCode::InvalidContour, "exactly one contour must move by 1 per step");
    }
    L[i] = pair.d[i];
    R[i] = pair.d_star[i];
  }
  return PathSample(PathKind::LatticeQuadrantBridge, 1.0, std::move(L), std::move(R));
}

TriangleGraph walk_to_triangle_graph(const PathSample& walk) {
  require_walk(walk);
  const std::size_t n2 = walk.steps();
  std::vector<Edge> edges;
  // triangles i1 < i2 in 1..2n; contour index j runs over [i1, i2-1]
  for (std::size_t i1 = 1; i1 <= n2; ++i1) {
    double mid[2] = {INFINITY, INFINITY};
    for (std::size_t i2 = i1 + 1; i2 <= n2; ++i2) {
      std::uint8_t lab = 0;
      for (int c = 0; c < 2; ++c) {
        const auto& x = walk.coord(c);
        mid[c] = std::min(mid[c], x[i2 - 1]);
        if (i2 > i1 + 1 && std::max(x[i1 - 1], x[i2]) < mid[c])
          lab |= c == 0 ? kLMatch : kRMatch;
      }
      if (i2 == i1 + 1) lab = kConsecutive;
      if (lab)
        edges.push_back({static_cast<Vertex>(i1 - 1), static_cast<Vertex>(i2 - 1), lab});
    }
  }
  return {StructureGraph(n2, std::move(edges))};
}

std::vector<std::string> enumerate_quadrant_walks(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidSize, "n must be at least 1");
  if (n > 4) throw Error(ErrorCode::SizeLimit, "enumeration limited to n <= 4");
  const int len = 2 * n;
  std::vector<std::string> out;
  std::string cur;
  // depth-first in lexicographic order, pruning walks that cannot return
  auto rec = [&](auto&& self, int x, int y) -> void {
    const int left = len - static_cast<int>(cur.size());
    if (left == 0) {
      if (x == 0 && y == 0) out.push_back(cur);
      return;
    }
    for (char ch : {'E', 'N', 'S', 'W'}) {
      int nx = x, ny = y;
      if (ch == 'E') ++nx;
      if (ch == 'W') --nx;
      if (ch == 'N') ++ny;
      if (ch == 'S') --ny;
      if (nx < 0 || ny < 0 || nx + ny > left - 1) continue;
      cur.push_back(ch);
      self(self, nx, ny);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace mcrt
