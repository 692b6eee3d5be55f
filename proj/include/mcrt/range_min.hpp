#ifndef MCRT_RANGE_MIN_HPP
#define MCRT_RANGE_MIN_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <vector>

namespace mcrt {

/// Sparse table for O(1) range-minimum queries over a static array.
/// O(n log n) space.
class RangeMin {
public:
  RangeMin() = default;
  explicit RangeMin(const std::vector<double>& values) {
    const std::size_t n = values.size();
    table_.push_back(values);
    for (std::size_t w = 1; 2 * w <= n; w *= 2) {
      const std::vector<double>& prev = table_.back();
      std::vector<double> next(n - 2 * w + 1);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::min(prev[i], prev[i + w]);
      table_.push_back(std::move(next));
    }
  }

  /// Minimum over the inclusive index range [lo, hi]; lo <= hi.
  double query(std::size_t lo, std::size_t hi) const {
    const std::size_t len = hi - lo + 1;
    const auto k = static_cast<std::size_t>(std::bit_width(len) - 1);
    return std::min(table_[k][lo], table_[k][hi + 1 - (std::size_t{1} << k)]);
  }

  std::size_t size() const { return table_.empty() ? 0 : table_[0].size(); }

private:
  std::vector<std::vector<double>> table_;
};

}  // namespace mcrt

#endif  // MCRT_RANGE_MIN_HPP
