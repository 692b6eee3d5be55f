#ifndef MCRT_STATS_HPP
#define MCRT_STATS_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mcrt {

struct ExponentFit {
  double slope = 0, intercept = 0, slope_stderr = 0;
  std::size_t n_points = 0;
  double r_squared = 0;
};

/// OLS of ln y on ln x. Needs >= 3 points with x, y > 0 (Domain), and at
/// least two distinct x (Rank).
ExponentFit fit_loglog(std::span<const std::pair<double, double>> points);

struct MeanStderr {
  double mean = 0, stderr_ = 0;
};

/// Sequential mean and standard error of the mean (n-1 variance).
MeanStderr mean_stderr(std::span<const double> xs);

struct KsResult {
  double statistic = 0;
  double p_value = 1;
};

/// Two-sample Kolmogorov-Smirnov with the asymptotic Kolmogorov p-value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

}  // namespace mcrt

#endif  // MCRT_STATS_HPP
