#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ccon {

double mean(std::span<const double> values);
double median(std::span<const double> values);

/// One-sided sign test of median > 0: P(Bin(n, 1/2) >= #positive), where
/// n counts the nonzero values. 1 when every value is zero.
double sign_test_greater(std::span<const double> values);

/// One-sided Wilcoxon signed-rank test of median > 0, normal approximation
/// with tie and continuity corrections. Zeros are dropped.
double wilcoxon_greater(std::span<const double> values);

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::size_t> counts;  // equal-width bins; values == hi land in the last bin
};

/// Values outside [lo, hi] are clamped into the end bins.
Histogram histogram(std::span<const double> values, int bins, double lo, double hi);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

}  // namespace ccon
