#include "ccon/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccon {

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double median(std::span<const double> values) {
  if (values.empty()) return 0.0;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  return sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
}

double sign_test_greater(std::span<const double> values) {
  std::size_t n = 0;
  std::size_t positive = 0;
  for (const double v : values) {
    if (v == 0.0) continue;
    ++n;
    if (v > 0.0) ++positive;
  }
  if (n == 0) return 1.0;
  // Upper binomial tail, summed in log space.
  const double log_half_n = static_cast<double>(n) * std::log(0.5);
  const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
  double p = 0.0;
  for (std::size_t k = positive; k <= n; ++k) {
    const double log_choose = log_n_fact - std::lgamma(static_cast<double>(k) + 1.0) -
                              std::lgamma(static_cast<double>(n - k) + 1.0);
    p += std::exp(log_choose + log_half_n);
  }
  return std::min(p, 1.0);
}

double wilcoxon_greater(std::span<const double> values) {
  std::vector<double> nonzero;
  for (const double v : values) {
    if (v != 0.0) nonzero.push_back(v);
  }
  const std::size_t n = nonzero.size();
  if (n == 0) return 1.0;
  std::sort(nonzero.begin(), nonzero.end(),
            [](double a, double b) { return std::fabs(a) < std::fabs(b); });
  double w_plus = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && std::fabs(nonzero[j]) == std::fabs(nonzero[i])) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    for (std::size_t k = i; k < j; ++k) {
      if (nonzero[k] > 0.0) w_plus += avg_rank;
    }
    i = j;
  }
  const double dn = static_cast<double>(n);
  const double expected = dn * (dn + 1.0) / 4.0;
  const double variance = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0 - tie_term / 48.0;
  if (variance <= 0.0) return w_plus > expected ? 0.0 : 1.0;
  const double z = (w_plus - expected - 0.5) / std::sqrt(variance);
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

Histogram histogram(std::span<const double> values, int bins, double lo, double hi) {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  if (!(hi > lo)) throw std::invalid_argument("histogram range must have hi > lo");
  Histogram h{lo, hi, std::vector<std::size_t>(static_cast<std::size_t>(bins), 0)};
  const double width = (hi - lo) / bins;
  for (const double v : values) {
    auto bin = static_cast<long>(std::floor((v - lo) / width));
    bin = std::clamp<long>(bin, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(bin)];
  }
  return h;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS statistic needs two non-empty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    const double fa = static_cast<double>(i) / static_cast<double>(x.size());
    const double fb = static_cast<double>(j) / static_cast<double>(y.size());
    d = std::max(d, std::fabs(fa - fb));
  }
  return d;
}

}  // namespace ccon
