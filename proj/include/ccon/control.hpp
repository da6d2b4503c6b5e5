#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ccon/cactus.hpp"
#include "ccon/graph.hpp"
#include "ccon/matching.hpp"

namespace ccon {

/// Quantity whose relative change drives the stopping rule.
enum class ConvergenceFunctional {
  /// Q(t) = sum_i M_i(t) / N over running max territories. Frozen exactly
  /// when no sample enlarges any driver's territory.
  max_territory,
  /// Q(t) = sum_i K_i(t) R_i(t). Moves every iteration; pair with epsilon > 0.
  contribution_sum,
};

struct EstimatorConfig {
  int delta_window = 100;     // consecutive |delta| <= epsilon iterations to stop
  double epsilon = 0.0;
  std::int64_t t_min = 100;
  std::int64_t t_max = 0;     // 0: 100 * N
  std::uint64_t master_seed = 0;
  double walk_length_factor = kDefaultWalkLengthFactor;
  ConvergenceFunctional functional = ConvergenceFunctional::max_territory;
  unsigned jobs = 1;          // worker threads; results do not depend on it

  /// Throws std::invalid_argument on violated bounds.
  void validate() const;
  std::int64_t effective_t_max(NodeId n) const;
};

/// What one iteration contributes: its drivers with their max-mode and
/// partition-mode territory sizes.
struct SampleOutcome {
  std::vector<NodeId> drivers;
  std::vector<std::size_t> max_sizes;
  std::vector<std::size_t> partition_sizes;
};

/// Everything iteration t builds on the way to its outcome.
struct SampleDetail {
  Matching matching;
  DriverSet drivers;
  Decomposition decomposition;
  CactusSample partition;
  std::vector<std::size_t> max_sizes;
};

SampleDetail draw_sample_detail(const DirectedGraph& g, std::uint64_t master_seed, std::int64_t t,
                                double walk_length_factor = kDefaultWalkLengthFactor);

/// Draws the cactus sample of iteration t (t >= 1). Seeds come from
/// (master_seed, t) only.
SampleOutcome draw_sample(const DirectedGraph& g, std::uint64_t master_seed, std::int64_t t,
                          double walk_length_factor = kDefaultWalkLengthFactor);

/// Per-node running statistics. add() and merge() commute: counts and
/// territory sums add, maxima take the max.
class ControlAccumulator {
 public:
  explicit ControlAccumulator(NodeId node_count);

  void add(const SampleOutcome& sample);
  void merge(const ControlAccumulator& other);

  NodeId node_count() const noexcept { return static_cast<NodeId>(driver_count_.size()); }
  std::int64_t samples() const noexcept { return samples_; }
  std::int64_t driver_count(NodeId v) const { return driver_count_[static_cast<std::size_t>(v)]; }
  std::int64_t max_territory(NodeId v) const { return max_territory_[static_cast<std::size_t>(v)]; }
  std::int64_t partition_sum(NodeId v) const { return partition_sum_[static_cast<std::size_t>(v)]; }
  /// sum_i M_i, the numerator of the max-territory functional.
  std::int64_t max_territory_total() const noexcept { return max_total_; }

  friend bool operator==(const ControlAccumulator&, const ControlAccumulator&) = default;

 private:
  std::int64_t samples_ = 0;
  std::int64_t max_total_ = 0;
  std::vector<std::int64_t> driver_count_;
  std::vector<std::int64_t> max_territory_;
  std::vector<std::int64_t> partition_sum_;
};

struct TracePoint {
  std::int64_t t = 0;
  double q = 0.0;
  double delta = 0.0;
};

struct ControlEstimates {
  NodeId node_count = 0;
  std::int64_t samples = 0;
  std::vector<std::int64_t> driver_count;   // c_i
  std::vector<std::int64_t> max_territory;  // M_i
  std::vector<double> mean_territory;       // mean partition N_i while a driver; 0 if never
  std::vector<double> k_hat;                // c_i / t
  std::vector<double> r_hat;                // M_i / N
  std::vector<double> c_hat;                // k_hat * r_hat
  std::vector<TracePoint> trace;
  bool converged = false;
};

/// K, R and C from an accumulator.
ControlEstimates summarize(const ControlAccumulator& acc);

/// Sampling loop: one cactus sample per iteration until |delta(t)| <=
/// epsilon held for delta_window consecutive iterations with t >= t_min, or
/// t reaches t_max (converged = false). delta(1) = 1. Requires N >= 1.
ControlEstimates estimate(const DirectedGraph& g, const EstimatorConfig& cfg);

struct ContributionRecord {
  NodeId node = 0;
  double k = 0.0;
  double r = 0.0;
  double c = 0.0;
  double mean_territory = 0.0;
};

/// One record per node, ascending node id.
std::vector<ContributionRecord> contribution_table(const ControlEstimates& e);

}  // namespace ccon
