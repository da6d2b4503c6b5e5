#include "ccon/control.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "ccon/rng.hpp"

namespace ccon {

void EstimatorConfig::validate() const {
  if (delta_window < 1) throw std::invalid_argument("delta window must be >= 1");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  if (t_min < 1) throw std::invalid_argument("t_min must be >= 1");
  if (t_max != 0 && t_max < t_min) throw std::invalid_argument("t_max must be >= t_min");
  if (!(walk_length_factor >= 0.0)) throw std::invalid_argument("walk length factor must be >= 0");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

std::int64_t EstimatorConfig::effective_t_max(NodeId n) const {
  if (t_max != 0) return t_max;
  return std::max<std::int64_t>(t_min, 100 * static_cast<std::int64_t>(n));
}

SampleDetail draw_sample_detail(const DirectedGraph& g, std::uint64_t master_seed, std::int64_t t,
                                double walk_length_factor) {
  const std::uint64_t seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
  Matching m = sample_matching(g, derive_seed(seed, 1), walk_length_factor);
  DriverSet d = driver_set(g, m, derive_seed(seed, 2));
  Decomposition dec = decompose(g, m, d);
  CactusSample partition = attach_cycles_partition(g, dec, derive_seed(seed, 3));
  std::vector<std::size_t> max_sizes = attach_cycles_max(g, dec);
  return {std::move(m), std::move(d), std::move(dec), std::move(partition), std::move(max_sizes)};
}

SampleOutcome draw_sample(const DirectedGraph& g, std::uint64_t master_seed, std::int64_t t,
                          double walk_length_factor) {
  SampleDetail detail = draw_sample_detail(g, master_seed, t, walk_length_factor);
  SampleOutcome out;
  out.drivers = std::move(detail.drivers.drivers);
  out.max_sizes = std::move(detail.max_sizes);
  out.partition_sizes = std::move(detail.partition.territory_sizes);
  return out;
}

ControlAccumulator::ControlAccumulator(NodeId node_count)
    : driver_count_(static_cast<std::size_t>(node_count), 0),
      max_territory_(static_cast<std::size_t>(node_count), 0),
      partition_sum_(static_cast<std::size_t>(node_count), 0) {}

void ControlAccumulator::add(const SampleOutcome& sample) {
  ++samples_;
  for (std::size_t i = 0; i < sample.drivers.size(); ++i) {
    const auto v = static_cast<std::size_t>(sample.drivers[i]);
    ++driver_count_[v];
    partition_sum_[v] += static_cast<std::int64_t>(sample.partition_sizes[i]);
    const auto size = static_cast<std::int64_t>(sample.max_sizes[i]);
    if (size > max_territory_[v]) {
      max_total_ += size - max_territory_[v];
      max_territory_[v] = size;
    }
  }
}

void ControlAccumulator::merge(const ControlAccumulator& other) {
  if (other.driver_count_.size() != driver_count_.size()) {
    throw std::invalid_argument("cannot merge accumulators of different graphs");
  }
  samples_ += other.samples_;
  max_total_ = 0;
  for (std::size_t v = 0; v < driver_count_.size(); ++v) {
    driver_count_[v] += other.driver_count_[v];
    partition_sum_[v] += other.partition_sum_[v];
    max_territory_[v] = std::max(max_territory_[v], other.max_territory_[v]);
    max_total_ += max_territory_[v];
  }
}

ControlEstimates summarize(const ControlAccumulator& acc) {
  const NodeId n = acc.node_count();
  const auto un = static_cast<std::size_t>(n);
  ControlEstimates e;
  e.node_count = n;
  e.samples = acc.samples();
  e.driver_count.resize(un);
  e.max_territory.resize(un);
  e.mean_territory.resize(un);
  e.k_hat.resize(un);
  e.r_hat.resize(un);
  e.c_hat.resize(un);
  const double t = static_cast<double>(acc.samples());
  for (NodeId v = 0; v < n; ++v) {
    const auto i = static_cast<std::size_t>(v);
    e.driver_count[i] = acc.driver_count(v);
    e.max_territory[i] = acc.max_territory(v);
    e.mean_territory[i] = acc.driver_count(v) > 0 ? static_cast<double>(acc.partition_sum(v)) /
                                                        static_cast<double>(acc.driver_count(v))
                                                  : 0.0;
    e.k_hat[i] = t > 0 ? static_cast<double>(acc.driver_count(v)) / t : 0.0;
    e.r_hat[i] = static_cast<double>(acc.max_territory(v)) / static_cast<double>(n);
    e.c_hat[i] = e.k_hat[i] * e.r_hat[i];
  }
  return e;
}

namespace {

class ConvergenceTracker {
 public:
  ConvergenceTracker(const EstimatorConfig& cfg, NodeId n) : cfg_(cfg), n_(n) {}

  /// Records iteration t after acc absorbed its sample; true when the
  /// stopping rule fires.
  bool record(const ControlAccumulator& acc, std::int64_t t) {
    const double q = functional(acc, t);
    const double delta = t == 1 ? 1.0 : (q - previous_) / previous_;
    trace_.push_back({t, q, delta});
    streak_ = std::fabs(delta) <= cfg_.epsilon ? streak_ + 1 : 0;
    previous_ = q;
    return streak_ >= cfg_.delta_window && t >= cfg_.t_min;
  }

  std::vector<TracePoint> take_trace() { return std::move(trace_); }

 private:
  double functional(const ControlAccumulator& acc, std::int64_t t) const {
    const double n = static_cast<double>(n_);
    if (cfg_.functional == ConvergenceFunctional::max_territory) {
      return static_cast<double>(acc.max_territory_total()) / n;
    }
    double sum = 0.0;
    for (NodeId v = 0; v < n_; ++v) {
      sum += static_cast<double>(acc.driver_count(v)) * static_cast<double>(acc.max_territory(v));
    }
    return sum / (static_cast<double>(t) * n);
  }

  const EstimatorConfig& cfg_;
  NodeId n_;
  double previous_ = 0.0;
  int streak_ = 0;
  std::vector<TracePoint> trace_;
};

}  // namespace

ControlEstimates estimate(const DirectedGraph& g, const EstimatorConfig& cfg) {
  cfg.validate();
  const NodeId n = g.node_count();
  if (n < 1) throw std::invalid_argument("estimation needs at least one node");
  const std::int64_t t_max = cfg.effective_t_max(n);

  ControlAccumulator acc(n);
  ConvergenceTracker tracker(cfg, n);
  bool converged = false;

  if (cfg.jobs <= 1) {
    for (std::int64_t t = 1; t <= t_max && !converged; ++t) {
      acc.add(draw_sample(g, cfg.master_seed, t, cfg.walk_length_factor));
      converged = tracker.record(acc, t);
    }
  } else {
    // Draw a batch concurrently, then fold it in iteration order; samples
    // past the stopping point are discarded, so the result matches jobs = 1.
    const auto jobs = static_cast<std::int64_t>(cfg.jobs);
    const std::int64_t batch = jobs * 8;
    std::vector<SampleOutcome> outcomes;
    std::vector<std::exception_ptr> errors(cfg.jobs);
    for (std::int64_t start = 1; start <= t_max && !converged; start += batch) {
      const std::int64_t count = std::min(batch, t_max - start + 1);
      outcomes.assign(static_cast<std::size_t>(count), {});
      std::vector<std::thread> workers;
      for (std::int64_t w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
          try {
            for (std::int64_t k = w; k < count; k += jobs) {
              outcomes[static_cast<std::size_t>(k)] =
                  draw_sample(g, cfg.master_seed, start + k, cfg.walk_length_factor);
            }
          } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
          }
        });
      }
      for (auto& worker : workers) worker.join();
      for (const auto& error : errors) {
        if (error) std::rethrow_exception(error);
      }
      for (std::int64_t k = 0; k < count && !converged; ++k) {
        acc.add(outcomes[static_cast<std::size_t>(k)]);
        converged = tracker.record(acc, start + k);
      }
    }
  }

  ControlEstimates e = summarize(acc);
  e.trace = tracker.take_trace();
  e.converged = converged;
  return e;
}

std::vector<ContributionRecord> contribution_table(const ControlEstimates& e) {
  std::vector<ContributionRecord> records;
  records.reserve(static_cast<std::size_t>(e.node_count));
  for (NodeId v = 0; v < e.node_count; ++v) {
    const auto i = static_cast<std::size_t>(v);
    records.push_back({v, e.k_hat[i], e.r_hat[i], e.c_hat[i], e.mean_territory[i]});
  }
  return records;
}

}  // namespace ccon
