#include "ccon/subspace.hpp"

#include <algorithm>
#include <stdexcept>

#include "ccon/rng.hpp"
#include "driver_check.hpp"
#include "prime_field.hpp"

namespace ccon {

std::string_view to_string(RankMethod method) {
  switch (method) {
    case RankMethod::generic_rank: return "generic-rank";
    case RankMethod::exact_oracle: return "exact-oracle";
  }
  return "unknown";
}

std::vector<NodeId> reachable_set(const DirectedGraph& g, std::span<const NodeId> drivers) {
  std::vector<char> seen(static_cast<std::size_t>(g.node_count()), 0);
  std::vector<NodeId> queue;
  for (const NodeId d : drivers) {
    if (d < 0 || d >= g.node_count()) throw std::invalid_argument("driver id out of range");
    if (!seen[static_cast<std::size_t>(d)]) {
      seen[static_cast<std::size_t>(d)] = 1;
      queue.push_back(d);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const NodeId w : g.out_neighbors(queue[head])) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

namespace {

using detail::PrimeField;
using Element = PrimeField::value_type;

/// Row-echelon basis built incrementally. Each stored row has a unit pivot
/// and zeros at the pivots of all rows stored before it.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t width) : width_(width), work_(width) {}

  std::size_t rank() const noexcept { return pivots_.size(); }

  /// Adds v if it is independent of the basis; returns whether it was.
  bool insert(const std::vector<Element>& v) {
    work_ = v;
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const Element c = work_[pivots_[k]];
      if (c == 0) continue;
      const auto& row = rows_[k];
      for (std::size_t j = 0; j < width_; ++j) {
        if (row[j] != 0) work_[j] = PrimeField::sub(work_[j], PrimeField::mul(c, row[j]));
      }
    }
    const auto it = std::find_if(work_.begin(), work_.end(), [](Element x) { return x != 0; });
    if (it == work_.end()) return false;
    const auto pivot = static_cast<std::size_t>(it - work_.begin());
    const Element scale = PrimeField::inverse(work_[pivot]);
    for (auto& x : work_) x = PrimeField::mul(x, scale);
    rows_.push_back(work_);
    pivots_.push_back(pivot);
    return true;
  }

 private:
  std::size_t width_;
  std::vector<Element> work_;
  std::vector<std::vector<Element>> rows_;
  std::vector<std::size_t> pivots_;
};

struct LocalEdge {
  std::size_t source;
  std::size_t target;
};

}  // namespace

SubspaceResult controllable_dim(const DirectedGraph& g, std::span<const NodeId> drivers,
                                int trials, std::uint64_t seed) {
  detail::check_drivers(g, drivers);
  std::vector<std::vector<NodeId>> inputs;
  inputs.reserve(drivers.size());
  for (const NodeId d : drivers) inputs.push_back({d});
  return controllable_dim_inputs(g, inputs, trials, seed);
}

SubspaceResult controllable_dim_inputs(const DirectedGraph& g,
                                       std::span<const std::vector<NodeId>> inputs, int trials,
                                       std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (inputs.empty()) throw std::invalid_argument("at least one input signal is required");
  std::vector<NodeId> entry_nodes;
  for (const auto& input : inputs) {
    if (input.empty()) throw std::invalid_argument("every input signal must enter some node");
    entry_nodes.insert(entry_nodes.end(), input.begin(), input.end());
  }

  const std::vector<NodeId> reach = reachable_set(g, entry_nodes);
  const std::size_t width = reach.size();
  std::vector<std::size_t> local(static_cast<std::size_t>(g.node_count()), 0);
  for (std::size_t i = 0; i < width; ++i) local[static_cast<std::size_t>(reach[i])] = i;

  // Every out-neighbour of a reachable node is reachable.
  std::vector<LocalEdge> edges;
  for (const NodeId u : reach) {
    for (const NodeId w : g.out_neighbors(u)) {
      edges.push_back({local[static_cast<std::size_t>(u)], local[static_cast<std::size_t>(w)]});
    }
  }

  SubspaceResult result;
  result.reachable_count = width;
  result.method = RankMethod::generic_rank;

  std::vector<Element> weights(edges.size());
  for (int trial = 1; trial <= trials; ++trial) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    for (auto& w : weights) w = PrimeField::random_nonzero(rng);

    EchelonBasis basis(width);
    std::vector<std::vector<Element>> active;
    active.reserve(inputs.size());
    for (const auto& input : inputs) {
      std::vector<Element> column(width, 0);
      for (const NodeId d : input) {
        auto& x = column[local[static_cast<std::size_t>(d)]];
        x = PrimeField::add(x, PrimeField::random_nonzero(rng));
      }
      active.push_back(std::move(column));
    }

    // Block Krylov with deflation: a column that lands in the span so far
    // only produces dependent successors, so it is dropped.
    std::vector<std::vector<Element>> next;
    while (!active.empty() && basis.rank() < width) {
      next.clear();
      for (const auto& v : active) {
        if (!basis.insert(v)) continue;
        std::vector<Element> image(width, 0);
        for (std::size_t e = 0; e < edges.size(); ++e) {
          const Element x = v[edges[e].source];
          if (x == 0) continue;
          auto& y = image[edges[e].target];
          y = PrimeField::add(y, PrimeField::mul(weights[e], x));
        }
        next.push_back(std::move(image));
        if (basis.rank() == width) break;
      }
      active.swap(next);
    }

    result.trials_used = trial;
    result.n_b_abs = std::max(result.n_b_abs, basis.rank());
    if (result.n_b_abs == width) break;
  }
  result.n_b = static_cast<double>(result.n_b_abs) / static_cast<double>(g.node_count());
  return result;
}

}  // namespace ccon
