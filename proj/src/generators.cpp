#include "ccon/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "ccon/rng.hpp"

namespace ccon {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v, NodeId n) {
  return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) +
         static_cast<std::uint64_t>(v);
}

std::int64_t max_edges(NodeId n) {
  return static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1);
}

}  // namespace

DirectedGraph generate_erdos_renyi(NodeId n, std::int64_t edges, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("node count must be >= 0");
  if (edges < 0 || edges > max_edges(n)) {
    throw std::invalid_argument("edge count " + std::to_string(edges) + " outside [0, " +
                                std::to_string(max_edges(n)) + "]");
  }
  // Floyd's subset sampling over the n(n-1) ordered non-self pairs.
  const auto total = static_cast<std::uint64_t>(max_edges(n));
  const auto count = static_cast<std::uint64_t>(edges);
  Rng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(count * 2);
  for (std::uint64_t j = total - count; j < total; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> sorted(chosen.begin(), chosen.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<Edge> list;
  list.reserve(sorted.size());
  const auto stride = static_cast<std::uint64_t>(n - 1);
  for (const std::uint64_t k : sorted) {
    const auto u = static_cast<NodeId>(k / stride);
    auto v = static_cast<NodeId>(k % stride);
    if (v >= u) ++v;
    list.push_back({u, v});
  }
  return DirectedGraph::from_edges(n, std::move(list));
}

DirectedGraph generate_scale_free(NodeId n, std::int64_t edges, double gamma, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("scale-free generator needs n >= 2");
  if (!(gamma > 2.0)) throw std::invalid_argument("scale-free exponent gamma must be > 2");
  if (edges < 0 || edges > max_edges(n)) {
    throw std::invalid_argument("edge count " + std::to_string(edges) + " outside [0, " +
                                std::to_string(max_edges(n)) + "]");
  }
  const double alpha = 1.0 / (gamma - 1.0);
  std::vector<double> cumulative(static_cast<std::size_t>(n));
  double total = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    total += std::pow(static_cast<double>(i) + 1.0, -alpha);
    cumulative[static_cast<std::size_t>(i)] = total;
  }
  Rng rng(seed);
  auto draw = [&]() -> NodeId {
    const double x = rng.unit() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    return static_cast<NodeId>(std::min<std::ptrdiff_t>(it - cumulative.begin(), n - 1));
  };

  std::unordered_set<std::uint64_t> present;
  present.reserve(static_cast<std::size_t>(edges) * 2);
  std::vector<Edge> list;
  list.reserve(static_cast<std::size_t>(edges));
  const std::int64_t budget = 100 * edges + 1000;
  std::int64_t attempts = 0;
  while (static_cast<std::int64_t>(list.size()) < edges) {
    if (++attempts > budget) {
      throw GenerationError("scale-free generator placed " + std::to_string(list.size()) + " of " +
                            std::to_string(edges) + " edges within " + std::to_string(budget) +
                            " attempts; target too dense");
    }
    const NodeId u = draw();
    const NodeId v = draw();
    if (u == v) continue;
    if (!present.insert(edge_key(u, v, n)).second) continue;
    list.push_back({u, v});
  }
  return DirectedGraph::from_edges(n, std::move(list));
}

DirectedGraph degree_preserving_rewire(const DirectedGraph& g, double swap_factor,
                                       std::uint64_t seed) {
  if (!(swap_factor > 0.0)) throw std::invalid_argument("swap factor must be > 0");
  std::vector<Edge> list(g.edges().begin(), g.edges().end());
  const NodeId n = g.node_count();
  if (list.size() < 2) return g;

  std::unordered_set<std::uint64_t> present;
  present.reserve(list.size() * 2);
  for (const Edge& e : list) present.insert(edge_key(e.source, e.target, n));

  Rng rng(seed);
  const auto attempts =
      static_cast<std::uint64_t>(std::llround(swap_factor * static_cast<double>(list.size())));
  for (std::uint64_t a = 0; a < attempts; ++a) {
    const std::size_t i = rng.below(list.size());
    const std::size_t j = rng.below(list.size());
    if (i == j) continue;
    const auto [u, v] = list[i];
    const auto [x, y] = list[j];
    if (u == y || x == v) continue;
    if (present.contains(edge_key(u, y, n)) || present.contains(edge_key(x, v, n))) continue;
    present.erase(edge_key(u, v, n));
    present.erase(edge_key(x, y, n));
    present.insert(edge_key(u, y, n));
    present.insert(edge_key(x, v, n));
    list[i] = {u, y};
    list[j] = {x, v};
  }
  return DirectedGraph::from_edges(n, std::move(list));
}

}  // namespace ccon
