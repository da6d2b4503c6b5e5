#include "ccon/graph.hpp"

#include <algorithm>

namespace ccon {

DirectedGraph DirectedGraph::from_edges(NodeId node_count, std::vector<Edge> edges) {
  if (node_count < 0) {
    throw GraphError("node count must be >= 0");
  }
  for (const Edge& e : edges) {
    if (e.source < 0 || e.target < 0 || e.source >= node_count || e.target >= node_count) {
      throw GraphError("edge (" + std::to_string(e.source) + ", " + std::to_string(e.target) +
                       ") outside node range [0, " + std::to_string(node_count) + ")");
    }
    if (e.source == e.target) {
      throw GraphError("self-loop on node " + std::to_string(e.source) + " is not allowed");
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  DirectedGraph g;
  g.node_count_ = node_count;
  g.edges_ = std::move(edges);

  const auto n = static_cast<std::size_t>(node_count);
  const std::size_t m = g.edges_.size();

  g.out_offsets_.assign(n + 1, 0);
  g.in_offsets_.assign(n + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.out_offsets_[static_cast<std::size_t>(e.source) + 1];
    ++g.in_offsets_[static_cast<std::size_t>(e.target) + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    g.out_offsets_[i + 1] += g.out_offsets_[i];
    g.in_offsets_[i + 1] += g.in_offsets_[i];
  }

  g.out_targets_.resize(m);
  g.in_sources_.resize(m);
  std::vector<std::size_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const Edge& e = g.edges_[i];
    g.out_targets_[i] = e.target;
    // Edges are scanned in source order, so each in-list comes out sorted.
    g.in_sources_[cursor[static_cast<std::size_t>(e.target)]++] = e.source;
  }
  return g;
}

std::span<const NodeId> DirectedGraph::out_neighbors(NodeId u) const {
  const auto i = static_cast<std::size_t>(u);
  return std::span<const NodeId>(out_targets_).subspan(out_offsets_[i],
                                                       out_offsets_[i + 1] - out_offsets_[i]);
}

std::span<const NodeId> DirectedGraph::in_neighbors(NodeId v) const {
  const auto i = static_cast<std::size_t>(v);
  return std::span<const NodeId>(in_sources_).subspan(in_offsets_[i],
                                                      in_offsets_[i + 1] - in_offsets_[i]);
}

bool DirectedGraph::has_edge(NodeId source, NodeId target) const {
  if (source < 0 || source >= node_count_) return false;
  const auto targets = out_neighbors(source);
  return std::binary_search(targets.begin(), targets.end(), target);
}

}  // namespace ccon
