#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccon {

using NodeId = std::int32_t;

/// Directed link source -> target. In the structural matrix A this is the
/// nonzero entry a[target][source]: the source influences the target.
struct Edge {
  NodeId source = 0;
  NodeId target = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable directed graph over dense node ids [0, N).
///
/// Edges are kept sorted by (source, target) without duplicates or
/// self-loops; out- and in-adjacency are CSR arrays derived from them, each
/// neighbour list sorted ascending.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Builds a graph from arbitrary edge order. Duplicate edges collapse.
  /// Throws GraphError on self-loops or ids outside [0, node_count).
  static DirectedGraph from_edges(NodeId node_count, std::vector<Edge> edges);

  NodeId node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const NodeId> out_neighbors(NodeId u) const;
  std::span<const NodeId> in_neighbors(NodeId v) const;
  std::size_t out_degree(NodeId u) const { return out_neighbors(u).size(); }
  std::size_t in_degree(NodeId v) const { return in_neighbors(v).size(); }

  bool has_edge(NodeId source, NodeId target) const;

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  NodeId node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
};

}  // namespace ccon
