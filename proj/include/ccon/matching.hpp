#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ccon/graph.hpp"

namespace ccon {

/// Matching on the node-split bipartite graph: out-copy u is joined to
/// in-copy v when the matched link u -> v is selected. No node is the
/// source of two matched links or the target of two.
class Matching {
 public:
  Matching() = default;
  explicit Matching(NodeId node_count);

  NodeId node_count() const noexcept { return static_cast<NodeId>(out_.size()); }
  std::size_t size() const noexcept { return size_; }

  /// Matched successor of u (target of u's matched out-link).
  std::optional<NodeId> successor(NodeId u) const;
  /// Matched predecessor of v (source of v's matched in-link).
  std::optional<NodeId> predecessor(NodeId v) const;

  /// Adds u -> v. Requires u without successor and v without predecessor.
  void link(NodeId u, NodeId v);
  /// Removes u's matched out-link, if any.
  void unlink_source(NodeId u);

  /// Links in ascending source order.
  std::vector<Edge> matched_edges() const;

  /// True when every matched link is an edge of g and the two directions agree.
  bool is_consistent_with(const DirectedGraph& g) const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  friend class MatchingBuilder;
  static constexpr NodeId kNone = -1;
  std::vector<NodeId> out_;
  std::vector<NodeId> in_;
  std::size_t size_ = 0;
};

/// One minimum driver set: nodes without a matched in-link, or a single
/// seeded node when the matching is perfect (N_d = max(N - |M|, 1)).
struct DriverSet {
  std::vector<NodeId> drivers;  // ascending
  double n_d_fraction = 0.0;    // |drivers| / N
  bool forced = false;          // perfect matching: the single driver was chosen by seed
};

inline constexpr double kDefaultWalkLengthFactor = 2.0;

/// Maximum matching by Hopcroft-Karp; adjacency and free-vertex order are
/// shuffled by order_seed, so different seeds can land on different maximum
/// matchings of the same size.
Matching maximum_matching(const DirectedGraph& g, std::uint64_t order_seed);

DriverSet driver_set(const DirectedGraph& g, const Matching& m, std::uint64_t tie_seed);

/// Maximum matching followed by ceil(walk_length_factor * L) exchange steps.
/// Each step removes a random matched link u -> v and re-augments along a
/// randomized alternating path, either from the out-copy of u or from the
/// in-copy of v, so the size never changes. Frequencies over seeds are
/// empirical, not provably uniform over all maximum matchings.
Matching sample_matching(const DirectedGraph& g, std::uint64_t rng_seed,
                         double walk_length_factor = kDefaultWalkLengthFactor);

}  // namespace ccon
