#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ccon/graph.hpp"

namespace ccon {

enum class RankMethod { generic_rank, exact_oracle };

std::string_view to_string(RankMethod method);

/// Dimension N_b of the controllable subspace for a driver set.
struct SubspaceResult {
  std::size_t n_b_abs = 0;
  double n_b = 0.0;  // N_b / N
  std::size_t reachable_count = 0;
  int trials_used = 0;
  RankMethod method = RankMethod::generic_rank;
};

inline constexpr int kDefaultRankTrials = 3;

/// Nodes reachable from any driver along directed paths, drivers included.
/// Sorted ascending.
std::vector<NodeId> reachable_set(const DirectedGraph& g, std::span<const NodeId> drivers);

/// Generic rank of [B, AB, A^2 B, ...] where A carries the zero pattern of
/// g and B has one column per driver with a single nonzero.
///
/// Works on the reachable subgraph. Each trial draws independent nonzero
/// weights over GF(2^63 - 25) and runs a block Krylov iteration with
/// incremental elimination; a driver's column stops once it falls in the
/// span so far, and the iteration ends when a round adds no rank. A trial
/// misses the generic rank with probability at most N^2 / p. Returns the
/// best rank over `trials`, stopping early when every reachable node is
/// covered.
///
/// Throws std::invalid_argument for an empty driver list, out-of-range or
/// repeated ids, or trials < 1.
SubspaceResult controllable_dim(const DirectedGraph& g, std::span<const NodeId> drivers,
                                int trials = kDefaultRankTrials, std::uint64_t seed = 0);

/// Same rank for input signals that may enter several nodes: column j of B
/// has an independent nonzero at every node of inputs[j]. With singleton
/// inputs this is controllable_dim.
SubspaceResult controllable_dim_inputs(const DirectedGraph& g,
                                       std::span<const std::vector<NodeId>> inputs,
                                       int trials = kDefaultRankTrials, std::uint64_t seed = 0);

inline constexpr NodeId kExactOracleMaxNodes = 12;

/// Exact rational rank of the full N x (N * N_c) controllability matrix for
/// `assignments` random integer weightings; the maximum is returned. No
/// reachability restriction, no early stop. Requires N <= 12.
SubspaceResult exact_dim_oracle(const DirectedGraph& g, std::span<const NodeId> drivers,
                                int assignments, std::uint64_t seed);

}  // namespace ccon
