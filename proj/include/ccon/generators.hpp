#pragma once

#include <cstdint>
#include <stdexcept>

#include "ccon/graph.hpp"

namespace ccon {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultScaleFreeGamma = 2.5;

/// Directed G(N, L): exactly `edges` distinct ordered non-self pairs drawn
/// uniformly without replacement. Throws std::invalid_argument unless
/// 0 <= edges <= n(n-1).
DirectedGraph generate_erdos_renyi(NodeId n, std::int64_t edges, std::uint64_t seed);

/// Static-model scale-free digraph. Node of rank i (1-based) carries in- and
/// out-weight i^(-1/(gamma-1)); endpoints are drawn by weight, self-loops and
/// duplicates are rejected until `edges` links exist. Throws
/// std::invalid_argument on bad parameters and GenerationError when the
/// rejection budget runs out.
DirectedGraph generate_scale_free(NodeId n, std::int64_t edges, double gamma, std::uint64_t seed);

/// Double-edge swaps (u->v, x->y) => (u->y, x->v); round(swap_factor * L)
/// attempts, rejecting swaps that would create self-loops or duplicates.
/// Every node keeps its in- and out-degree.
DirectedGraph degree_preserving_rewire(const DirectedGraph& g, double swap_factor,
                                       std::uint64_t seed);

}  // namespace ccon
