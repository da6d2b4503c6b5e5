#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccon/graph.hpp"

namespace ccon::detail {

inline void check_drivers(const DirectedGraph& g, std::span<const NodeId> drivers) {
  if (drivers.empty()) throw std::invalid_argument("driver list must not be empty");
  std::vector<char> seen(static_cast<std::size_t>(g.node_count()), 0);
  for (const NodeId d : drivers) {
    if (d < 0 || d >= g.node_count()) {
      throw std::invalid_argument("driver " + std::to_string(d) + " outside [0, " +
                                  std::to_string(g.node_count()) + ")");
    }
    if (seen[static_cast<std::size_t>(d)]++) {
      throw std::invalid_argument("driver " + std::to_string(d) + " listed twice");
    }
  }
}

}  // namespace ccon::detail
