#pragma once

#include <vector>

#include "ccon/graph.hpp"

namespace fixtures {

inline ccon::DirectedGraph graph(ccon::NodeId n, std::vector<ccon::Edge> edges) {
  return ccon::DirectedGraph::from_edges(n, std::move(edges));
}

inline ccon::DirectedGraph path3() { return graph(3, {{0, 1}, {1, 2}}); }
inline ccon::DirectedGraph cycle3() { return graph(3, {{0, 1}, {1, 2}, {2, 0}}); }
inline ccon::DirectedGraph star3() { return graph(3, {{0, 1}, {0, 2}}); }
inline ccon::DirectedGraph empty(ccon::NodeId n) { return graph(n, {}); }

// isolated node plus one edge; ids shifted to 0..2 (1 -> 0, 2 -> 1, 3 -> 2)
inline ccon::DirectedGraph toy_a() { return graph(3, {{1, 2}}); }

// exactly two maximum matchings, driver sets {2,3} and {1,3}
inline ccon::DirectedGraph two_matchings() {
  return graph(6, {{0, 1}, {0, 2}, {1, 4}, {1, 5}, {3, 0}, {4, 5}});
}

// stems 0->1->2 and 3->4->5, cycles 6<->7 and 8->9->10->8,
// links 4->6 and 1->8
inline ccon::DirectedGraph two_stems_two_cycles() {
  return graph(11, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 6},
                    {8, 9}, {9, 10}, {10, 8}, {4, 6}, {1, 8}});
}

// stems 0->1 and 2->3 both link into the cycle 4->5->6->4
inline ccon::DirectedGraph contested_cycle() {
  return graph(7, {{0, 1}, {2, 3}, {4, 5}, {5, 6}, {6, 4}, {1, 4}, {3, 4}});
}

// Every directed graph on n nodes without self-loops, by edge bitmask.
inline std::vector<ccon::Edge> edges_of_mask(ccon::NodeId n, unsigned mask) {
  std::vector<ccon::Edge> edges;
  unsigned bit = 0;
  for (ccon::NodeId u = 0; u < n; ++u) {
    for (ccon::NodeId v = 0; v < n; ++v) {
      if (u == v) continue;
      if (mask & (1U << bit)) edges.push_back({u, v});
      ++bit;
    }
  }
  return edges;
}

// Largest edge subset with distinct sources and distinct targets.
inline std::size_t brute_force_matching_size(ccon::NodeId n, const std::vector<ccon::Edge>& edges) {
  std::size_t best = 0;
  const std::size_t l = edges.size();
  for (unsigned long sub = 0; sub < (1UL << l); ++sub) {
    unsigned used_out = 0, used_in = 0;
    std::size_t size = 0;
    bool ok = true;
    for (std::size_t i = 0; i < l && ok; ++i) {
      if (!(sub & (1UL << i))) continue;
      const unsigned su = 1U << edges[i].source, sv = 1U << edges[i].target;
      if ((used_out & su) || (used_in & sv)) ok = false;
      used_out |= su;
      used_in |= sv;
      ++size;
    }
    if (ok && size > best) best = size;
  }
  (void)n;
  return best;
}

}  // namespace fixtures
