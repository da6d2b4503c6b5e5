#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "ccon/graph.hpp"

namespace ccon {

/// Which directed assortativity variant `r` reports: Pearson correlation of
/// (out-degree of source, in-degree of target) over edges.
inline constexpr std::string_view kAssortativityVariant = "out-in";

/// Clustering convention for `c`: global coefficient of the undirected
/// projection, 3 * triangles / connected triples.
inline constexpr std::string_view kClusteringVariant = "undirected-global";

struct NetworkStats {
  NodeId n = 0;
  std::size_t l = 0;
  double k = 0.0;  // 2L / N
  double r = 0.0;
  double c = 0.0;
  bool r_defined = false;  // false: zero variance, r reported as 0
  bool c_defined = false;  // false: no connected triples, c reported as 0
};

/// Requires N >= 1.
NetworkStats network_stats(const DirectedGraph& g);

/// "n,l,k,r,c" header line (no newline).
std::string stats_csv_header();
/// One CSV row, reals with 6 significant digits (no newline).
std::string stats_csv_row(const NetworkStats& s);

}  // namespace ccon
