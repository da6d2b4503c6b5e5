#include "ccon/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ccon/format.hpp"

namespace ccon {

namespace {

double assortativity(const DirectedGraph& g, bool& defined) {
  defined = false;
  const std::size_t m = g.edge_count();
  if (m == 0) return 0.0;
  double mean_x = 0.0, mean_y = 0.0;
  for (const Edge& e : g.edges()) {
    mean_x += static_cast<double>(g.out_degree(e.source));
    mean_y += static_cast<double>(g.in_degree(e.target));
  }
  mean_x /= static_cast<double>(m);
  mean_y /= static_cast<double>(m);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const Edge& e : g.edges()) {
    const double dx = static_cast<double>(g.out_degree(e.source)) - mean_x;
    const double dy = static_cast<double>(g.in_degree(e.target)) - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  defined = true;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double clustering(const DirectedGraph& g, bool& defined) {
  defined = false;
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<std::vector<NodeId>> adj(n);
  for (const Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.source)].push_back(e.target);
    adj[static_cast<std::size_t>(e.target)].push_back(e.source);
  }
  double triples = 0.0;
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    const auto d = static_cast<double>(nbrs.size());
    triples += d * (d - 1.0) / 2.0;
  }
  if (triples <= 0.0) return 0.0;

  // Each triangle u < v < w counted once.
  double triangles = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    const auto& nu = adj[u];
    for (const NodeId v : nu) {
      if (static_cast<std::size_t>(v) <= u) continue;
      const auto& nv = adj[static_cast<std::size_t>(v)];
      auto a = std::upper_bound(nu.begin(), nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) ++a;
        else if (*b < *a) ++b;
        else { triangles += 1.0; ++a; ++b; }
      }
    }
  }
  defined = true;
  return 3.0 * triangles / triples;
}

}  // namespace

NetworkStats network_stats(const DirectedGraph& g) {
  if (g.node_count() < 1) throw std::invalid_argument("statistics need at least one node");
  NetworkStats s;
  s.n = g.node_count();
  s.l = g.edge_count();
  s.k = 2.0 * static_cast<double>(s.l) / static_cast<double>(s.n);
  s.r = assortativity(g, s.r_defined);
  s.c = clustering(g, s.c_defined);
  return s;
}

std::string stats_csv_header() { return "n,l,k,r,c"; }

std::string stats_csv_row(const NetworkStats& s) {
  return std::to_string(s.n) + ',' + std::to_string(s.l) + ',' + format_significant(s.k, 6) + ',' +
         format_significant(s.r, 6) + ',' + format_significant(s.c, 6);
}

}  // namespace ccon
