#include "ccon/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ccon/matching.hpp"
#include "ccon/rng.hpp"
#include "parallel.hpp"

namespace ccon {

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::contribution_desc: return "contribution-desc";
    case SchemeKind::capacity_desc: return "capacity-desc";
    case SchemeKind::range_desc: return "range-desc";
    case SchemeKind::indegree_asc: return "indegree-asc";
    case SchemeKind::outdegree_asc: return "outdegree-asc";
    case SchemeKind::random: return "random";
  }
  return "unknown";
}

std::optional<SchemeKind> parse_scheme(std::string_view name) {
  for (const SchemeKind kind : kAllSchemes) {
    if (name == to_string(kind)) return kind;
  }
  if (name == "contribution" || name == "C") return SchemeKind::contribution_desc;
  if (name == "capacity" || name == "K") return SchemeKind::capacity_desc;
  if (name == "range" || name == "R") return SchemeKind::range_desc;
  if (name == "indegree") return SchemeKind::indegree_asc;
  if (name == "outdegree") return SchemeKind::outdegree_asc;
  return std::nullopt;
}

bool is_control_based(SchemeKind kind) {
  return kind == SchemeKind::contribution_desc || kind == SchemeKind::capacity_desc ||
         kind == SchemeKind::range_desc;
}

namespace {

std::vector<NodeId> random_order(NodeId n, std::uint64_t seed) {
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<NodeId>(order));
  return order;
}

std::vector<NodeId> order_by(std::span<const double> keys, bool descending) {
  std::vector<NodeId> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const double ka = keys[static_cast<std::size_t>(a)];
    const double kb = keys[static_cast<std::size_t>(b)];
    if (ka != kb) return descending ? ka > kb : ka < kb;
    return a < b;
  });
  return order;
}

}  // namespace

std::vector<double> scheme_scores(const DirectedGraph& g, const ControlEstimates* e,
                                  const RankingScheme& scheme) {
  const auto n = static_cast<std::size_t>(g.node_count());
  if (is_control_based(scheme.kind)) {
    if (e == nullptr) {
      throw std::invalid_argument(std::string(to_string(scheme.kind)) + " needs control estimates");
    }
    if (static_cast<std::size_t>(e->node_count) != n) {
      throw std::invalid_argument("estimates and graph disagree on node count");
    }
  }
  std::vector<double> scores(n);
  switch (scheme.kind) {
    case SchemeKind::contribution_desc: scores = e->c_hat; break;
    case SchemeKind::capacity_desc: scores = e->k_hat; break;
    case SchemeKind::range_desc: scores = e->r_hat; break;
    case SchemeKind::indegree_asc:
      for (std::size_t v = 0; v < n; ++v) scores[v] = static_cast<double>(g.in_degree(static_cast<NodeId>(v)));
      break;
    case SchemeKind::outdegree_asc:
      for (std::size_t v = 0; v < n; ++v) scores[v] = static_cast<double>(g.out_degree(static_cast<NodeId>(v)));
      break;
    case SchemeKind::random: {
      const auto order = random_order(g.node_count(), scheme.seed);
      for (std::size_t pos = 0; pos < n; ++pos) scores[static_cast<std::size_t>(order[pos])] = static_cast<double>(pos);
      break;
    }
  }
  return scores;
}

std::vector<NodeId> rank_nodes(const DirectedGraph& g, const ControlEstimates& e,
                               const RankingScheme& scheme) {
  if (scheme.kind == SchemeKind::random) return random_order(g.node_count(), scheme.seed);
  const auto scores = scheme_scores(g, &e, scheme);
  return order_by(scores, is_control_based(scheme.kind));
}

std::vector<NodeId> rank_nodes(const DirectedGraph& g, const RankingScheme& scheme) {
  if (scheme.kind == SchemeKind::random) return random_order(g.node_count(), scheme.seed);
  const auto scores = scheme_scores(g, nullptr, scheme);
  return order_by(scores, false);
}

double minimum_driver_fraction(const DirectedGraph& g) {
  const NodeId n = g.node_count();
  if (n < 1) throw std::invalid_argument("graph has no nodes");
  const Matching m = maximum_matching(g, 0);
  const auto drivers = std::max<std::size_t>(static_cast<std::size_t>(n) - m.size(), 1);
  return static_cast<double>(drivers) / static_cast<double>(n);
}

std::vector<double> default_grid(double n_d, int density) {
  if (density < 1) throw std::invalid_argument("grid density must be >= 1");
  if (!(n_d > 0.0 && n_d <= 1.0)) throw std::invalid_argument("n_d must lie in (0, 1]");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(density));
  for (int k = 1; k <= density; ++k) grid.push_back(n_d * k / density);
  grid.back() = n_d;
  return grid;
}

double trapezoid_area(std::span<const CurvePoint> points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    area += 0.5 * (points[i].n_b + points[i - 1].n_b) * (points[i].n_c - points[i - 1].n_c);
  }
  return area;
}

namespace {

constexpr double kGridTolerance = 1e-12;

void check_grid(std::span<const double> grid, double n_d) {
  if (grid.empty()) throw std::invalid_argument("grid must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw std::invalid_argument("grid values must be > 0");
    if (grid[i] > n_d + kGridTolerance) {
      throw std::invalid_argument("grid value " + std::to_string(grid[i]) +
                                  " exceeds the minimum driver fraction n_d = " +
                                  std::to_string(n_d));
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("grid must be strictly increasing");
    }
  }
}

std::size_t driver_count_for(double n_c, NodeId n) {
  const double x = n_c * static_cast<double>(n);
  const auto count = static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, x)));
  return std::clamp<std::size_t>(count, 1, static_cast<std::size_t>(n));
}

}  // namespace

CurveResult nb_curve(const DirectedGraph& g, std::span<const NodeId> order,
                     std::span<const double> grid, const DimConfig& dim) {
  const NodeId n = g.node_count();
  if (order.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("order must list every node exactly once");
  }
  check_grid(grid, minimum_driver_fraction(g));

  CurveResult curve;
  curve.points.resize(grid.size());
  detail::parallel_for(grid.size(), dim.jobs, [&](std::size_t k) {
    const std::size_t count = driver_count_for(grid[k], n);
    const SubspaceResult r = controllable_dim(g, order.first(count), dim.trials,
                                              derive_seed(dim.seed, k));
    curve.points[k] = {grid[k], r.n_b, 0.0};
  });
  curve.auc = trapezoid_area(curve.points);
  return curve;
}

CurveResult nb_curve_random(const DirectedGraph& g, std::span<const double> grid,
                            const DimConfig& dim, int repetitions, std::uint64_t seed) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  std::vector<CurveResult> runs;
  runs.reserve(static_cast<std::size_t>(repetitions));
  for (int r = 0; r < repetitions; ++r) {
    const auto order = random_order(g.node_count(), derive_seed(seed, static_cast<std::uint64_t>(r)));
    runs.push_back(nb_curve(g, order, grid, dim));
  }
  CurveResult curve;
  curve.scheme = {SchemeKind::random, seed};
  curve.points.resize(grid.size());
  const double reps = repetitions;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double mean = 0.0;
    for (const auto& run : runs) mean += run.points[k].n_b;
    mean /= reps;
    double ss = 0.0;
    for (const auto& run : runs) ss += (run.points[k].n_b - mean) * (run.points[k].n_b - mean);
    const double stderr_nb = repetitions > 1 ? std::sqrt(ss / (reps - 1.0)) / std::sqrt(reps) : 0.0;
    curve.points[k] = {grid[k], mean, stderr_nb};
  }
  curve.auc = trapezoid_area(curve.points);
  return curve;
}

}  // namespace ccon
