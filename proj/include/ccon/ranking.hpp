#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ccon/control.hpp"
#include "ccon/graph.hpp"
#include "ccon/subspace.hpp"

namespace ccon {

enum class SchemeKind {
  contribution_desc,
  capacity_desc,
  range_desc,
  indegree_asc,
  outdegree_asc,
  random,
};

inline constexpr std::array<SchemeKind, 6> kAllSchemes = {
    SchemeKind::contribution_desc, SchemeKind::capacity_desc, SchemeKind::range_desc,
    SchemeKind::indegree_asc,      SchemeKind::outdegree_asc, SchemeKind::random,
};

std::string_view to_string(SchemeKind kind);
std::optional<SchemeKind> parse_scheme(std::string_view name);
bool is_control_based(SchemeKind kind);

struct RankingScheme {
  SchemeKind kind = SchemeKind::contribution_desc;
  std::uint64_t seed = 0;  // used by `random` only
};

/// Total order over all nodes. Control keys (C, K, R) descending, degree keys
/// ascending, ties by ascending id; `random` is a seeded shuffle.
std::vector<NodeId> rank_nodes(const DirectedGraph& g, const ControlEstimates& e,
                               const RankingScheme& scheme);

/// Same, for the schemes that need no estimates. Throws std::invalid_argument
/// for control-based schemes.
std::vector<NodeId> rank_nodes(const DirectedGraph& g, const RankingScheme& scheme);

/// Ranking key of every node under a scheme (random: position in the order).
std::vector<double> scheme_scores(const DirectedGraph& g, const ControlEstimates* e,
                                  const RankingScheme& scheme);

struct DimConfig {
  int trials = kDefaultRankTrials;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

struct CurvePoint {
  double n_c = 0.0;
  double n_b = 0.0;
  double stderr_n_b = 0.0;  // random scheme only
};

struct CurveResult {
  RankingScheme scheme;
  std::vector<CurvePoint> points;
  double auc = 0.0;  // trapezoid over the grid
};

inline constexpr int kDefaultGridDensity = 20;
inline constexpr int kDefaultRandomRepetitions = 10;

/// n_d = max(N - |M|, 1) / N for a maximum matching of g.
double minimum_driver_fraction(const DirectedGraph& g);

/// `density` evenly spaced values n_d * k / density, k = 1..density.
std::vector<double> default_grid(double n_d, int density = kDefaultGridDensity);

double trapezoid_area(std::span<const CurvePoint> points);

/// n_b for the top ceil(n_c * N) nodes of `order` at every grid value.
/// The grid must be strictly increasing within (0, n_d]; otherwise
/// std::invalid_argument names the bound.
CurveResult nb_curve(const DirectedGraph& g, std::span<const NodeId> order,
                     std::span<const double> grid, const DimConfig& dim);

/// Random scheme: the mean n_b over `repetitions` seeded orders, with its
/// standard error.
CurveResult nb_curve_random(const DirectedGraph& g, std::span<const double> grid,
                            const DimConfig& dim, int repetitions, std::uint64_t seed);

}  // namespace ccon
