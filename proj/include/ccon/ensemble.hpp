#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ccon/control.hpp"
#include "ccon/generators.hpp"
#include "ccon/graph.hpp"
#include "ccon/ranking.hpp"

namespace ccon {

enum class GeneratorKind { erdos_renyi, scale_free };

struct GeneratorConfig {
  GeneratorKind kind = GeneratorKind::erdos_renyi;
  NodeId n = 0;
  std::int64_t l = 0;
  double gamma = kDefaultScaleFreeGamma;  // scale-free only

  DirectedGraph generate(std::uint64_t seed) const;
};

enum class SignificanceTest { sign, wilcoxon };

std::string_view to_string(SignificanceTest test);
std::optional<SignificanceTest> parse_test(std::string_view name);

struct EnsembleConfig {
  GeneratorConfig generator;
  int runs = 100;
  int grid_density = kDefaultGridDensity;
  std::uint64_t master_seed = 0;
  EstimatorConfig estimator;  // master_seed and jobs are set per run
  int rank_trials = kDefaultRankTrials;
  SignificanceTest test = SignificanceTest::sign;
  double max_failure_fraction = 0.10;
  unsigned jobs = 1;
};

struct EnsembleRun {
  int run = 0;
  double s_c = 0.0;
  double s_k = 0.0;
  double s_r = 0.0;
  double rs0 = 0.0;  // S_C / S_K - 1
  double rs1 = 0.0;  // S_C / S_R - 1
};

struct EnsembleResult {
  std::vector<EnsembleRun> runs;  // successful runs, ascending run index
  std::vector<double> rs0_values;
  std::vector<double> rs1_values;
  double mean_rs0 = 0.0, mean_rs1 = 0.0;
  double median_rs0 = 0.0, median_rs1 = 0.0;
  double frac_positive_rs0 = 0.0, frac_positive_rs1 = 0.0;
  double p_value = 1.0;  // one-sided test that median(rs0) > 0
  std::string test_name;
  int failures = 0;
  std::vector<std::string> failure_reasons;
};

class EnsembleAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One ensemble member: generate, estimate, trace C/K/R curves on a shared
/// grid up to n_d, and compare their areas. Returns nullopt with `reason`
/// set when generation fails or estimation does not converge.
std::optional<EnsembleRun> ensemble_run(const EnsembleConfig& cfg, int run, std::string& reason);

/// Runs `runs` independent members keyed by derived seeds and aggregates
/// RS0/RS1. Failed members are excluded and counted; more than
/// max_failure_fraction failures throws EnsembleAborted. Requires runs >= 2.
EnsembleResult ensemble_experiment(const EnsembleConfig& cfg);

}  // namespace ccon
