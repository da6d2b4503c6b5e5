#include "ccon/ensemble.hpp"

#include <cmath>

#include "ccon/rng.hpp"
#include "ccon/statistics.hpp"
#include "parallel.hpp"

namespace ccon {

DirectedGraph GeneratorConfig::generate(std::uint64_t seed) const {
  switch (kind) {
    case GeneratorKind::erdos_renyi: return generate_erdos_renyi(n, l, seed);
    case GeneratorKind::scale_free: return generate_scale_free(n, l, gamma, seed);
  }
  throw std::invalid_argument("unknown generator");
}

std::string_view to_string(SignificanceTest test) {
  switch (test) {
    case SignificanceTest::sign: return "sign-test-one-sided";
    case SignificanceTest::wilcoxon: return "wilcoxon-signed-rank-one-sided";
  }
  return "unknown";
}

std::optional<SignificanceTest> parse_test(std::string_view name) {
  if (name == "sign") return SignificanceTest::sign;
  if (name == "wilcoxon") return SignificanceTest::wilcoxon;
  return std::nullopt;
}

namespace {

enum Stream : std::uint64_t { kGraph = 1, kEstimate = 2, kDim = 3 };

double relative_gain(double a, double b) { return b > 0.0 ? a / b - 1.0 : 0.0; }

double fraction_positive(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  std::size_t positive = 0;
  for (const double v : values) positive += v > 0.0 ? 1 : 0;
  return static_cast<double>(positive) / static_cast<double>(values.size());
}

}  // namespace

std::optional<EnsembleRun> ensemble_run(const EnsembleConfig& cfg, int run, std::string& reason) {
  const std::uint64_t run_seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(run));
  DirectedGraph g;
  try {
    g = cfg.generator.generate(derive_seed(run_seed, kGraph));
  } catch (const GenerationError& e) {
    reason = e.what();
    return std::nullopt;
  }

  EstimatorConfig est = cfg.estimator;
  est.master_seed = derive_seed(run_seed, kEstimate);
  est.jobs = 1;
  const ControlEstimates e = estimate(g, est);
  if (!e.converged) {
    reason = "estimation did not converge within " + std::to_string(e.samples) + " samples";
    return std::nullopt;
  }

  const auto grid = default_grid(minimum_driver_fraction(g), cfg.grid_density);
  const DimConfig dim{cfg.rank_trials, derive_seed(run_seed, kDim), 1};
  auto area = [&](SchemeKind kind) {
    const auto order = rank_nodes(g, e, {kind, 0});
    return nb_curve(g, order, grid, dim).auc;
  };
  EnsembleRun r;
  r.run = run;
  r.s_c = area(SchemeKind::contribution_desc);
  r.s_k = area(SchemeKind::capacity_desc);
  r.s_r = area(SchemeKind::range_desc);
  r.rs0 = relative_gain(r.s_c, r.s_k);
  r.rs1 = relative_gain(r.s_c, r.s_r);
  return r;
}

EnsembleResult ensemble_experiment(const EnsembleConfig& cfg) {
  if (cfg.runs < 2) throw std::invalid_argument("ensemble needs at least 2 runs");
  cfg.estimator.validate();

  const auto runs = static_cast<std::size_t>(cfg.runs);
  std::vector<std::optional<EnsembleRun>> outcomes(runs);
  std::vector<std::string> reasons(runs);
  detail::parallel_for(runs, cfg.jobs, [&](std::size_t i) {
    outcomes[i] = ensemble_run(cfg, static_cast<int>(i), reasons[i]);
  });

  EnsembleResult result;
  result.test_name = std::string(to_string(cfg.test));
  for (std::size_t i = 0; i < runs; ++i) {
    if (!outcomes[i]) {
      ++result.failures;
      result.failure_reasons.push_back("run " + std::to_string(i) + ": " + reasons[i]);
      continue;
    }
    result.runs.push_back(*outcomes[i]);
    result.rs0_values.push_back(outcomes[i]->rs0);
    result.rs1_values.push_back(outcomes[i]->rs1);
  }
  if (static_cast<double>(result.failures) > cfg.max_failure_fraction * static_cast<double>(runs)) {
    throw EnsembleAborted(std::to_string(result.failures) + " of " + std::to_string(runs) +
                          " ensemble runs failed");
  }

  result.mean_rs0 = mean(result.rs0_values);
  result.mean_rs1 = mean(result.rs1_values);
  result.median_rs0 = median(result.rs0_values);
  result.median_rs1 = median(result.rs1_values);
  result.frac_positive_rs0 = fraction_positive(result.rs0_values);
  result.frac_positive_rs1 = fraction_positive(result.rs1_values);
  result.p_value = cfg.test == SignificanceTest::sign ? sign_test_greater(result.rs0_values)
                                                      : wilcoxon_greater(result.rs0_values);
  return result;
}

}  // namespace ccon
