#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ccon/rng.hpp"
#include "ccon/subspace.hpp"
#include "driver_check.hpp"

namespace ccon {

namespace {

constexpr std::uint64_t kWeightRange = 1000;

/// Nonzero integer in [-1000, 1000].
long random_weight(Rng& rng) {
  const auto x = static_cast<long>(rng.below(2 * kWeightRange));
  return x < static_cast<long>(kWeightRange) ? x - static_cast<long>(kWeightRange) : x - static_cast<long>(kWeightRange) + 1;
}

std::size_t rational_rank(std::vector<std::vector<mpq_class>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const mpq_class factor = rows[r][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[r][j] -= factor * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

SubspaceResult exact_dim_oracle(const DirectedGraph& g, std::span<const NodeId> drivers,
                                int assignments, std::uint64_t seed) {
  const NodeId n = g.node_count();
  if (n > kExactOracleMaxNodes) {
    throw std::invalid_argument("exact oracle is limited to " +
                                std::to_string(kExactOracleMaxNodes) + " nodes");
  }
  detail::check_drivers(g, drivers);
  if (assignments < 1) throw std::invalid_argument("assignments must be >= 1");

  const auto un = static_cast<std::size_t>(n);
  SubspaceResult result;
  result.method = RankMethod::exact_oracle;
  result.reachable_count = reachable_set(g, drivers).size();

  for (int a = 1; a <= assignments; ++a) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(a), 0x6f7261636c65ULL));
    // a[i][j] != 0 iff edge j -> i.
    std::vector<std::vector<mpz_class>> A(un, std::vector<mpz_class>(un, 0));
    for (const Edge& e : g.edges()) {
      A[static_cast<std::size_t>(e.target)][static_cast<std::size_t>(e.source)] = random_weight(rng);
    }
    // Rows of the N x (N * N_c) matrix [B, AB, ..., A^(N-1) B].
    std::vector<std::vector<mpq_class>> matrix(un);
    for (const NodeId d : drivers) {
      std::vector<mpz_class> x(un, 0);
      x[static_cast<std::size_t>(d)] = random_weight(rng);
      for (std::size_t power = 0; power < un; ++power) {
        for (std::size_t i = 0; i < un; ++i) matrix[i].emplace_back(x[i]);
        std::vector<mpz_class> y(un, 0);
        for (std::size_t i = 0; i < un; ++i) {
          for (std::size_t j = 0; j < un; ++j) {
            if (A[i][j] != 0) y[i] += A[i][j] * x[j];
          }
        }
        x = std::move(y);
      }
    }
    result.n_b_abs = std::max(result.n_b_abs, rational_rank(std::move(matrix)));
    result.trials_used = a;
  }
  result.n_b = n > 0 ? static_cast<double>(result.n_b_abs) / static_cast<double>(n) : 0.0;
  return result;
}

}  // namespace ccon
