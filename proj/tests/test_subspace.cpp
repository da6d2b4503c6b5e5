#include <doctest.h>

#include <algorithm>

#include "ccon/generators.hpp"
#include "ccon/control.hpp"
#include "ccon/rng.hpp"
#include "ccon/subspace.hpp"
#include "fixtures.hpp"

using namespace ccon;

namespace {

std::size_t dim(const DirectedGraph& g, std::vector<NodeId> drivers) {
  return controllable_dim(g, drivers).n_b_abs;
}

std::size_t oracle(const DirectedGraph& g, std::vector<NodeId> drivers) {
  return exact_dim_oracle(g, drivers, 5, 1).n_b_abs;
}

std::vector<NodeId> random_drivers(NodeId n, Rng& rng) {
  std::vector<NodeId> nodes(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) nodes[static_cast<std::size_t>(v)] = v;
  rng.shuffle(std::span<NodeId>(nodes));
  nodes.resize(1 + rng.below(static_cast<std::uint64_t>(n)));
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace

TEST_CASE("reachable sets") {
  const std::vector<NodeId> one{1}, zero{0}, two{2};
  CHECK(reachable_set(fixtures::path3(), one) == std::vector<NodeId>{1, 2});
  CHECK(reachable_set(fixtures::empty(3), zero) == std::vector<NodeId>{0});
  CHECK(reachable_set(fixtures::cycle3(), two) == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("small controllable dimensions") {
  const auto path = fixtures::path3();
  const auto r = controllable_dim(path, std::vector<NodeId>{0});
  CHECK(r.n_b_abs == 3);
  CHECK(r.n_b == 1.0);
  CHECK(r.reachable_count == 3);
  CHECK(r.method == RankMethod::generic_rank);
  CHECK(dim(path, {1}) == 2);

  const auto toy = fixtures::toy_a();
  CHECK(dim(toy, {1}) == 2);
  CHECK(dim(toy, {0}) == 1);
  CHECK(dim(toy, {0, 1}) == 3);

  CHECK(dim(fixtures::cycle3(), {0}) == 3);
  CHECK(dim(fixtures::star3(), {0}) == 2);
  CHECK(dim(fixtures::star3(), {0, 2}) == 3);
  CHECK(dim(fixtures::empty(4), {3}) == 1);
}

TEST_CASE("exact oracle examples") {
  CHECK(oracle(fixtures::path3(), {0}) == 3);
  CHECK(oracle(fixtures::path3(), {1}) == 2);
  CHECK(oracle(fixtures::cycle3(), {0}) == 3);
  CHECK(oracle(fixtures::star3(), {0}) == 2);
  CHECK(oracle(fixtures::toy_a(), {1}) == 2);
  CHECK(oracle(fixtures::toy_a(), {0}) == 1);
  CHECK(exact_dim_oracle(fixtures::path3(), std::vector<NodeId>{0}, 1, 0).method == RankMethod::exact_oracle);
  CHECK_THROWS_AS(oracle(fixtures::empty(13), {0}), std::invalid_argument);
}

TEST_CASE("generic rank equals the exact oracle") {
  Rng rng(42);
  int cases = 0;
  for (std::uint64_t seed = 0; cases < 300; ++seed) {
    const NodeId n = 2 + static_cast<NodeId>(rng.below(7));
    const auto max_l = static_cast<std::int64_t>(n) * (n - 1);
    const auto l = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_l) + 1));
    const auto g = generate_erdos_renyi(n, l, seed);
    const auto drivers = random_drivers(n, rng);
    const auto fast = controllable_dim(g, drivers, 3, seed);
    const auto exact = exact_dim_oracle(g, drivers, 5, seed);
    INFO("n=", n, " l=", l, " seed=", seed);
    CHECK(fast.n_b_abs == exact.n_b_abs);
    CHECK(fast.n_b_abs >= drivers.size());
    CHECK(fast.n_b_abs <= fast.reachable_count);
    ++cases;
  }
}

TEST_CASE("restriction to the reachable part does not change the oracle") {
  // the oracle works on the full matrix; unreachable nodes contribute nothing
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = generate_erdos_renyi(9, 12, seed);
    const std::vector<NodeId> drivers{static_cast<NodeId>(seed % 9)};
    CHECK(exact_dim_oracle(g, drivers, 5, seed).n_b_abs <= reachable_set(g, drivers).size());
    CHECK(controllable_dim(g, drivers, 3, seed).n_b_abs == exact_dim_oracle(g, drivers, 5, seed).n_b_abs);
  }
}

TEST_CASE("adding drivers never lowers the dimension") {
  Rng rng(7);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = generate_scale_free(80, 200, 2.5, seed);
    std::vector<NodeId> order(80);
    for (NodeId v = 0; v < 80; ++v) order[static_cast<std::size_t>(v)] = v;
    rng.shuffle(std::span<NodeId>(order));
    std::size_t previous = 0;
    for (std::size_t k = 1; k <= 40; k += 3) {
      const std::vector<NodeId> drivers(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
      const auto d = controllable_dim(g, drivers, 3, seed).n_b_abs;
      CHECK(d >= previous);
      CHECK(d >= k);
      previous = d;
    }
  }
}

TEST_CASE("a sampled minimum driver set controls everything it reaches") {
  // one signal per driver leaves a cycle without incoming links dark; wiring
  // it to an existing signal, as the cactus sample does, restores full rank
  int dark = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = seed % 2 ? generate_erdos_renyi(200, 300, seed) : generate_scale_free(200, 600, 2.5, seed);
    const auto s = draw_sample_detail(g, seed, 1);
    const auto strict = controllable_dim(g, s.drivers.drivers, 3, seed);
    CHECK(strict.n_b_abs == strict.reachable_count);
    dark += strict.reachable_count < 200 ? 1 : 0;
    const auto inputs = input_wiring(s.partition);
    CHECK(inputs.size() == s.drivers.drivers.size());
    CHECK(controllable_dim_inputs(g, inputs, 3, seed).n_b == 1.0);
  }
  CHECK(dark > 0);
}

TEST_CASE("wired inputs") {
  // stem 0 -> 1 and the unreachable cycle 2 <-> 3
  const auto g = fixtures::graph(4, {{0, 1}, {2, 3}, {3, 2}});
  CHECK(dim(g, {0}) == 2);
  const std::vector<std::vector<NodeId>> wired{{0, 2}};
  CHECK(controllable_dim_inputs(g, wired).n_b_abs == 4);
  const std::vector<std::vector<NodeId>> singles{{0}, {2}};
  CHECK(controllable_dim_inputs(g, singles).n_b_abs == 4);
  // one signal into both leaves of a star cannot separate them
  const std::vector<std::vector<NodeId>> both{{1, 2}};
  CHECK(controllable_dim_inputs(fixtures::star3(), both).n_b_abs == 1);
  const std::vector<std::vector<NodeId>> none{{}};
  CHECK_THROWS_AS(controllable_dim_inputs(g, none), std::invalid_argument);
}

TEST_CASE("driver validation") {
  const auto g = fixtures::path3();
  CHECK_THROWS_AS(controllable_dim(g, std::vector<NodeId>{}), std::invalid_argument);
  CHECK_THROWS_AS(controllable_dim(g, std::vector<NodeId>{3}), std::invalid_argument);
  CHECK_THROWS_AS(controllable_dim(g, std::vector<NodeId>{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(controllable_dim(g, std::vector<NodeId>{0}, 0), std::invalid_argument);
}
