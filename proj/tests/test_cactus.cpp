#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "ccon/cactus.hpp"
#include "ccon/generators.hpp"
#include "fixtures.hpp"

using namespace ccon;

namespace {

Matching matching_of(NodeId n, std::initializer_list<Edge> links) {
  Matching m(n);
  for (const auto& e : links) m.link(e.source, e.target);
  return m;
}

// stems 0->1->2 and 3->4->5, cycles 6<->7 and 8->9->10
Matching two_stems_matching() {
  return matching_of(11, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 6}, {8, 9}, {9, 10}, {10, 8}});
}

Matching contested_matching() { return matching_of(7, {{0, 1}, {2, 3}, {4, 5}, {5, 6}, {6, 4}}); }

void check_sample(const DirectedGraph& g, const Matching& m, const DriverSet& d, const Decomposition& dec,
                  const CactusSample& s) {
  const auto n = static_cast<std::size_t>(g.node_count());
  // stems and cycles cover every node once
  std::vector<int> seen(n, 0);
  for (const auto& stem : dec.stems) for (NodeId v : stem) ++seen[static_cast<std::size_t>(v)];
  for (const auto& cycle : dec.cycles) {
    for (NodeId v : cycle) {
      ++seen[static_cast<std::size_t>(v)];
      CHECK(m.predecessor(v).has_value());
      CHECK(m.successor(v).has_value());
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      CHECK(m.successor(cycle[i]) == cycle[(i + 1) % cycle.size()]);
    }
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  REQUIRE(dec.stems.size() == d.drivers.size());
  for (std::size_t i = 0; i < dec.stems.size(); ++i) CHECK(dec.stems[i].front() == d.drivers[i]);

  // partition
  CHECK(std::accumulate(s.territory_sizes.begin(), s.territory_sizes.end(), std::size_t{0}) == n);
  std::vector<int> owned(n, 0);
  for (std::size_t i = 0; i < s.stems.size(); ++i) {
    const auto t = s.territory(i);
    CHECK(t.size() == s.territory_sizes[i]);
    for (NodeId v : t) {
      ++owned[static_cast<std::size_t>(v)];
      CHECK(s.node_owner[static_cast<std::size_t>(v)] == i);
    }
  }
  CHECK(std::all_of(owned.begin(), owned.end(), [](int c) { return c == 1; }));

  // witnesses come from the owner's territory into the cycle
  for (std::size_t c = 0; c < s.cycles.size(); ++c) {
    if (!s.witness[c]) continue;
    const Edge w = *s.witness[c];
    CHECK(g.has_edge(w.source, w.target));
    CHECK(s.node_owner[static_cast<std::size_t>(w.source)] == s.cycle_owner[c]);
    CHECK(std::find(s.cycles[c].begin(), s.cycles[c].end(), w.target) != s.cycles[c].end());
    CHECK(std::find(s.cycles[c].begin(), s.cycles[c].end(), w.source) == s.cycles[c].end());
  }

  const auto max_sizes = attach_cycles_max(g, dec);
  REQUIRE(max_sizes.size() == s.territory_sizes.size());
  for (std::size_t i = 0; i < max_sizes.size(); ++i) CHECK(max_sizes[i] >= s.territory_sizes[i]);
}

}  // namespace

TEST_CASE("path decomposes into one stem") {
  const auto g = fixtures::path3();
  const auto m = maximum_matching(g, 0);
  const auto d = driver_set(g, m, 0);
  const auto dec = decompose(g, m, d);
  CHECK(dec.stems == std::vector<std::vector<NodeId>>{{0, 1, 2}});
  CHECK(dec.cycles.empty());
  const auto s = attach_cycles_partition(g, dec, 1);
  CHECK(s.territory_sizes == std::vector<std::size_t>{3});
  CHECK(attach_cycles_max(g, dec) == std::vector<std::size_t>{3});
}

TEST_CASE("forced driver breaks its cycle into a stem") {
  const auto g = fixtures::cycle3();
  const auto m = maximum_matching(g, 0);
  const DriverSet d{{0}, 1.0 / 3, true};
  const auto dec = decompose(g, m, d);
  CHECK(dec.stems == std::vector<std::vector<NodeId>>{{0, 1, 2}});
  CHECK(dec.cycles.empty());
  CHECK(attach_cycles_max(g, dec) == std::vector<std::size_t>{3});
}

TEST_CASE("forced driver outside a cycle") {
  // 0->1->0 and 2->3->2, perfect matching with two cycles
  const auto g = fixtures::graph(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {1, 2}});
  const auto m = matching_of(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  const DriverSet d{{0}, 0.25, true};
  const auto dec = decompose(g, m, d);
  CHECK(dec.stems == std::vector<std::vector<NodeId>>{{0, 1}});
  CHECK(dec.cycles == std::vector<std::vector<NodeId>>{{2, 3}});
  const auto s = attach_cycles_partition(g, dec, 0);
  CHECK(s.territory_sizes == std::vector<std::size_t>{4});
  CHECK(s.witness[0] == Edge{1, 2});
}

TEST_CASE("inconsistent matching and drivers are rejected") {
  const auto g = fixtures::path3();
  const auto m = maximum_matching(g, 0);
  CHECK_THROWS_AS(decompose(g, m, DriverSet{{1}, 1.0 / 3, false}), ContractViolation);
  CHECK_THROWS_AS(decompose(g, matching_of(3, {{1, 0}}), DriverSet{{1, 2}, 2.0 / 3, false}), ContractViolation);
}

TEST_CASE("two stems and two cycles") {
  const auto g = fixtures::two_stems_two_cycles();
  const auto m = two_stems_matching();
  const auto d = driver_set(g, m, 0);
  CHECK(d.drivers == std::vector<NodeId>{0, 3});
  const auto dec = decompose(g, m, d);
  CHECK(dec.stems.size() == 2);
  CHECK(dec.cycles.size() == 2);
  CHECK(dec.cycles[0] == std::vector<NodeId>{6, 7});
  CHECK(dec.cycles[1] == std::vector<NodeId>{8, 9, 10});

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = attach_cycles_partition(g, dec, seed);
    CHECK(s.cycle_owner[0] == 1);  // only stem 3->4->5 links into 6<->7
    CHECK(s.witness[0] == Edge{4, 6});
    CHECK(s.cycle_owner[1] == 0);  // stem 3->4->5 has no link into 8..10
    CHECK(s.witness[1] == Edge{1, 8});
    CHECK(s.territory_sizes == std::vector<std::size_t>{6, 5});
    check_sample(g, m, d, dec, s);
  }
  CHECK(attach_cycles_max(g, dec) == std::vector<std::size_t>{6, 5});
}

TEST_CASE("unreachable cycle is flagged and wired to some driver") {
  // stem 0->1->2 reaches 3<->4; 5<->6 has no incoming link
  const auto g = fixtures::graph(7, {{0, 1}, {1, 2}, {3, 4}, {4, 3}, {5, 6}, {6, 5}, {1, 3}});
  const auto m = matching_of(7, {{0, 1}, {1, 2}, {3, 4}, {4, 3}, {5, 6}, {6, 5}});
  const auto d = driver_set(g, m, 0);
  const auto dec = decompose(g, m, d);
  const auto s = attach_cycles_partition(g, dec, 3);
  CHECK_FALSE(s.never_eligible(0));
  CHECK(s.never_eligible(1));
  CHECK(s.territory_sizes == std::vector<std::size_t>{7});
  check_sample(g, m, d, dec, s);
  const auto inputs = input_wiring(s);
  REQUIRE(inputs.size() == 1);
  CHECK(inputs[0].front() == 0);
  CHECK(inputs[0].size() == 2);
  CHECK((inputs[0][1] == 5 || inputs[0][1] == 6));
}

TEST_CASE("cycles downstream of a flagged cycle attach with witnesses") {
  // 0 alone; 1<->2 unreachable; 1 -> 3 feeds 3<->4
  const auto g = fixtures::graph(5, {{1, 2}, {2, 1}, {3, 4}, {4, 3}, {1, 3}});
  const auto m = matching_of(5, {{1, 2}, {2, 1}, {3, 4}, {4, 3}});
  const auto d = driver_set(g, m, 0);
  const auto dec = decompose(g, m, d);
  const auto s = attach_cycles_partition(g, dec, 0);
  CHECK(s.never_eligible(0));
  CHECK(s.witness[1] == Edge{1, 3});
  CHECK(attach_cycles_max(g, dec) == std::vector<std::size_t>{5});
}

TEST_CASE("contested cycle goes to either driver evenly") {
  const auto g = fixtures::contested_cycle();
  const auto m = contested_matching();
  const auto d = driver_set(g, m, 0);
  REQUIRE(d.drivers == std::vector<NodeId>{0, 2});
  const auto dec = decompose(g, m, d);
  int to_first = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto s = attach_cycles_partition(g, dec, seed);
    to_first += s.cycle_owner[0] == 0 ? 1 : 0;
    check_sample(g, m, d, dec, s);
  }
  CHECK(to_first / 400.0 >= 0.35);
  CHECK(to_first / 400.0 <= 0.65);

  const auto max_sizes = attach_cycles_max(g, dec);
  CHECK(max_sizes == std::vector<std::size_t>{5, 5});
  CHECK(max_sizes[0] + max_sizes[1] > 7);
}

TEST_CASE("toy example max territories") {
  const auto g = fixtures::toy_a();
  const auto m = maximum_matching(g, 0);
  const auto d = driver_set(g, m, 0);
  CHECK(d.drivers == std::vector<NodeId>{0, 1});
  CHECK(attach_cycles_max(g, decompose(g, m, d)) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("partition and max invariants on random graphs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = seed % 2 ? generate_erdos_renyi(150, 220 + seed * 10, seed)
                            : generate_scale_free(150, 400, 2.5, seed);
    for (std::uint64_t s = 0; s < 4; ++s) {
      const auto m = sample_matching(g, seed * 31 + s);
      const auto d = driver_set(g, m, s);
      const auto dec = decompose(g, m, d);
      const auto sample = attach_cycles_partition(g, dec, s);
      check_sample(g, m, d, dec, sample);
      CHECK(attach_cycles_partition(g, dec, s).cycle_owner == sample.cycle_owner);
    }
  }
}
