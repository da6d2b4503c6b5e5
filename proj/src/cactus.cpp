#include "ccon/cactus.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "ccon/rng.hpp"

namespace ccon {

namespace {

constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> cycle_index_of_nodes(NodeId n, const Decomposition& dec) {
  std::vector<std::size_t> index(static_cast<std::size_t>(n), kNoIndex);
  for (std::size_t c = 0; c < dec.cycles.size(); ++c) {
    for (const NodeId v : dec.cycles[c]) index[static_cast<std::size_t>(v)] = c;
  }
  return index;
}

}  // namespace

Decomposition decompose(const DirectedGraph& g, const Matching& m, const DriverSet& d) {
  if (!m.is_consistent_with(g)) {
    throw ContractViolation("matching is not a valid matching of the graph");
  }
  const NodeId n = g.node_count();
  std::vector<NodeId> unmatched;
  for (NodeId v = 0; v < n; ++v) {
    if (!m.predecessor(v)) unmatched.push_back(v);
  }
  if (!unmatched.empty()) {
    if (d.drivers != unmatched) {
      throw ContractViolation("driver set differs from the matching's unmatched nodes");
    }
  } else if (n > 0) {
    if (d.drivers.size() != 1 || d.drivers[0] < 0 || d.drivers[0] >= n) {
      throw ContractViolation("perfect matching needs exactly one forced driver");
    }
  }

  Decomposition dec;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (const NodeId driver : d.drivers) {
    std::vector<NodeId> stem{driver};
    used[static_cast<std::size_t>(driver)] = 1;
    for (auto next = m.successor(driver); next && *next != driver; next = m.successor(*next)) {
      if (used[static_cast<std::size_t>(*next)]) {
        throw ContractViolation("stem from driver " + std::to_string(driver) +
                                " runs into another structure");
      }
      used[static_cast<std::size_t>(*next)] = 1;
      stem.push_back(*next);
    }
    dec.stems.push_back(std::move(stem));
  }

  for (NodeId v = 0; v < n; ++v) {
    if (used[static_cast<std::size_t>(v)]) continue;
    std::vector<NodeId> cycle;
    NodeId cur = v;
    do {
      used[static_cast<std::size_t>(cur)] = 1;
      cycle.push_back(cur);
      const auto next = m.successor(cur);
      if (!next || (used[static_cast<std::size_t>(*next)] && *next != v)) {
        throw ContractViolation("node " + std::to_string(cur) +
                                " is neither on a stem nor on a matched cycle");
      }
      cur = *next;
    } while (cur != v);
    dec.cycles.push_back(std::move(cycle));
  }
  return dec;
}

std::vector<NodeId> CactusSample::territory(std::size_t stem) const {
  std::vector<NodeId> nodes;
  for (std::size_t v = 0; v < node_owner.size(); ++v) {
    if (node_owner[v] == stem) nodes.push_back(static_cast<NodeId>(v));
  }
  return nodes;
}

CactusSample attach_cycles_partition(const DirectedGraph& g, const Decomposition& dec,
                                     std::uint64_t rng_seed) {
  const NodeId n = g.node_count();
  const std::size_t stem_count = dec.stems.size();
  const std::size_t cycle_count = dec.cycles.size();

  CactusSample sample;
  sample.stems = dec.stems;
  sample.cycles = dec.cycles;
  sample.cycle_owner.assign(cycle_count, kNoIndex);
  sample.witness.assign(cycle_count, std::nullopt);
  sample.node_owner.assign(static_cast<std::size_t>(n), kNoIndex);
  sample.territory_sizes.assign(stem_count, 0);

  auto& owner = sample.node_owner;
  for (std::size_t i = 0; i < stem_count; ++i) {
    for (const NodeId v : dec.stems[i]) owner[static_cast<std::size_t>(v)] = i;
    sample.territory_sizes[i] = dec.stems[i].size();
  }
  if (cycle_count > 0 && stem_count == 0) {
    throw ContractViolation("cycles present but no driver to attach them to");
  }

  Rng rng(rng_seed);
  std::vector<std::size_t> pending(cycle_count);
  for (std::size_t c = 0; c < cycle_count; ++c) pending[c] = c;

  struct Claim {
    std::size_t cycle;
    std::size_t stem;
    std::optional<Edge> witness;
  };
  std::vector<Claim> claims;
  std::vector<std::size_t> eligible;

  while (!pending.empty()) {
    claims.clear();
    for (const std::size_t c : pending) {
      eligible.clear();
      for (const NodeId x : dec.cycles[c]) {
        for (const NodeId w : g.in_neighbors(x)) {
          const std::size_t o = owner[static_cast<std::size_t>(w)];
          if (o != kNoIndex) eligible.push_back(o);
        }
      }
      if (eligible.empty()) continue;
      std::sort(eligible.begin(), eligible.end());
      eligible.erase(std::unique(eligible.begin(), eligible.end()), eligible.end());
      const std::size_t chosen = eligible[rng.below(eligible.size())];

      std::optional<Edge> best;
      for (const NodeId x : dec.cycles[c]) {
        for (const NodeId w : g.in_neighbors(x)) {
          if (owner[static_cast<std::size_t>(w)] != chosen) continue;
          const Edge e{w, x};
          if (!best || e < *best) best = e;
        }
      }
      claims.push_back({c, chosen, best});
    }

    if (claims.empty()) {
      // Nothing reachable from any territory: wire the smallest cycle directly.
      claims.push_back({pending.front(), static_cast<std::size_t>(rng.below(stem_count)),
                        std::nullopt});
    }

    for (const Claim& claim : claims) {
      sample.cycle_owner[claim.cycle] = claim.stem;
      sample.witness[claim.cycle] = claim.witness;
      for (const NodeId v : dec.cycles[claim.cycle]) owner[static_cast<std::size_t>(v)] = claim.stem;
      sample.territory_sizes[claim.stem] += dec.cycles[claim.cycle].size();
    }
    std::erase_if(pending, [&](std::size_t c) { return sample.cycle_owner[c] != kNoIndex; });
  }
  return sample;
}

std::vector<std::size_t> attach_cycles_max(const DirectedGraph& g, const Decomposition& dec) {
  const NodeId n = g.node_count();
  const std::size_t cycle_count = dec.cycles.size();
  const auto node_cycle = cycle_index_of_nodes(n, dec);

  constexpr std::uint32_t kShared = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> absorbed(cycle_count, 0);
  std::uint32_t stamp = 0;
  std::vector<NodeId> queue;
  queue.reserve(static_cast<std::size_t>(n));

  // BFS over network links from the queued nodes; whole cycles are absorbed
  // when any link reaches them. Returns the number of nodes absorbed.
  auto grow = [&](std::size_t head) {
    std::size_t added = 0;
    for (; head < queue.size(); ++head) {
      for (const NodeId w : g.out_neighbors(queue[head])) {
        const std::size_t c = node_cycle[static_cast<std::size_t>(w)];
        if (c == kNoIndex || absorbed[c] == stamp || absorbed[c] == kShared) continue;
        absorbed[c] = stamp;
        queue.insert(queue.end(), dec.cycles[c].begin(), dec.cycles[c].end());
        added += dec.cycles[c].size();
      }
    }
    return added;
  };

  // Cycles reachable from any stem; the rest may be wired to any driver.
  stamp = 1;
  queue.clear();
  for (const auto& stem : dec.stems) queue.insert(queue.end(), stem.begin(), stem.end());
  grow(0);

  // Closure of the unreachable cycles, shared by every driver. It is closed
  // under attachment, so per-driver searches may stop at its border.
  queue.clear();
  std::size_t shared_size = 0;
  for (std::size_t c = 0; c < cycle_count; ++c) {
    if (absorbed[c] == 0) {
      absorbed[c] = kShared;
      queue.insert(queue.end(), dec.cycles[c].begin(), dec.cycles[c].end());
      shared_size += dec.cycles[c].size();
    }
  }
  stamp = kShared;
  shared_size += grow(0);
  for (auto& a : absorbed) {
    if (a != kShared) a = 0;
  }

  std::vector<std::size_t> sizes;
  sizes.reserve(dec.stems.size());
  stamp = 1;
  for (const auto& stem : dec.stems) {
    ++stamp;
    if (stamp == kShared) {
      for (auto& a : absorbed) {
        if (a != kShared) a = 0;
      }
      stamp = 2;
    }
    queue.assign(stem.begin(), stem.end());
    sizes.push_back(stem.size() + grow(0) + shared_size);
  }
  return sizes;
}

std::vector<std::vector<NodeId>> input_wiring(const CactusSample& sample) {
  std::vector<std::vector<NodeId>> inputs;
  inputs.reserve(sample.stems.size());
  for (const auto& stem : sample.stems) inputs.push_back({stem.front()});
  for (std::size_t c = 0; c < sample.cycles.size(); ++c) {
    if (sample.never_eligible(c)) inputs[sample.cycle_owner[c]].push_back(sample.cycles[c].front());
  }
  return inputs;
}

}  // namespace ccon
