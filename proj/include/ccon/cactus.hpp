#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ccon/graph.hpp"
#include "ccon/matching.hpp"

namespace ccon {

/// Raised when a (matching, driver set) pair does not belong together.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Matched links split into stems (one per driver) and cycles.
struct Decomposition {
  /// stems[i] starts at the i-th driver (ascending driver order) and follows
  /// matched successors until none is left.
  std::vector<std::vector<NodeId>> stems;
  /// Each cycle starts at its smallest node and follows matched successors;
  /// cycles are sorted by that smallest node.
  std::vector<std::vector<NodeId>> cycles;
};

/// Splits a maximum matching into stems and cycles.
///
/// A forced driver (perfect matching) sitting on a matched cycle has the
/// matched link into it dropped, turning that cycle into its stem.
/// Throws ContractViolation if m is not a matching of g or d is not the
/// driver set that m induces.
Decomposition decompose(const DirectedGraph& g, const Matching& m, const DriverSet& d);

/// One cactus sample in partition mode.
struct CactusSample {
  std::vector<std::vector<NodeId>> stems;
  std::vector<std::vector<NodeId>> cycles;
  /// Stem index that owns each cycle.
  std::vector<std::size_t> cycle_owner;
  /// Link from the owner's earlier territory into the cycle; empty for cycles
  /// no territory could reach, which were wired to a random driver instead.
  std::vector<std::optional<Edge>> witness;
  /// Stem index owning each node.
  std::vector<std::size_t> node_owner;
  /// N_i per stem; sums to N.
  std::vector<std::size_t> territory_sizes;

  bool never_eligible(std::size_t cycle) const { return !witness[cycle].has_value(); }
  /// Sorted node set controlled by stem i.
  std::vector<NodeId> territory(std::size_t stem) const;
};

/// Grows territories to a fixpoint. Per round, every unassigned cycle with a
/// link from some territory goes to one of the eligible drivers chosen
/// uniformly (cycles handled in ascending smallest-node order, eligibility
/// fixed at the start of the round). When no cycle is eligible, the
/// smallest remaining one is wired to a uniform random driver and the
/// fixpoint resumes. The result partitions the node set.
CactusSample attach_cycles_partition(const DirectedGraph& g, const Decomposition& dec,
                                     std::uint64_t rng_seed);

/// Input wiring that realizes a partition sample: signal i enters its
/// driver and one node (the first) of every unreachable cycle wired to it.
std::vector<std::vector<NodeId>> input_wiring(const CactusSample& sample);

/// Largest territory per stem within this sample, each driver considered on
/// its own: the stem's closure under cycle attachment over network links.
/// Cycles that no stem can reach may be wired to any driver's signal, so
/// they seed every driver's closure. Sizes are >= the partition sizes.
std::vector<std::size_t> attach_cycles_max(const DirectedGraph& g, const Decomposition& dec);

}  // namespace ccon
