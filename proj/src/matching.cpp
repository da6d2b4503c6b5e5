#include "ccon/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ccon/rng.hpp"

namespace ccon {

Matching::Matching(NodeId node_count)
    : out_(static_cast<std::size_t>(node_count), kNone),
      in_(static_cast<std::size_t>(node_count), kNone) {}

std::optional<NodeId> Matching::successor(NodeId u) const {
  const NodeId v = out_.at(static_cast<std::size_t>(u));
  if (v == kNone) return std::nullopt;
  return v;
}

std::optional<NodeId> Matching::predecessor(NodeId v) const {
  const NodeId u = in_.at(static_cast<std::size_t>(v));
  if (u == kNone) return std::nullopt;
  return u;
}

void Matching::link(NodeId u, NodeId v) {
  auto& ou = out_.at(static_cast<std::size_t>(u));
  auto& iv = in_.at(static_cast<std::size_t>(v));
  if (ou != kNone || iv != kNone) {
    throw std::logic_error("link " + std::to_string(u) + " -> " + std::to_string(v) +
                           " would reuse a matched endpoint");
  }
  ou = v;
  iv = u;
  ++size_;
}

void Matching::unlink_source(NodeId u) {
  auto& ou = out_.at(static_cast<std::size_t>(u));
  if (ou == kNone) return;
  in_[static_cast<std::size_t>(ou)] = kNone;
  ou = kNone;
  --size_;
}

std::vector<Edge> Matching::matched_edges() const {
  std::vector<Edge> edges;
  edges.reserve(size_);
  for (std::size_t u = 0; u < out_.size(); ++u) {
    if (out_[u] != kNone) edges.push_back({static_cast<NodeId>(u), out_[u]});
  }
  return edges;
}

bool Matching::is_consistent_with(const DirectedGraph& g) const {
  if (node_count() != g.node_count()) return false;
  std::size_t count = 0;
  for (std::size_t u = 0; u < out_.size(); ++u) {
    const NodeId v = out_[u];
    if (v == kNone) continue;
    ++count;
    if (v < 0 || v >= g.node_count()) return false;
    if (in_[static_cast<std::size_t>(v)] != static_cast<NodeId>(u)) return false;
    if (!g.has_edge(static_cast<NodeId>(u), v)) return false;
  }
  for (std::size_t v = 0; v < in_.size(); ++v) {
    const NodeId u = in_[v];
    if (u == kNone) continue;
    if (u < 0 || u >= g.node_count() || out_[static_cast<std::size_t>(u)] != static_cast<NodeId>(v)) {
      return false;
    }
  }
  return count == size_;
}

/// Raw-array access for the matching algorithms in this file.
class MatchingBuilder {
 public:
  static constexpr NodeId kNone = Matching::kNone;

  static std::vector<NodeId>& out(Matching& m) { return m.out_; }
  static std::vector<NodeId>& in(Matching& m) { return m.in_; }
  static void set_size(Matching& m, std::size_t size) { m.size_ = size; }
};

namespace {

constexpr NodeId kNone = MatchingBuilder::kNone;
constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

/// Out-adjacency with every row shuffled.
struct ShuffledAdjacency {
  std::vector<std::size_t> offsets;
  std::vector<NodeId> targets;

  ShuffledAdjacency(const DirectedGraph& g, Rng& rng) {
    const auto n = static_cast<std::size_t>(g.node_count());
    offsets.assign(n + 1, 0);
    targets.reserve(g.edge_count());
    for (std::size_t u = 0; u < n; ++u) {
      const auto row = g.out_neighbors(static_cast<NodeId>(u));
      targets.insert(targets.end(), row.begin(), row.end());
      offsets[u + 1] = targets.size();
      rng.shuffle(std::span<NodeId>(targets).subspan(offsets[u], row.size()));
    }
  }
};

}  // namespace

Matching maximum_matching(const DirectedGraph& g, std::uint64_t order_seed) {
  const NodeId n = g.node_count();
  const auto un = static_cast<std::size_t>(n);
  Rng rng(order_seed);
  const ShuffledAdjacency adj(g, rng);
  std::vector<NodeId> order(un);
  for (std::size_t i = 0; i < un; ++i) order[i] = static_cast<NodeId>(i);
  rng.shuffle(std::span<NodeId>(order));

  Matching m(n);
  auto& out = MatchingBuilder::out(m);
  auto& in = MatchingBuilder::in(m);
  std::size_t size = 0;

  std::vector<std::size_t> dist(un);
  std::vector<std::size_t> cursor(un);
  std::vector<NodeId> queue;
  queue.reserve(un);
  std::vector<NodeId> path_u;
  std::vector<NodeId> path_v;

  // Layered BFS from free out-copies; true when a free in-copy is reachable.
  auto layer = [&]() {
    queue.clear();
    for (const NodeId u : order) {
      const auto ui = static_cast<std::size_t>(u);
      if (out[ui] == kNone) {
        dist[ui] = 0;
        queue.push_back(u);
      } else {
        dist[ui] = kUnreached;
      }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto u = static_cast<std::size_t>(queue[head]);
      for (std::size_t k = adj.offsets[u]; k < adj.offsets[u + 1]; ++k) {
        const NodeId w = in[static_cast<std::size_t>(adj.targets[k])];
        if (w == kNone) {
          found = true;
        } else if (dist[static_cast<std::size_t>(w)] == kUnreached) {
          dist[static_cast<std::size_t>(w)] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  };

  // Iterative DFS along the layers; augments and returns true on success.
  auto augment = [&](NodeId root) {
    path_u.assign(1, root);
    path_v.clear();
    while (!path_u.empty()) {
      const auto u = static_cast<std::size_t>(path_u.back());
      if (cursor[u] == adj.offsets[u + 1]) {
        dist[u] = kUnreached;
        path_u.pop_back();
        if (!path_v.empty()) path_v.pop_back();
        continue;
      }
      const NodeId v = adj.targets[cursor[u]++];
      const NodeId w = in[static_cast<std::size_t>(v)];
      if (w == kNone) {
        path_v.push_back(v);
        for (std::size_t i = 0; i < path_u.size(); ++i) {
          out[static_cast<std::size_t>(path_u[i])] = path_v[i];
          in[static_cast<std::size_t>(path_v[i])] = path_u[i];
        }
        return true;
      }
      if (dist[static_cast<std::size_t>(w)] == dist[u] + 1) {
        path_v.push_back(v);
        path_u.push_back(w);
      }
    }
    return false;
  };

  while (layer()) {
    for (std::size_t u = 0; u < un; ++u) cursor[u] = adj.offsets[u];
    for (const NodeId u : order) {
      if (out[static_cast<std::size_t>(u)] == kNone && augment(u)) ++size;
    }
  }
  MatchingBuilder::set_size(m, size);
  return m;
}

DriverSet driver_set(const DirectedGraph& g, const Matching& m, std::uint64_t tie_seed) {
  if (m.node_count() != g.node_count()) {
    throw std::invalid_argument("matching and graph disagree on node count");
  }
  DriverSet d;
  const NodeId n = g.node_count();
  for (NodeId v = 0; v < n; ++v) {
    if (!m.predecessor(v)) d.drivers.push_back(v);
  }
  if (d.drivers.empty() && n > 0) {
    Rng rng(tie_seed);
    d.drivers.push_back(static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n))));
    d.forced = true;
  }
  d.n_d_fraction = n > 0 ? static_cast<double>(d.drivers.size()) / static_cast<double>(n) : 0.0;
  return d;
}

namespace {

/// Randomized alternating-path search used by the exchange walk.
class ExchangeWalker {
 public:
  ExchangeWalker(const DirectedGraph& g, Matching& m, Rng& rng)
      : g_(g),
        out_(MatchingBuilder::out(m)),
        in_(MatchingBuilder::in(m)),
        rng_(rng),
        seen_(static_cast<std::size_t>(g.node_count()), 0) {}

  /// Augments from a free out-copy to any free in-copy.
  void augment_from_source(NodeId root) {
    next_stamp();
    frames_.clear();
    push(root, g_.out_degree(root));
    while (!frames_.empty()) {
      const std::size_t top = frames_.size() - 1;
      Frame& f = frames_[top];
      const auto nbrs = g_.out_neighbors(f.node);
      if (f.tried == nbrs.size()) {
        frames_.pop_back();
        continue;
      }
      const NodeId y = nbrs[(f.start + f.tried++) % nbrs.size()];
      auto& mark = seen_[static_cast<std::size_t>(y)];
      if (mark == stamp_) continue;
      mark = stamp_;
      f.chosen = y;
      const NodeId w = in_[static_cast<std::size_t>(y)];
      if (w == kNone) {
        for (const Frame& step : frames_) {
          out_[static_cast<std::size_t>(step.node)] = step.chosen;
          in_[static_cast<std::size_t>(step.chosen)] = step.node;
        }
        return;
      }
      push(w, g_.out_degree(w));
    }
    throw std::logic_error("exchange walk lost an augmenting path");
  }

  /// Augments from a free in-copy back to any free out-copy.
  void augment_from_target(NodeId root) {
    next_stamp();
    frames_.clear();
    push(root, g_.in_degree(root));
    while (!frames_.empty()) {
      const std::size_t top = frames_.size() - 1;
      Frame& f = frames_[top];
      const auto nbrs = g_.in_neighbors(f.node);
      if (f.tried == nbrs.size()) {
        frames_.pop_back();
        continue;
      }
      const NodeId x = nbrs[(f.start + f.tried++) % nbrs.size()];
      auto& mark = seen_[static_cast<std::size_t>(x)];
      if (mark == stamp_) continue;
      mark = stamp_;
      f.chosen = x;
      const NodeId z = out_[static_cast<std::size_t>(x)];
      if (z == kNone) {
        for (const Frame& step : frames_) {
          in_[static_cast<std::size_t>(step.node)] = step.chosen;
          out_[static_cast<std::size_t>(step.chosen)] = step.node;
        }
        return;
      }
      push(z, g_.in_degree(z));
    }
    throw std::logic_error("exchange walk lost an augmenting path");
  }

 private:
  struct Frame {
    NodeId node;
    std::size_t start;
    std::size_t tried;
    NodeId chosen;
  };

  void push(NodeId node, std::size_t degree) {
    const std::size_t start = degree > 1 ? rng_.below(degree) : 0;
    frames_.push_back({node, start, 0, kNone});
  }

  void next_stamp() {
    if (++stamp_ == 0) {
      std::fill(seen_.begin(), seen_.end(), 0);
      stamp_ = 1;
    }
  }

  const DirectedGraph& g_;
  std::vector<NodeId>& out_;
  std::vector<NodeId>& in_;
  Rng& rng_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
  std::vector<Frame> frames_;
};

}  // namespace

Matching sample_matching(const DirectedGraph& g, std::uint64_t rng_seed,
                         double walk_length_factor) {
  if (!(walk_length_factor >= 0.0)) {
    throw std::invalid_argument("walk length factor must be >= 0");
  }
  Matching m = maximum_matching(g, derive_seed(rng_seed, 0));
  if (m.size() == 0) return m;

  Rng rng(derive_seed(rng_seed, 1));
  const auto steps = static_cast<std::uint64_t>(
      std::ceil(walk_length_factor * static_cast<double>(g.edge_count())));
  const auto n = static_cast<std::uint64_t>(g.node_count());
  auto& out = MatchingBuilder::out(m);
  auto& in = MatchingBuilder::in(m);
  ExchangeWalker walker(g, m, rng);
  for (std::uint64_t s = 0; s < steps; ++s) {
    NodeId u;
    do {
      u = static_cast<NodeId>(rng.below(n));
    } while (out[static_cast<std::size_t>(u)] == kNone);
    const NodeId v = out[static_cast<std::size_t>(u)];
    out[static_cast<std::size_t>(u)] = kNone;
    in[static_cast<std::size_t>(v)] = kNone;
    if (rng.below(2) == 0) {
      walker.augment_from_source(u);
    } else {
      walker.augment_from_target(v);
    }
  }
  return m;
}

}  // namespace ccon
