#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "osnim/graph.hpp"

namespace osnim {

// One live-arc sample: every arc of the parent kept independently with
// probability p. The keep decision for arc i is uniform(seed, i) < p, so
// samples at p1 <= p2 with the same seed are nested.
class PrunedGraph {
 public:
  const SocialGraph& parent() const { return *parent_; }
  double p() const { return p_; }
  std::uint64_t seed() const { return seed_; }

  std::size_t node_count() const { return offsets_.size() - 1; }
  std::size_t kept_arc_count() const { return targets_.size(); }
  std::span<const NodeId> kept_followers(NodeId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }

 private:
  friend PrunedGraph prune(const SocialGraph&, double, std::uint64_t);
  friend PrunedGraph pruned_from_graph(const SocialGraph&);

  const SocialGraph* parent_ = nullptr;
  double p_ = 1;
  std::uint64_t seed_ = 0;
  std::vector<std::uint64_t> offsets_;
  std::vector<NodeId> targets_;
};

PrunedGraph prune(const SocialGraph& graph, double p, std::uint64_t seed);

// Every arc kept (p = 1); handy when a caller already holds the live arcs.
PrunedGraph pruned_from_graph(const SocialGraph& graph);

}  // namespace osnim
