#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "osnim/types.hpp"

namespace osnim {

// Directed follower graph in tweet-propagation orientation: an arc u -> v
// means v follows u, so v receives what u tweets. out_degree(u) is u's
// follower count, in_degree(v) is v's following count.
//
// Stored as CSR with targets sorted inside each row; immutable once built.
class SocialGraph {
 public:
  SocialGraph() : offsets_(1, 0) {}

  // Builds from arbitrary arcs over [0, node_count). Self-loops are dropped
  // and duplicates collapsed; the number of dropped self-loops is kept.
  static SocialGraph from_arcs(std::size_t node_count,
                               std::vector<std::pair<NodeId, NodeId>> arcs);

  std::size_t node_count() const { return offsets_.size() - 1; }
  std::size_t arc_count() const { return targets_.size(); }

  std::span<const NodeId> followers(NodeId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::size_t out_degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  std::size_t in_degree(NodeId v) const { return in_degree_[v]; }

  // CSR arrays; arc index i is the position of a target in targets().
  std::span<const std::uint64_t> offsets() const { return offsets_; }
  std::span<const NodeId> targets() const { return targets_; }

  std::size_t dropped_self_loops() const { return dropped_self_loops_; }
  std::size_t collapsed_duplicates() const { return collapsed_duplicates_; }

  // 64-bit content hash over node count and arcs.
  std::uint64_t fingerprint() const;

  bool operator==(const SocialGraph& other) const {
    return offsets_ == other.offsets_ && targets_ == other.targets_;
  }

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<std::uint32_t> in_degree_;
  std::size_t dropped_self_loops_ = 0;
  std::size_t collapsed_duplicates_ = 0;
};

// Moments of the out-degree (follower count) distribution.
struct DegreeStats {
  double mean_out_degree = 0;           // <k>
  double second_moment_out_degree = 0;  // <k^2>
  std::map<std::size_t, double> degree_histogram;  // k -> q_k
  std::size_t max_out_degree = 0;
  std::size_t node_count = 0;
  std::size_t arc_count = 0;
};

DegreeStats degree_stats(const SocialGraph& graph);

// Stats for a hypothetical graph given only its degree histogram
// (k -> frequency, need not be normalized).
DegreeStats degree_stats_from_histogram(const std::map<std::size_t, double>& histogram,
                                        std::size_t node_count);

}  // namespace osnim
