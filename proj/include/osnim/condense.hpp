#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "osnim/graph.hpp"
#include "osnim/prune.hpp"

namespace osnim {

using ComponentId = std::uint32_t;

// SCC condensation of a pruned graph. Component ids follow Tarjan completion
// order, so every DAG arc points from a larger id to a smaller one: iterating
// ids upward visits successors before predecessors.
class CondensedDag {
 public:
  std::size_t node_count() const { return component_of_.size(); }
  std::size_t component_count() const { return member_offsets_.size() - 1; }
  std::size_t dag_arc_count() const { return dag_targets_.size(); }

  ComponentId component_of(NodeId v) const { return component_of_[v]; }
  std::uint32_t component_size(ComponentId c) const {
    return member_offsets_[c + 1] - member_offsets_[c];
  }
  std::span<const NodeId> members(ComponentId c) const {
    return {members_.data() + member_offsets_[c], members_.data() + member_offsets_[c + 1]};
  }
  std::span<const ComponentId> successors(ComponentId c) const {
    return {dag_targets_.data() + dag_offsets_[c], dag_targets_.data() + dag_offsets_[c + 1]};
  }

  void serialize(std::ostream& out) const;
  static CondensedDag deserialize(std::istream& in);

  bool operator==(const CondensedDag&) const = default;

 private:
  friend CondensedDag condense(const PrunedGraph&);

  std::vector<ComponentId> component_of_;
  std::vector<std::uint32_t> member_offsets_{0};
  std::vector<NodeId> members_;
  std::vector<std::uint32_t> dag_offsets_{0};
  std::vector<ComponentId> dag_targets_;
};

// Iterative Tarjan; stack depth is bounded by heap memory, not recursion.
CondensedDag condense(const PrunedGraph& pruned);

// Nodes reachable from sources (sources included), sorted ascending.
NodeSet reach_set(const CondensedDag& dag, std::span<const NodeId> sources);

// |reach_set(dag, sources)| without materializing the node set.
std::size_t reach_count(const CondensedDag& dag, std::span<const NodeId> sources);

// active plus every follower of an active node on the original graph,
// sorted ascending.
NodeSet reader_set(const SocialGraph& original, std::span<const NodeId> active);

}  // namespace osnim
