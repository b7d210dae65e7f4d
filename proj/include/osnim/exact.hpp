#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "osnim/graph.hpp"
#include "osnim/reciprocation.hpp"

namespace osnim {

// Bitmask over node ids < 64.
using NodeMask = std::uint64_t;

NodeMask to_mask(std::span<const NodeId> nodes);
NodeSet from_mask(NodeMask mask);

inline constexpr std::size_t kMaxExactArcs = 25;
inline constexpr std::size_t kMaxExactNodes = 64;

// Exact E|phi(B)| or E|psi(B)| by enumerating all 2^E live-arc subsets (and,
// with a reciprocation model, all 2^|B| reciprocation outcomes). Throws
// TooLarge beyond kMaxExactArcs arcs or kMaxExactNodes nodes.
double exact_influence(const SocialGraph& graph, std::span<const NodeId> seeds, double p,
                       Metric metric,
                       const std::optional<ReciprocationModel>& reciprocation = {});

// The same expectation tabulated for every seed set of size <= max_seed_size,
// stored as a polynomial in p so one enumeration serves any p.
class ExactSetFunction {
 public:
  ExactSetFunction(const SocialGraph& graph, Metric metric, std::size_t max_seed_size);

  std::size_t node_count() const { return node_count_; }
  std::size_t max_seed_size() const { return max_seed_size_; }
  Metric metric() const { return metric_; }

  // Seeds all active.
  double value(NodeMask seeds, double p) const;
  // Each seed v active independently with probability r[v].
  double value(NodeMask seeds, double p, std::span<const double> r) const;

 private:
  std::span<const std::uint64_t> counts(NodeMask seeds) const;

  std::size_t node_count_;
  std::size_t arc_count_;
  std::size_t max_seed_size_;
  Metric metric_;
  std::vector<std::int32_t> slot_;      // mask -> row, -1 when not tabulated
  std::vector<std::uint64_t> counts_;   // row * (arc_count + 1) + kept arcs
};

}  // namespace osnim
