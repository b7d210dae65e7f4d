#include "osnim/prune.hpp"

#include "osnim/rng.hpp"

namespace osnim {

PrunedGraph prune(const SocialGraph& graph, double p, std::uint64_t seed) {
  if (!(p >= 0 && p <= 1)) throw Error("prune: p must lie in [0, 1]");
  PrunedGraph out;
  out.parent_ = &graph;
  out.p_ = p;
  out.seed_ = seed;
  const auto offsets = graph.offsets();
  const auto targets = graph.targets();
  out.offsets_.assign(graph.node_count() + 1, 0);
  out.targets_.reserve(static_cast<std::size_t>(static_cast<double>(targets.size()) * p * 1.1) + 16);
  for (std::size_t u = 0; u < graph.node_count(); ++u) {
    for (auto i = offsets[u]; i < offsets[u + 1]; ++i) {
      if (keyed_uniform(seed, Stream::arc_keep, i) < p) out.targets_.push_back(targets[i]);
    }
    out.offsets_[u + 1] = out.targets_.size();
  }
  return out;
}

PrunedGraph pruned_from_graph(const SocialGraph& graph) {
  PrunedGraph out;
  out.parent_ = &graph;
  out.offsets_.assign(graph.offsets().begin(), graph.offsets().end());
  out.targets_.assign(graph.targets().begin(), graph.targets().end());
  return out;
}

}  // namespace osnim
