#include "osnim/transforms.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace osnim {

namespace {

TransformedGraph assemble(std::size_t original_nodes, std::map<std::pair<NodeId, NodeId>, double> arcs,
                          std::vector<double> weights) {
  TransformedGraph t;
  t.original_nodes = original_nodes;
  std::vector<std::pair<NodeId, NodeId>> list;
  list.reserve(arcs.size());
  for (const auto& [arc, prob] : arcs) list.push_back(arc);
  t.graph = SocialGraph::from_arcs(2 * original_nodes, list);
  // from_arcs orders arcs lexicographically, as std::map does.
  t.arc_probability.reserve(arcs.size());
  for (const auto& [arc, prob] : arcs) t.arc_probability.push_back(prob);
  t.node_map.resize(original_nodes);
  for (NodeId u = 0; u < original_nodes; ++u) t.node_map[u] = static_cast<NodeId>(original_nodes + u);
  t.node_weight = std::move(weights);
  return t;
}

}  // namespace

NodeSet TransformedGraph::image(std::span<const NodeId> originals) const {
  NodeSet out;
  for (NodeId u : originals) {
    if (u >= original_nodes) throw Error("node outside the original graph");
    out.push_back(node_map[u]);
  }
  return out;
}

TransformedGraph follow_back_transform(const SocialGraph& graph, const ReciprocationModel& reciprocation,
                                       double p, std::span<const double> p0) {
  const std::size_t n = graph.node_count();
  if (!p0.empty() && p0.size() != n) throw Error("p0 vector does not match graph");
  std::map<std::pair<NodeId, NodeId>, double> arcs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : graph.followers(u)) arcs[{u, v}] = p;
    const double response = p0.empty() ? 1.0 : p0[u];
    arcs[{static_cast<NodeId>(n + u), u}] = reciprocation.probability(graph, u) * response;
  }
  return assemble(n, std::move(arcs), std::vector<double>(2 * n, 1.0));
}

TransformedGraph reader_transform(const SocialGraph& graph, double p) {
  const std::size_t n = graph.node_count();
  std::map<std::pair<NodeId, NodeId>, double> arcs;
  for (NodeId u = 0; u < n; ++u) {
    arcs[{u, static_cast<NodeId>(n + u)}] = 1.0;
    for (NodeId v : graph.followers(u)) {
      arcs[{u, v}] = p;
      arcs[{u, static_cast<NodeId>(n + v)}] = 1.0;
    }
  }
  std::vector<double> weights(2 * n, 0.0);
  std::fill(weights.begin() + static_cast<std::ptrdiff_t>(n), weights.end(), 1.0);
  return assemble(n, std::move(arcs), std::move(weights));
}

double exact_weighted_influence(const TransformedGraph& t, std::span<const NodeId> seeds) {
  const SocialGraph& g = t.graph;
  if (g.node_count() > kMaxExactNodes) throw TooLarge("transformed graph exceeds 64 nodes");
  std::vector<NodeMask> certain(g.node_count(), 0);
  std::vector<std::size_t> uncertain;
  std::vector<NodeId> tails(g.arc_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (auto i = g.offsets()[u]; i < g.offsets()[u + 1]; ++i) tails[i] = u;
  }
  for (std::size_t i = 0; i < g.arc_count(); ++i) {
    const double prob = t.arc_probability[i];
    if (prob >= 1) {
      certain[tails[i]] |= NodeMask{1} << g.targets()[i];
    } else if (prob > 0) {
      uncertain.push_back(i);
    }
  }
  if (uncertain.size() > kMaxExactArcs) throw TooLarge("too many uncertain arcs to enumerate");
  const NodeMask start = to_mask(seeds);

  std::vector<NodeMask> out(g.node_count());
  double total = 0;
  for (std::uint64_t live = 0; live < (std::uint64_t{1} << uncertain.size()); ++live) {
    double prob = 1;
    out = certain;
    for (std::size_t j = 0; j < uncertain.size(); ++j) {
      const std::size_t i = uncertain[j];
      if (live >> j & 1) {
        prob *= t.arc_probability[i];
        out[tails[i]] |= NodeMask{1} << g.targets()[i];
      } else {
        prob *= 1 - t.arc_probability[i];
      }
    }
    NodeMask reached = start, frontier = start;
    while (frontier) {
      NodeMask next = 0;
      for (NodeMask f = frontier; f; f &= f - 1) next |= out[std::countr_zero(f)];
      frontier = next & ~reached;
      reached |= next;
    }
    double weight = 0;
    for (NodeMask r = reached; r; r &= r - 1) weight += t.node_weight[std::countr_zero(r)];
    total += prob * weight;
  }
  return total;
}

}  // namespace osnim
