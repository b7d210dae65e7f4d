#include "osnim/exact.hpp"

#include <bit>
#include <cmath>

namespace osnim {

NodeMask to_mask(std::span<const NodeId> nodes) {
  NodeMask m = 0;
  for (NodeId v : nodes) {
    if (v >= 64) throw TooLarge("node id does not fit a 64-bit mask");
    m |= NodeMask{1} << v;
  }
  return m;
}

NodeSet from_mask(NodeMask mask) {
  NodeSet out;
  while (mask) {
    out.push_back(static_cast<NodeId>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

namespace {

struct ArcList {
  std::vector<NodeId> tail, head;
};

ArcList arcs_of(const SocialGraph& g) {
  ArcList a;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.followers(u)) {
      a.tail.push_back(u);
      a.head.push_back(v);
    }
  }
  return a;
}

void check_size(const SocialGraph& g) {
  if (g.arc_count() > kMaxExactArcs) throw TooLarge("exact enumeration refuses more than 25 arcs");
  if (g.node_count() > kMaxExactNodes) throw TooLarge("exact enumeration refuses more than 64 nodes");
}

// Out-neighbour masks of the live subgraph selected by `live` (bit i = arc i).
void live_out_masks(const ArcList& arcs, std::uint64_t live, std::vector<NodeMask>& out) {
  std::fill(out.begin(), out.end(), 0);
  while (live) {
    const int i = std::countr_zero(live);
    live &= live - 1;
    out[arcs.tail[i]] |= NodeMask{1} << arcs.head[i];
  }
}

NodeMask closure(NodeMask start, const std::vector<NodeMask>& out) {
  NodeMask reached = start, frontier = start;
  while (frontier) {
    NodeMask next = 0;
    for (NodeMask f = frontier; f; f &= f - 1) next |= out[std::countr_zero(f)];
    frontier = next & ~reached;
    reached |= next;
  }
  return reached;
}

std::vector<NodeMask> closed_followers(const SocialGraph& g) {
  std::vector<NodeMask> m(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    m[u] = NodeMask{1} << u;
    for (NodeId v : g.followers(u)) m[u] |= NodeMask{1} << v;
  }
  return m;
}

NodeMask readers_of(NodeMask active, const std::vector<NodeMask>& closed) {
  NodeMask r = 0;
  for (NodeMask a = active; a; a &= a - 1) r |= closed[std::countr_zero(a)];
  return r;
}

// Binomial weights p^j (1-p)^(E-j) for j = 0..E.
std::vector<double> subset_weights(std::size_t arcs, double p) {
  std::vector<double> w(arcs + 1);
  for (std::size_t j = 0; j <= arcs; ++j) {
    w[j] = std::pow(p, static_cast<double>(j)) * std::pow(1 - p, static_cast<double>(arcs - j));
  }
  return w;
}

}  // namespace

double exact_influence(const SocialGraph& graph, std::span<const NodeId> seeds, double p,
                       Metric metric, const std::optional<ReciprocationModel>& reciprocation) {
  check_size(graph);
  if (!(p >= 0 && p <= 1)) throw Error("p must lie in [0, 1]");
  for (NodeId v : seeds) {
    if (v >= graph.node_count()) throw Error("seed node out of range");
  }
  const ArcList arcs = arcs_of(graph);
  const std::size_t e = graph.arc_count();
  const auto closed = closed_followers(graph);
  const auto weights = subset_weights(e, p);

  // Reciprocation outcomes over the distinct seeds.
  const NodeSet distinct = from_mask(to_mask(seeds));
  const std::size_t k = distinct.size();
  std::vector<double> outcome_prob(std::size_t{1} << k, 1.0);
  std::vector<NodeMask> outcome_active(std::size_t{1} << k, 0);
  for (std::size_t o = 0; o < outcome_prob.size(); ++o) {
    for (std::size_t j = 0; j < k; ++j) {
      const double r = reciprocation ? reciprocation->probability(graph, distinct[j]) : 1.0;
      if (o >> j & 1) {
        outcome_prob[o] *= r;
        outcome_active[o] |= NodeMask{1} << distinct[j];
      } else {
        outcome_prob[o] *= 1 - r;
      }
    }
  }

  std::vector<NodeMask> out(graph.node_count());
  double total = 0;
  for (std::uint64_t live = 0; live < (std::uint64_t{1} << e); ++live) {
    live_out_masks(arcs, live, out);
    double value = 0;
    for (std::size_t o = 0; o < outcome_prob.size(); ++o) {
      if (outcome_prob[o] == 0) continue;
      const NodeMask reach = closure(outcome_active[o], out);
      const NodeMask counted = metric == Metric::retweeters ? reach : readers_of(reach, closed);
      value += outcome_prob[o] * std::popcount(counted);
    }
    total += weights[static_cast<std::size_t>(std::popcount(live))] * value;
  }
  return total;
}

ExactSetFunction::ExactSetFunction(const SocialGraph& graph, Metric metric, std::size_t max_seed_size)
    : node_count_(graph.node_count()),
      arc_count_(graph.arc_count()),
      max_seed_size_(std::min(max_seed_size, graph.node_count())),
      metric_(metric) {
  check_size(graph);
  if (node_count_ > 20) throw TooLarge("tabulated exact objective refuses more than 20 nodes");
  const std::size_t n = node_count_;
  slot_.assign(std::size_t{1} << n, -1);
  std::vector<NodeMask> masks;
  for (NodeMask m = 0; m < (NodeMask{1} << n); ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) <= max_seed_size_) {
      slot_[m] = static_cast<std::int32_t>(masks.size());
      masks.push_back(m);
    }
  }
  const std::size_t width = arc_count_ + 1;
  counts_.assign(masks.size() * width, 0);

  const ArcList arcs = arcs_of(graph);
  const auto closed = closed_followers(graph);
  std::vector<NodeMask> out(n), single(n);
  std::vector<NodeMask> reach(masks.size());
  for (std::uint64_t live = 0; live < (std::uint64_t{1} << arc_count_); ++live) {
    live_out_masks(arcs, live, out);
    for (NodeId v = 0; v < n; ++v) single[v] = closure(NodeMask{1} << v, out);
    const auto kept = static_cast<std::size_t>(std::popcount(live));
    // masks are increasing, so m minus its lowest bit already has a row.
    for (std::size_t i = 1; i < masks.size(); ++i) {
      const NodeMask m = masks[i];
      reach[i] = reach[static_cast<std::size_t>(slot_[m & (m - 1)])] | single[std::countr_zero(m)];
      const NodeMask counted = metric == Metric::retweeters ? reach[i] : readers_of(reach[i], closed);
      counts_[i * width + kept] += static_cast<std::uint64_t>(std::popcount(counted));
    }
  }
}

std::span<const std::uint64_t> ExactSetFunction::counts(NodeMask seeds) const {
  if (seeds >> node_count_ || slot_[seeds] < 0) throw Error("seed set not tabulated");
  const std::size_t width = arc_count_ + 1;
  return {counts_.data() + static_cast<std::size_t>(slot_[seeds]) * width, width};
}

double ExactSetFunction::value(NodeMask seeds, double p) const {
  const auto c = counts(seeds);
  const auto w = subset_weights(arc_count_, p);
  double total = 0;
  for (std::size_t j = 0; j < c.size(); ++j) total += w[j] * static_cast<double>(c[j]);
  return total;
}

double ExactSetFunction::value(NodeMask seeds, double p, std::span<const double> r) const {
  if (r.size() != node_count_) throw Error("reciprocation vector does not match graph");
  const NodeSet members = from_mask(seeds);
  double total = 0;
  // Sum over sub-masks `active` of seeds.
  NodeMask active = seeds;
  for (;;) {
    double prob = 1;
    for (NodeId v : members) prob *= (active >> v & 1) ? r[v] : 1 - r[v];
    if (prob != 0) total += prob * value(active, p);
    if (active == 0) break;
    active = (active - 1) & seeds;
  }
  return total;
}

}  // namespace osnim
