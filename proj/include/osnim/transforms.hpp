#pragma once

#include <span>
#include <vector>

#include "osnim/exact.hpp"
#include "osnim/graph.hpp"
#include "osnim/reciprocation.hpp"

namespace osnim {

// Node-doubled graph with per-arc success probabilities and node weights.
// Nodes [0, n) are the originals; node n + u is the copy attached to u.
struct TransformedGraph {
  SocialGraph graph;
  std::size_t original_nodes = 0;
  std::vector<NodeId> node_map;            // original u -> added copy
  std::vector<double> arc_probability;     // by CSR arc index of `graph`
  std::vector<double> node_weight;

  NodeSet image(std::span<const NodeId> originals) const;
};

// Adds u' -> u for every u, succeeding with r_u * p0(u); original arcs keep p.
// Following B corresponds to seeding h(B). p0 empty means 1 everywhere.
TransformedGraph follow_back_transform(const SocialGraph& graph, const ReciprocationModel& reciprocation,
                                       double p, std::span<const double> p0 = {});

// Adds a reader copy u'' with arcs u -> u'' and v -> u'' for every original
// arc v -> u, all certain. Originals weigh 0, reader copies weigh 1.
TransformedGraph reader_transform(const SocialGraph& graph, double p);

// Sum of w_v * P(v active) by enumerating the arcs whose probability lies
// strictly between 0 and 1 (at most kMaxExactArcs of them).
double exact_weighted_influence(const TransformedGraph& transformed, std::span<const NodeId> seeds);

}  // namespace osnim
