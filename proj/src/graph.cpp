#include "osnim/graph.hpp"

#include <algorithm>

#include "osnim/rng.hpp"

namespace osnim {

std::string_view to_string(Metric metric) {
  return metric == Metric::retweeters ? "retweeters" : "readers";
}

Metric parse_metric(std::string_view text) {
  if (text == "retweeters") return Metric::retweeters;
  if (text == "readers") return Metric::readers;
  throw Error("unknown metric '" + std::string(text) + "'");
}

SocialGraph SocialGraph::from_arcs(std::size_t node_count,
                                   std::vector<std::pair<NodeId, NodeId>> arcs) {
  SocialGraph g;
  const std::size_t before = arcs.size();
  std::erase_if(arcs, [](const auto& a) { return a.first == a.second; });
  g.dropped_self_loops_ = before - arcs.size();
  for (const auto& [u, v] : arcs) {
    if (u >= node_count || v >= node_count) throw Error("arc endpoint out of range");
  }
  std::sort(arcs.begin(), arcs.end());
  const std::size_t with_dups = arcs.size();
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  g.collapsed_duplicates_ = with_dups - arcs.size();

  g.offsets_.assign(node_count + 1, 0);
  g.in_degree_.assign(node_count, 0);
  g.targets_.reserve(arcs.size());
  for (const auto& [u, v] : arcs) {
    ++g.offsets_[u + 1];
    ++g.in_degree_[v];
    g.targets_.push_back(v);
  }
  for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
  return g;
}

std::uint64_t SocialGraph::fingerprint() const {
  std::uint64_t h = mix64(node_count());
  for (std::size_t u = 0; u < node_count(); ++u) {
    h = mix64(h ^ (offsets_[u + 1] - offsets_[u]));
  }
  for (NodeId t : targets_) h = mix64(h ^ t);
  return h;
}

DegreeStats degree_stats_from_histogram(const std::map<std::size_t, double>& histogram,
                                        std::size_t node_count) {
  DegreeStats s;
  double total = 0;
  for (const auto& [k, w] : histogram) {
    if (w < 0) throw Error("negative histogram weight");
    total += w;
  }
  if (total <= 0) throw Error("empty degree histogram");
  for (const auto& [k, w] : histogram) {
    if (w == 0) continue;
    const double q = w / total;
    s.degree_histogram[k] = q;
    s.mean_out_degree += q * static_cast<double>(k);
    s.second_moment_out_degree += q * static_cast<double>(k) * static_cast<double>(k);
    s.max_out_degree = std::max(s.max_out_degree, k);
  }
  s.node_count = node_count;
  s.arc_count = static_cast<std::size_t>(s.mean_out_degree * static_cast<double>(node_count) + 0.5);
  return s;
}

DegreeStats degree_stats(const SocialGraph& graph) {
  if (graph.node_count() == 0) throw Error("degree_stats: empty graph");
  std::map<std::size_t, std::size_t> counts;
  double sum_sq = 0;
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    const std::size_t k = graph.out_degree(u);
    ++counts[k];
    sum_sq += static_cast<double>(k) * static_cast<double>(k);
  }
  DegreeStats s;
  const double n = static_cast<double>(graph.node_count());
  s.node_count = graph.node_count();
  s.arc_count = graph.arc_count();
  s.mean_out_degree = static_cast<double>(graph.arc_count()) / n;
  s.second_moment_out_degree = sum_sq / n;
  for (const auto& [k, c] : counts) s.degree_histogram[k] = static_cast<double>(c) / n;
  s.max_out_degree = counts.rbegin()->first;
  return s;
}

}  // namespace osnim
