#include "osnim/generator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <vector>

#include "osnim/rng.hpp"

namespace osnim {

DegreeHistogram target_distribution(const DegreeSpec& spec) {
  DegreeHistogram weights;
  if (const auto* pl = std::get_if<PowerLawDegrees>(&spec)) {
    if (!(pl->exponent > 1)) throw Error("power-law exponent must exceed 1");
    if (pl->min_degree > pl->max_degree) throw Error("min degree exceeds max degree");
    for (std::size_t k = pl->min_degree; k <= pl->max_degree; ++k) {
      // k = 0 carries no mass under a power law.
      if (k == 0) continue;
      weights[k] = std::pow(static_cast<double>(k), -pl->exponent);
    }
  } else {
    for (const auto& [k, w] : std::get<DegreeHistogram>(spec)) {
      if (w < 0) throw Error("negative histogram weight");
      if (w > 0) weights[k] = w;
    }
  }
  double total = 0;
  for (const auto& [k, w] : weights) total += w;
  if (!(total > 0)) throw Error("degree spec has no mass");
  for (auto& [k, w] : weights) w /= total;
  return weights;
}

double analytic_mean_degree(const DegreeSpec& spec) {
  double mean = 0;
  for (const auto& [k, q] : target_distribution(spec)) mean += q * static_cast<double>(k);
  return mean;
}

SocialGraph generate_configuration_graph(const DegreeSpec& spec, std::size_t node_count,
                                         std::uint64_t seed) {
  const DegreeHistogram target = target_distribution(spec);
  std::vector<std::size_t> degrees;
  std::vector<double> cdf;
  double acc = 0;
  for (const auto& [k, q] : target) {
    degrees.push_back(k);
    acc += q;
    cdf.push_back(acc);
  }
  cdf.back() = 1.0;

  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> arcs;
  std::unordered_set<std::uint64_t> chosen;
  const std::uint64_t others = node_count > 0 ? node_count - 1 : 0;
  for (std::size_t u = 0; u < node_count; ++u) {
    const double x = rng.uniform();
    const auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), x) - cdf.begin());
    const std::size_t d = std::min<std::uint64_t>(degrees[std::min(idx, degrees.size() - 1)], others);
    // Floyd's sampling of d distinct values from [0, others); values >= u shift by one.
    chosen.clear();
    for (std::uint64_t j = others - d; j < others; ++j) {
      const std::uint64_t t = rng.below(j + 1);
      chosen.insert(chosen.count(t) ? j : t);
    }
    std::vector<NodeId> heads;
    heads.reserve(d);
    for (std::uint64_t t : chosen) heads.push_back(static_cast<NodeId>(t >= u ? t + 1 : t));
    std::sort(heads.begin(), heads.end());
    for (NodeId v : heads) arcs.emplace_back(static_cast<NodeId>(u), v);
  }
  return SocialGraph::from_arcs(node_count, std::move(arcs));
}

}  // namespace osnim
