#include "osnim/estimate.hpp"

#include <cmath>
#include <limits>

namespace osnim {

InfluenceEstimate InfluenceEstimate::from_samples(std::span<const double> values, Metric metric) {
  InfluenceEstimate e;
  e.metric = metric;
  e.n_samples = values.size();
  if (values.empty()) return e;
  double sum = 0;
  for (double v : values) sum += v;
  const double n = static_cast<double>(values.size());
  e.mean = sum / n;
  if (values.size() == 1) {
    e.std_error = std::numeric_limits<double>::infinity();
  } else {
    double ss = 0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    e.std_error = std::sqrt(ss / (n - 1) / n);
  }
  e.ci_low = e.mean - 1.96 * e.std_error;
  e.ci_high = e.mean + 1.96 * e.std_error;
  return e;
}

std::vector<double> influence_samples(const SampleBank& bank, std::span<const NodeId> seeds,
                                      Metric metric,
                                      const std::optional<ReciprocationModel>& reciprocation,
                                      WorkerPool& pool) {
  const SocialGraph& g = bank.graph();
  std::vector<double> r;
  for (NodeId v : seeds) {
    if (v >= g.node_count()) throw Error("seed node " + std::to_string(v) + " not in graph");
    if (reciprocation) r.push_back(reciprocation->probability(g, v));
  }
  std::vector<double> values(bank.size());
  pool.parallel_for(bank.size(), [&](std::size_t i, std::size_t) {
    NodeSet active;
    active.reserve(seeds.size());
    for (std::size_t j = 0; j < seeds.size(); ++j) {
      if (!reciprocation || reciprocates(r[j], bank.seed(i), seeds[j])) active.push_back(seeds[j]);
    }
    if (metric == Metric::retweeters) {
      values[i] = static_cast<double>(reach_count(bank.sample(i), active));
    } else {
      values[i] = static_cast<double>(reader_set(g, reach_set(bank.sample(i), active)).size());
    }
  });
  return values;
}

InfluenceEstimate estimate_influence(const SampleBank& bank, std::span<const NodeId> seeds,
                                     Metric metric,
                                     const std::optional<ReciprocationModel>& reciprocation,
                                     WorkerPool& pool) {
  const auto values = influence_samples(bank, seeds, metric, reciprocation, pool);
  return InfluenceEstimate::from_samples(values, metric);
}

}  // namespace osnim
