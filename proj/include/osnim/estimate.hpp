#pragma once

#include <optional>
#include <span>
#include <vector>

#include "osnim/reciprocation.hpp"
#include "osnim/sample_bank.hpp"

namespace osnim {

struct InfluenceEstimate {
  double mean = 0;
  double std_error = 0;  // +inf when only one sample
  std::size_t n_samples = 0;
  double ci_low = 0;
  double ci_high = 0;
  Metric metric = Metric::retweeters;

  static InfluenceEstimate from_samples(std::span<const double> values, Metric metric);
};

// Per-sample objective for seed set B: the members of B that reciprocate in
// the sample are initially active; the value is |reach| or |readers(reach)|.
// Without a reciprocation model every member of B is active.
std::vector<double> influence_samples(const SampleBank& bank, std::span<const NodeId> seeds,
                                      Metric metric,
                                      const std::optional<ReciprocationModel>& reciprocation = {},
                                      WorkerPool& pool = WorkerPool::shared());

InfluenceEstimate estimate_influence(const SampleBank& bank, std::span<const NodeId> seeds,
                                     Metric metric,
                                     const std::optional<ReciprocationModel>& reciprocation = {},
                                     WorkerPool& pool = WorkerPool::shared());

}  // namespace osnim
