#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osnim/coverage.hpp"
#include "osnim/estimate.hpp"
#include "osnim/exact.hpp"
#include "osnim/reciprocation.hpp"
#include "osnim/sample_bank.hpp"

namespace osnim {

struct Attempt {
  NodeId node;
  bool reciprocated;
};

// Ordered followings chosen by a strategy. objective_curve[i] is the
// estimate for the first i picks (index 0 is the empty set), filled in by
// the bank-based strategies or by evaluate_curve.
struct SelectionResult {
  std::string strategy;
  std::size_t k = 0;
  NodeSet picks;
  std::vector<double> step_gains;
  std::vector<InfluenceEstimate> objective_curve;
  std::vector<InfluenceEstimate> objective_curve_without_seeds;
  std::vector<Attempt> attempts;
  std::vector<std::string> warnings;
  std::string candidate_pool = "all";
};

struct GreedyOptions {
  bool lazy = true;
  // Restrict candidates to the top-M nodes by effective degree; 0 = all.
  std::size_t candidate_pool = 0;
};

// Candidates sorted by r_v * d_v descending, ties by smaller id.
NodeSet effective_degree_order(const SocialGraph& graph, const ReciprocationModel& reciprocation);

SelectionResult greedy_select(const SampleBank& bank, std::size_t k, Metric metric,
                              const ReciprocationModel& reciprocation, const GreedyOptions& options = {},
                              WorkerPool& pool = WorkerPool::shared());

SelectionResult high_degree_select(const SocialGraph& graph, std::size_t k,
                                   const ReciprocationModel& reciprocation);

SelectionResult random_select(const SocialGraph& graph, std::size_t k, std::uint64_t seed);

// Online greedy: propose the best candidate assuming it reciprocates, draw
// R_v once, keep it or discard it for good. Stops at k reciprocations,
// max_attempts proposals, or an exhausted pool.
SelectionResult dynamic_greedy_simulate(const SampleBank& bank, std::size_t k, Metric metric,
                                        const ReciprocationModel& reciprocation, std::uint64_t seed,
                                        std::size_t max_attempts, const GreedyOptions& options = {},
                                        WorkerPool& pool = WorkerPool::shared());

// Fills objective_curve for result.picks on the bank. `reciprocation` filters
// seeds per sample; pass nullopt when every pick is known to be active.
void evaluate_curve(SelectionResult& result, const SampleBank& bank, Metric metric,
                    const std::optional<ReciprocationModel>& reciprocation,
                    WorkerPool& pool = WorkerPool::shared());

// Exact-objective variants for small graphs. `r` empty means certain.
SelectionResult greedy_select_exact(const ExactSetFunction& objective, double p, std::size_t k,
                                    std::span<const double> r = {}, bool lazy = false,
                                    std::span<const NodeId> candidates = {});
SelectionResult dynamic_greedy_exact(const ExactSetFunction& objective, double p, std::size_t k,
                                     std::span<const char> reciprocated, std::size_t max_attempts);

struct OptimalSet {
  NodeSet nodes;
  double value = 0;
};

// Exhaustive maximum of the exact objective over all k-subsets; refuses
// instances with more than 10^6 subsets.
OptimalSet brute_force_optimal(const SocialGraph& graph, std::size_t k, double p, Metric metric,
                               const ReciprocationModel& reciprocation);
OptimalSet brute_force_optimal(const ExactSetFunction& objective, std::size_t k, double p,
                               std::span<const double> r = {});

}  // namespace osnim
