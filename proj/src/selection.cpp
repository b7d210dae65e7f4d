#include "osnim/selection.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include "osnim/greedy.hpp"

namespace osnim {

namespace {

std::size_t clamp_k(std::size_t k, std::size_t n, SelectionResult& result) {
  if (k > n) {
    result.warnings.push_back("K=" + std::to_string(k) + " exceeds node count " + std::to_string(n) +
                              "; truncated");
    return n;
  }
  return k;
}

NodeSet candidate_list(const SocialGraph& graph, const ReciprocationModel& reciprocation,
                       const GreedyOptions& options, SelectionResult& result) {
  if (options.candidate_pool == 0 || options.candidate_pool >= graph.node_count()) {
    NodeSet all(graph.node_count());
    std::iota(all.begin(), all.end(), NodeId{0});
    return all;
  }
  NodeSet order = effective_degree_order(graph, reciprocation);
  order.resize(options.candidate_pool);
  result.candidate_pool = "top-" + std::to_string(options.candidate_pool) + "-effective-degree";
  return order;
}

class ExactOracle {
 public:
  ExactOracle(const ExactSetFunction& f, double p, std::span<const double> r) : f_(f), p_(p), r_(r) {}

  double value(NodeMask m) const { return r_.empty() ? f_.value(m, p_) : f_.value(m, p_, r_); }
  double gain(NodeId v) { return value(current_ | NodeMask{1} << v) - current_value_; }
  double upper_bound(NodeId) { return std::numeric_limits<double>::infinity(); }
  void commit(NodeId v) {
    current_ |= NodeMask{1} << v;
    current_value_ = value(current_);
  }
  double current_value() const { return current_value_; }

 private:
  const ExactSetFunction& f_;
  double p_;
  std::span<const double> r_;
  NodeMask current_ = 0;
  double current_value_ = 0;
};

InfluenceEstimate exact_point(double value, Metric metric) {
  InfluenceEstimate e;
  e.mean = e.ci_low = e.ci_high = value;
  e.metric = metric;
  return e;
}

}  // namespace

NodeSet effective_degree_order(const SocialGraph& graph, const ReciprocationModel& reciprocation) {
  const auto r = reciprocation.probabilities(graph);
  std::vector<double> key(graph.node_count());
  for (NodeId v = 0; v < key.size(); ++v) key[v] = r[v] * static_cast<double>(graph.out_degree(v));
  NodeSet order(graph.node_count());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return key[a] > key[b]; });
  return order;
}

SelectionResult greedy_select(const SampleBank& bank, std::size_t k, Metric metric,
                              const ReciprocationModel& reciprocation, const GreedyOptions& options,
                              WorkerPool& pool) {
  SelectionResult result;
  result.strategy = "greedy";
  const SocialGraph& graph = bank.graph();
  result.k = k = clamp_k(k, graph.node_count(), result);
  std::vector<double> r;
  if (!reciprocation.is_certain()) r = reciprocation.probabilities(graph);
  const NodeSet candidates = candidate_list(graph, reciprocation, options, result);

  BankCoverage coverage(bank, metric, std::move(r), pool);
  GreedyPicker picker(coverage, candidates, options.lazy);
  result.objective_curve.push_back(coverage.estimate(true));
  result.objective_curve_without_seeds.push_back(coverage.estimate(false));
  while (result.picks.size() < k) {
    const auto best = picker.next();
    if (!best) break;
    picker.commit(best->node);
    result.picks.push_back(best->node);
    result.step_gains.push_back(best->gain);
    result.objective_curve.push_back(coverage.estimate(true));
    result.objective_curve_without_seeds.push_back(coverage.estimate(false));
  }
  return result;
}

SelectionResult high_degree_select(const SocialGraph& graph, std::size_t k,
                                   const ReciprocationModel& reciprocation) {
  SelectionResult result;
  result.strategy = "high_degree";
  result.k = k = clamp_k(k, graph.node_count(), result);
  result.picks = effective_degree_order(graph, reciprocation);
  result.picks.resize(k);
  return result;
}

SelectionResult random_select(const SocialGraph& graph, std::size_t k, std::uint64_t seed) {
  SelectionResult result;
  result.strategy = "random";
  result.k = k = clamp_k(k, graph.node_count(), result);
  NodeSet nodes(graph.node_count());
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(nodes.size() - i);
    std::swap(nodes[i], nodes[j]);
  }
  nodes.resize(k);
  result.picks = std::move(nodes);
  return result;
}

SelectionResult dynamic_greedy_simulate(const SampleBank& bank, std::size_t k, Metric metric,
                                        const ReciprocationModel& reciprocation, std::uint64_t seed,
                                        std::size_t max_attempts, const GreedyOptions& options,
                                        WorkerPool& pool) {
  SelectionResult result;
  result.strategy = "dynamic_greedy";
  const SocialGraph& graph = bank.graph();
  result.k = k = clamp_k(k, graph.node_count(), result);
  if (max_attempts < k) throw Error("max_attempts must be at least K");
  const auto r = reciprocation.probabilities(graph);
  const NodeSet candidates = candidate_list(graph, reciprocation, options, result);

  // Gains assume the proposed node reciprocates; committed nodes did.
  BankCoverage coverage(bank, metric, {}, pool);
  GreedyPicker picker(coverage, candidates, options.lazy);
  result.objective_curve.push_back(coverage.estimate(true));
  result.objective_curve_without_seeds.push_back(coverage.estimate(false));
  while (result.picks.size() < k && result.attempts.size() < max_attempts) {
    const auto best = picker.next();
    if (!best) break;
    const bool yes = reciprocates(r[best->node], seed, best->node);
    result.attempts.push_back({best->node, yes});
    if (!yes) continue;
    picker.commit(best->node);
    result.picks.push_back(best->node);
    result.step_gains.push_back(best->gain);
    result.objective_curve.push_back(coverage.estimate(true));
    result.objective_curve_without_seeds.push_back(coverage.estimate(false));
  }
  return result;
}

void evaluate_curve(SelectionResult& result, const SampleBank& bank, Metric metric,
                    const std::optional<ReciprocationModel>& reciprocation, WorkerPool& pool) {
  std::vector<double> r;
  if (reciprocation && !reciprocation->is_certain()) r = reciprocation->probabilities(bank.graph());
  BankCoverage coverage(bank, metric, std::move(r), pool);
  result.objective_curve.assign(1, coverage.estimate(true));
  result.objective_curve_without_seeds.assign(1, coverage.estimate(false));
  for (NodeId v : result.picks) {
    coverage.commit(v);
    result.objective_curve.push_back(coverage.estimate(true));
    result.objective_curve_without_seeds.push_back(coverage.estimate(false));
  }
}

SelectionResult greedy_select_exact(const ExactSetFunction& objective, double p, std::size_t k,
                                    std::span<const double> r, bool lazy,
                                    std::span<const NodeId> candidates) {
  SelectionResult result;
  result.strategy = "greedy";
  result.k = k = clamp_k(k, objective.node_count(), result);
  NodeSet pool;
  if (candidates.empty()) {
    pool.resize(objective.node_count());
    std::iota(pool.begin(), pool.end(), NodeId{0});
  } else {
    pool.assign(candidates.begin(), candidates.end());
  }
  ExactOracle oracle(objective, p, r);
  GreedyPicker picker(oracle, pool, lazy);
  double expected_seeds = 0;
  result.objective_curve.push_back(exact_point(0, objective.metric()));
  result.objective_curve_without_seeds.push_back(exact_point(0, objective.metric()));
  while (result.picks.size() < k) {
    const auto best = picker.next();
    if (!best) break;
    picker.commit(best->node);
    result.picks.push_back(best->node);
    result.step_gains.push_back(best->gain);
    expected_seeds += r.empty() ? 1.0 : r[best->node];
    result.objective_curve.push_back(exact_point(oracle.current_value(), objective.metric()));
    result.objective_curve_without_seeds.push_back(
        exact_point(oracle.current_value() - expected_seeds, objective.metric()));
  }
  return result;
}

SelectionResult dynamic_greedy_exact(const ExactSetFunction& objective, double p, std::size_t k,
                                     std::span<const char> reciprocated, std::size_t max_attempts) {
  SelectionResult result;
  result.strategy = "dynamic_greedy";
  result.k = k = clamp_k(k, objective.node_count(), result);
  if (reciprocated.size() != objective.node_count()) throw Error("reciprocation outcome size mismatch");
  NodeSet pool(objective.node_count());
  std::iota(pool.begin(), pool.end(), NodeId{0});
  ExactOracle oracle(objective, p, {});
  GreedyPicker picker(oracle, pool, false);
  result.objective_curve.push_back(exact_point(0, objective.metric()));
  result.objective_curve_without_seeds.push_back(exact_point(0, objective.metric()));
  while (result.picks.size() < k && result.attempts.size() < max_attempts) {
    const auto best = picker.next();
    if (!best) break;
    const bool yes = reciprocated[best->node] != 0;
    result.attempts.push_back({best->node, yes});
    if (!yes) continue;
    picker.commit(best->node);
    result.picks.push_back(best->node);
    result.step_gains.push_back(best->gain);
    result.objective_curve.push_back(exact_point(oracle.current_value(), objective.metric()));
    result.objective_curve_without_seeds.push_back(exact_point(
        oracle.current_value() - static_cast<double>(result.picks.size()), objective.metric()));
  }
  return result;
}

OptimalSet brute_force_optimal(const ExactSetFunction& objective, std::size_t k, double p,
                               std::span<const double> r) {
  const std::size_t n = objective.node_count();
  k = std::min(k, n);
  if (k > objective.max_seed_size()) throw Error("objective not tabulated up to K");
  double subsets = 1;
  for (std::size_t i = 0; i < k; ++i) subsets = subsets * static_cast<double>(n - i) / static_cast<double>(i + 1);
  if (subsets > 1e6) throw TooLarge("brute force refuses more than 10^6 subsets");

  auto value = [&](NodeMask m) { return r.empty() ? objective.value(m, p) : objective.value(m, p, r); };
  OptimalSet best;
  if (k == 0) return best;
  best.value = -1;
  NodeMask best_mask = 0;
  // Gosper's hack: all n-bit masks with k bits, in increasing order.
  const NodeMask limit = NodeMask{1} << n;
  for (NodeMask m = (NodeMask{1} << k) - 1; m < limit;) {
    const double v = value(m);
    if (v > best.value) {
      best.value = v;
      best_mask = m;
    }
    const NodeMask low = m & (~m + 1);
    const NodeMask ripple = m + low;
    m = (((ripple ^ m) >> 2) / low) | ripple;
  }
  best.nodes = from_mask(best_mask);
  return best;
}

OptimalSet brute_force_optimal(const SocialGraph& graph, std::size_t k, double p, Metric metric,
                               const ReciprocationModel& reciprocation) {
  const ExactSetFunction objective(graph, metric, std::min(k, graph.node_count()));
  std::vector<double> r;
  if (!reciprocation.is_certain()) r = reciprocation.probabilities(graph);
  return brute_force_optimal(objective, k, p, r);
}

}  // namespace osnim
