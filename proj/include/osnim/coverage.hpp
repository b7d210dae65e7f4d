#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "osnim/estimate.hpp"
#include "osnim/sample_bank.hpp"

namespace osnim {

// Incremental objective over a sample bank. Each sample remembers what the
// committed seeds already reach, so a marginal gain only walks the part of
// the condensed DAG that is still uncovered.
//
// With reciprocation probabilities r, a committed node is active in sample s
// iff it reciprocates under that sample's seed, and gain(v) is
// r_v * mean_s |newly covered by v|. With r empty, every committed node is
// active and gain(v) is the plain mean marginal coverage.
class BankCoverage {
 public:
  BankCoverage(const SampleBank& bank, Metric metric, std::vector<double> reciprocation = {},
               WorkerPool& pool = WorkerPool::shared());

  const SampleBank& bank() const { return *bank_; }
  Metric metric() const { return metric_; }

  // Sum over samples of newly covered nodes if v were activated.
  std::uint64_t gain_total(NodeId v);
  double gain(NodeId v);

  // Never below gain(v), whatever has been committed.
  double upper_bound(NodeId v);

  void commit(NodeId v);

  std::span<const std::uint64_t> values() const { return values_; }
  std::span<const std::uint32_t> active_seeds() const { return active_seeds_; }
  InfluenceEstimate estimate(bool include_seed_set = true) const;

 private:
  struct Scratch {
    std::vector<std::uint32_t> component_stamp;
    std::vector<std::uint32_t> node_stamp;
    std::vector<ComponentId> queue;
    std::uint32_t epoch = 0;
  };

  double scaled(NodeId v, std::uint64_t total) const;
  bool active_in(std::size_t sample, NodeId v) const;
  std::uint64_t sample_gain(std::size_t sample, NodeId v, Scratch& scratch) const;
  void sample_commit(std::size_t sample, NodeId v, Scratch& scratch);
  void compute_bounds();
  std::vector<std::uint32_t> sample_bounds(std::size_t sample, Scratch& scratch) const;
  void next_epoch(Scratch& scratch) const;

  const SampleBank* bank_;
  Metric metric_;
  std::vector<double> r_;
  WorkerPool* pool_;
  std::vector<std::vector<char>> reached_;  // per sample, per component
  std::vector<std::vector<char>> covered_;  // per sample, per node (readers only)
  std::vector<std::uint64_t> values_;
  std::vector<std::uint32_t> active_seeds_;
  std::vector<std::uint64_t> per_sample_;
  std::vector<Scratch> scratch_;
  std::vector<std::uint64_t> bound_totals_;
};

}  // namespace osnim
