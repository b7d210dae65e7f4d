#include "osnim/coverage.hpp"

#include <algorithm>

namespace osnim {

BankCoverage::BankCoverage(const SampleBank& bank, Metric metric, std::vector<double> reciprocation,
                           WorkerPool& pool)
    : bank_(&bank), metric_(metric), r_(std::move(reciprocation)), pool_(&pool) {
  const std::size_t n = bank.graph().node_count();
  if (!r_.empty() && r_.size() != n) throw Error("reciprocation vector does not match graph");
  std::size_t max_components = 0;
  reached_.resize(bank.size());
  for (std::size_t s = 0; s < bank.size(); ++s) {
    reached_[s].assign(bank.sample(s).component_count(), 0);
    max_components = std::max(max_components, bank.sample(s).component_count());
  }
  if (metric == Metric::readers) covered_.assign(bank.size(), std::vector<char>(n, 0));
  values_.assign(bank.size(), 0);
  active_seeds_.assign(bank.size(), 0);
  per_sample_.assign(bank.size(), 0);
  scratch_.resize(pool.size());
  for (auto& s : scratch_) {
    s.component_stamp.assign(max_components, 0);
    if (metric == Metric::readers) s.node_stamp.assign(n, 0);
  }
}

void BankCoverage::next_epoch(Scratch& scratch) const {
  if (++scratch.epoch == 0) {
    std::fill(scratch.component_stamp.begin(), scratch.component_stamp.end(), 0);
    std::fill(scratch.node_stamp.begin(), scratch.node_stamp.end(), 0);
    scratch.epoch = 1;
  }
}

bool BankCoverage::active_in(std::size_t sample, NodeId v) const {
  return r_.empty() || reciprocates(r_[v], bank_->seed(sample), v);
}

std::uint64_t BankCoverage::sample_gain(std::size_t sample, NodeId v, Scratch& scratch) const {
  const CondensedDag& dag = bank_->sample(sample);
  const auto& reached = reached_[sample];
  const ComponentId start = dag.component_of(v);
  if (reached[start]) return 0;
  next_epoch(scratch);
  const std::uint32_t epoch = scratch.epoch;
  auto& queue = scratch.queue;
  queue.clear();
  queue.push_back(start);
  scratch.component_stamp[start] = epoch;
  std::uint64_t gained = 0;
  const SocialGraph& g = bank_->graph();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const ComponentId c = queue[head];
    if (metric_ == Metric::retweeters) {
      gained += dag.component_size(c);
    } else {
      const auto& covered = covered_[sample];
      for (NodeId u : dag.members(c)) {
        auto see = [&](NodeId w) {
          if (!covered[w] && scratch.node_stamp[w] != epoch) {
            scratch.node_stamp[w] = epoch;
            ++gained;
          }
        };
        see(u);
        for (NodeId w : g.followers(u)) see(w);
      }
    }
    for (ComponentId d : dag.successors(c)) {
      if (!reached[d] && scratch.component_stamp[d] != epoch) {
        scratch.component_stamp[d] = epoch;
        queue.push_back(d);
      }
    }
  }
  return gained;
}

void BankCoverage::sample_commit(std::size_t sample, NodeId v, Scratch& scratch) {
  if (!active_in(sample, v)) return;
  ++active_seeds_[sample];
  const CondensedDag& dag = bank_->sample(sample);
  auto& reached = reached_[sample];
  const ComponentId start = dag.component_of(v);
  if (reached[start]) return;
  auto& queue = scratch.queue;
  queue.clear();
  queue.push_back(start);
  reached[start] = 1;
  const SocialGraph& g = bank_->graph();
  std::uint64_t gained = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const ComponentId c = queue[head];
    if (metric_ == Metric::retweeters) {
      gained += dag.component_size(c);
    } else {
      auto& covered = covered_[sample];
      for (NodeId u : dag.members(c)) {
        if (!covered[u]) {
          covered[u] = 1;
          ++gained;
        }
        for (NodeId w : g.followers(u)) {
          if (!covered[w]) {
            covered[w] = 1;
            ++gained;
          }
        }
      }
    }
    for (ComponentId d : dag.successors(c)) {
      if (!reached[d]) {
        reached[d] = 1;
        queue.push_back(d);
      }
    }
  }
  values_[sample] += gained;
}

std::uint64_t BankCoverage::gain_total(NodeId v) {
  if (v >= bank_->graph().node_count()) throw Error("candidate node out of range");
  pool_->parallel_for(bank_->size(), [&](std::size_t s, std::size_t worker) {
    per_sample_[s] = sample_gain(s, v, scratch_[worker]);
  });
  std::uint64_t total = 0;
  for (auto x : per_sample_) total += x;
  return total;
}

double BankCoverage::scaled(NodeId v, std::uint64_t total) const {
  const double mean = static_cast<double>(total) / static_cast<double>(bank_->size());
  return r_.empty() ? mean : r_[v] * mean;
}

double BankCoverage::gain(NodeId v) { return scaled(v, gain_total(v)); }

void BankCoverage::commit(NodeId v) {
  if (v >= bank_->graph().node_count()) throw Error("seed node out of range");
  pool_->parallel_for(bank_->size(),
                      [&](std::size_t s, std::size_t worker) { sample_commit(s, v, scratch_[worker]); });
}

InfluenceEstimate BankCoverage::estimate(bool include_seed_set) const {
  std::vector<double> v(values_.size());
  for (std::size_t s = 0; s < v.size(); ++s) {
    v[s] = static_cast<double>(values_[s]) - (include_seed_set ? 0.0 : active_seeds_[s]);
  }
  return InfluenceEstimate::from_samples(v, metric_);
}

// Per-component bound on the coverage reachable from that component, valid
// from the empty state. Anchored on the largest SCC H: a component whose
// reach touches reach(H) is charged |cover(reach(H))| plus a path-sum over
// the components outside reach(H).
std::vector<std::uint32_t> BankCoverage::sample_bounds(std::size_t sample, Scratch& scratch) const {
  const CondensedDag& dag = bank_->sample(sample);
  const SocialGraph& g = bank_->graph();
  const std::size_t components = dag.component_count();
  const std::uint64_t cap = g.node_count();

  std::vector<std::uint64_t> weight(components);
  for (ComponentId c = 0; c < components; ++c) {
    if (metric_ == Metric::retweeters) {
      weight[c] = dag.component_size(c);
    } else {
      std::uint64_t w = 0;
      for (NodeId u : dag.members(c)) w += 1 + g.out_degree(u);
      weight[c] = std::min(w, cap);
    }
  }

  ComponentId hub = 0;
  for (ComponentId c = 1; c < components; ++c) {
    if (dag.component_size(c) > dag.component_size(hub)) hub = c;
  }
  std::vector<char> in_hub_reach(components, 0);
  auto& queue = scratch.queue;
  queue.clear();
  queue.push_back(hub);
  in_hub_reach[hub] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (ComponentId d : dag.successors(queue[head])) {
      if (!in_hub_reach[d]) {
        in_hub_reach[d] = 1;
        queue.push_back(d);
      }
    }
  }
  std::uint64_t hub_cover = 0;
  if (metric_ == Metric::retweeters) {
    for (ComponentId c : queue) hub_cover += dag.component_size(c);
  } else {
    next_epoch(scratch);
    for (ComponentId c : queue) {
      for (NodeId u : dag.members(c)) {
        auto see = [&](NodeId w) {
          if (scratch.node_stamp[w] != scratch.epoch) {
            scratch.node_stamp[w] = scratch.epoch;
            ++hub_cover;
          }
        };
        see(u);
        for (NodeId w : g.followers(u)) see(w);
      }
    }
  }

  std::vector<char> touches(components, 0);
  std::vector<std::uint64_t> extra(components, 0);
  std::vector<std::uint32_t> bound(components);
  // Successors carry smaller ids, so one upward sweep is a bottom-up pass.
  for (ComponentId c = 0; c < components; ++c) {
    bool t = in_hub_reach[c];
    std::uint64_t e = in_hub_reach[c] ? 0 : weight[c];
    for (ComponentId d : dag.successors(c)) {
      t = t || touches[d];
      e = std::min(cap, e + extra[d]);
    }
    touches[c] = t;
    extra[c] = e;
    bound[c] = static_cast<std::uint32_t>(std::min(cap, (t ? hub_cover : 0) + e));
  }
  return bound;
}

void BankCoverage::compute_bounds() {
  const std::size_t n = bank_->graph().node_count();
  bound_totals_.assign(n, 0);
  const std::size_t chunk = std::max<std::size_t>(1, pool_->size() * 2);
  std::vector<std::vector<std::uint32_t>> bounds(chunk);
  for (std::size_t first = 0; first < bank_->size(); first += chunk) {
    const std::size_t count = std::min(chunk, bank_->size() - first);
    pool_->parallel_for(count, [&](std::size_t i, std::size_t worker) {
      bounds[i] = sample_bounds(first + i, scratch_[worker]);
    });
    for (std::size_t i = 0; i < count; ++i) {
      const CondensedDag& dag = bank_->sample(first + i);
      for (NodeId v = 0; v < n; ++v) bound_totals_[v] += bounds[i][dag.component_of(v)];
    }
  }
}

double BankCoverage::upper_bound(NodeId v) {
  if (bound_totals_.empty()) compute_bounds();
  return scaled(v, bound_totals_[v]);
}

}  // namespace osnim
