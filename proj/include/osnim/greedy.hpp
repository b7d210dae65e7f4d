#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "osnim/types.hpp"

namespace osnim {

// Anything that scores a candidate against the current committed set.
template <class O>
concept GainOracle = requires(O& oracle, NodeId v) {
  { oracle.gain(v) } -> std::convertible_to<double>;
  { oracle.upper_bound(v) } -> std::convertible_to<double>;
  oracle.commit(v);
};

struct Candidate {
  NodeId node;
  double gain;
};

// Repeatedly hands out the candidate of largest marginal gain (smallest id
// on ties) and removes it from the pool. Lazy mode keeps stale gains in a
// max-heap as upper bounds and only re-evaluates the top, which returns the
// same sequence as eager mode whenever gains are non-increasing across
// commits.
template <GainOracle Oracle>
class GreedyPicker {
 public:
  GreedyPicker(Oracle& oracle, std::span<const NodeId> candidates, bool lazy)
      : oracle_(oracle), lazy_(lazy) {
    if (lazy_) {
      for (NodeId v : candidates) heap_.push({oracle_.upper_bound(v), v, kBound});
    } else {
      pool_.assign(candidates.begin(), candidates.end());
    }
  }

  std::optional<Candidate> next() { return lazy_ ? next_lazy() : next_eager(); }

  void commit(NodeId v) {
    oracle_.commit(v);
    ++round_;
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  static constexpr std::size_t kBound = std::numeric_limits<std::size_t>::max();

  struct Entry {
    double key;
    NodeId node;
    std::size_t round;  // commit count when key was an exact gain
  };
  struct Lower {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.key != b.key) return a.key < b.key;
      return a.node > b.node;
    }
  };

  static bool better(double gain, NodeId v, double best_gain, NodeId best) {
    return gain > best_gain || (gain == best_gain && v < best);
  }

  std::optional<Candidate> next_eager() {
    if (pool_.empty()) return std::nullopt;
    std::size_t best = 0;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      const double g = oracle_.gain(pool_[i]);
      ++evaluations_;
      if (i == 0 || better(g, pool_[i], best_gain, pool_[best])) {
        best = i;
        best_gain = g;
      }
    }
    const NodeId v = pool_[best];
    pool_.erase(pool_.begin() + static_cast<std::ptrdiff_t>(best));
    return Candidate{v, best_gain};
  }

  std::optional<Candidate> next_lazy() {
    while (!heap_.empty()) {
      Entry top = heap_.top();
      heap_.pop();
      if (top.round == round_) return Candidate{top.node, top.key};
      top.key = oracle_.gain(top.node);
      top.round = round_;
      ++evaluations_;
      heap_.push(top);
    }
    return std::nullopt;
  }

  Oracle& oracle_;
  bool lazy_;
  std::size_t round_ = 0;
  std::size_t evaluations_ = 0;
  std::vector<NodeId> pool_;
  std::priority_queue<Entry, std::vector<Entry>, Lower> heap_;
};

}  // namespace osnim
