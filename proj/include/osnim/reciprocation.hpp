#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "osnim/graph.hpp"
#include "osnim/rng.hpp"

namespace osnim {

// Probability r_v that v follows u0 back once u0 follows v.
class ReciprocationModel {
 public:
  enum class Kind { certain, constant, ratio_formula, table };

  static ReciprocationModel certain() { return ReciprocationModel(Kind::certain, 1.0, {}); }
  static ReciprocationModel constant(double r);
  // r_v = min(followings_v / (followers_v + 100), 1).
  static ReciprocationModel ratio_formula() { return ReciprocationModel(Kind::ratio_formula, 0, {}); }
  static ReciprocationModel table(std::vector<double> r);

  // "certain" | "const=R" | "ratio"
  static ReciprocationModel parse(std::string_view text);
  std::string describe() const;

  Kind kind() const { return kind_; }
  bool is_certain() const;

  double probability(const SocialGraph& graph, NodeId v) const;
  std::vector<double> probabilities(const SocialGraph& graph) const;

 private:
  ReciprocationModel(Kind kind, double r, std::vector<double> table)
      : kind_(kind), constant_(r), table_(std::move(table)) {}

  Kind kind_;
  double constant_;
  std::vector<double> table_;
};

// R_v for one realization; a pure function of (seed, v).
inline bool reciprocates(double r, std::uint64_t seed, NodeId v) {
  return r >= 1.0 || keyed_uniform(seed, Stream::reciprocation, v) < r;
}

std::vector<char> sample_reciprocation(std::span<const double> r, std::uint64_t seed);

}  // namespace osnim
