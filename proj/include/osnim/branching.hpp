#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "osnim/graph.hpp"

namespace osnim {

// pmf[j] = probability that a retweeter has j retweeting followers.
using OffspringPmf = std::vector<double>;

// Galton-Watson approximation of the cascade at one retweet probability.
struct BranchingModel {
  OffspringPmf offspring_pmf;
  double mean_offspring = 0;
  double p = 0;
  double p_ext = 1;
  std::size_t node_count = 0;

  bool supercritical() const { return mean_offspring > 1; }
};

inline constexpr double kDefaultTailMass = 1e-12;

// Binomial(k, p) thinning of the size-biased follower count k q_k / <k>,
// with the upper tail beyond `tail_mass` cut and the rest renormalized.
OffspringPmf offspring_distribution(const DegreeStats& stats, double p,
                                    double tail_mass = kDefaultTailMass);

double pmf_mean(std::span<const double> pmf);
double pgf(std::span<const double> pmf, double s);

// p at which the offspring mean p <k^2>/<k> equals 1.
// Summing k q_k / <k> over the unbiased degree distribution gives 1 for every graph,
// so only the size-biased form yields a nontrivial threshold.
double critical_probability(const DegreeStats& stats);

// Smallest fixed point of G(s) = sum_j pmf_j s^j in [0, 1].
double extinction_probability(std::span<const double> pmf);

BranchingModel branching_model(const DegreeStats& stats, double p);

// Two-sided standard normal quantile for a confidence level in (0, 1).
double normal_quantile(double confidence);

// Samples needed so the CI half-width of the two-point model (N with
// probability 1 - p_ext, else 0) is at most relative_precision * mean.
// Degenerate p_ext (0 or 1) returns `floor`; the result is never below it.
std::size_t sample_size_estimate(std::size_t node_count, double p_ext, double relative_precision,
                                 double confidence, std::size_t floor = 1);

struct SampleCountPolicy {
  std::size_t min_samples = 30;
  std::size_t max_samples = 200;
  double relative_precision = 0.2;
  double confidence = 0.95;
};

struct SampleCountAdvice {
  std::size_t recommended = 0;  // raw two-point-model answer
  std::size_t used = 0;         // clamped to the policy bounds
  BranchingModel model;
};

SampleCountAdvice advise_sample_count(const DegreeStats& stats, double p,
                                      const SampleCountPolicy& policy = {});

// Expected retweeters (seed excluded) below criticality: d p / (1 - m).
double subcritical_mean_size(const DegreeStats& stats, double p, std::size_t seed_out_degree);

}  // namespace osnim
