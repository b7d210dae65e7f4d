#include "osnim/branching.hpp"

#include <algorithm>
#include <cmath>

namespace osnim {

namespace {

// Binomial(k, p) pmf accumulated into out with the given weight, walking
// outward from the mode so that no term underflows before it matters.
void add_binomial(std::size_t k, double p, double weight, OffspringPmf& out) {
  if (out.size() < k + 1) out.resize(k + 1, 0.0);
  if (p >= 1) {
    out[k] += weight;
    return;
  }
  if (p <= 0 || k == 0) {
    out[0] += weight;
    return;
  }
  const double kk = static_cast<double>(k);
  const auto mode = static_cast<std::size_t>(std::floor((kk + 1) * p));
  const std::size_t m = std::min(mode, k);
  const double md = static_cast<double>(m);
  const double log_mode = std::lgamma(kk + 1) - std::lgamma(md + 1) - std::lgamma(kk - md + 1) +
                          md * std::log(p) + (kk - md) * std::log1p(-p);
  const double odds = p / (1 - p);
  const double at_mode = std::exp(log_mode);
  constexpr double kNegligible = 1e-30;
  double term = at_mode;
  for (std::size_t j = m;; ++j) {
    out[j] += weight * term;
    if (j == k || term < kNegligible * at_mode) break;
    term *= static_cast<double>(k - j) / static_cast<double>(j + 1) * odds;
  }
  term = at_mode;
  for (std::size_t j = m; j > 0;) {
    term *= static_cast<double>(j) / static_cast<double>(k - j + 1) / odds;
    --j;
    out[j] += weight * term;
    if (term < kNegligible * at_mode) break;
  }
}

}  // namespace

OffspringPmf offspring_distribution(const DegreeStats& stats, double p, double tail_mass) {
  if (!(stats.mean_out_degree > 0)) throw Error("offspring distribution needs <k> > 0");
  if (!(p >= 0 && p <= 1)) throw Error("p must lie in [0, 1]");
  OffspringPmf pmf{0.0};
  for (const auto& [k, q] : stats.degree_histogram) {
    if (k == 0 || q == 0) continue;
    add_binomial(k, p, static_cast<double>(k) * q / stats.mean_out_degree, pmf);
  }
  double total = 0;
  for (double x : pmf) total += x;
  // Drop the upper tail while its mass stays within tail_mass.
  double tail = 0;
  std::size_t keep = pmf.size();
  while (keep > 1 && tail + pmf[keep - 1] <= tail_mass * total) {
    tail += pmf[keep - 1];
    --keep;
  }
  pmf.resize(keep);
  const double kept = total - tail;
  for (double& x : pmf) x /= kept;
  return pmf;
}

double pmf_mean(std::span<const double> pmf) {
  double m = 0;
  for (std::size_t j = 0; j < pmf.size(); ++j) m += static_cast<double>(j) * pmf[j];
  return m;
}

double pgf(std::span<const double> pmf, double s) {
  double acc = 0;
  for (std::size_t j = pmf.size(); j-- > 0;) acc = acc * s + pmf[j];
  return acc;
}

namespace {

double pgf_derivative(std::span<const double> pmf, double s) {
  double acc = 0;
  for (std::size_t j = pmf.size(); j-- > 1;) acc = acc * s + static_cast<double>(j) * pmf[j];
  return acc;
}

}  // namespace

double critical_probability(const DegreeStats& stats) {
  if (!(stats.mean_out_degree > 0)) throw Error("critical probability needs <k> > 0");
  if (!(stats.second_moment_out_degree > 0)) throw Error("critical probability needs <k^2> > 0");
  return stats.mean_out_degree / stats.second_moment_out_degree;
}

double extinction_probability(std::span<const double> pmf) {
  if (pmf.empty()) throw Error("empty offspring pmf");
  if (pmf.size() > 1 && pmf[1] == 1.0) return 0.0;  // exactly one child forever
  // Critical and subcritical processes die out; the slack absorbs rounding at m = 1.
  if (pmf_mean(pmf) <= 1.0 + 1e-9) return 1.0;
  constexpr double kTolerance = 1e-12;
  constexpr std::size_t kMaxIterations = 10'000'000;
  double s = 0;
  for (std::size_t i = 0; i < kMaxIterations; ++i) {
    const double next = pgf(pmf, s);
    const bool done = std::abs(next - s) < kTolerance;
    s = next;
    if (done) break;
  }
  // Newton from below converges monotonically since G(s) - s is convex.
  for (int i = 0; i < 50 && std::abs(pgf(pmf, s) - s) > kTolerance * 1e-2; ++i) {
    const double slope = pgf_derivative(pmf, s) - 1;
    if (slope >= 0) break;
    s -= (pgf(pmf, s) - s) / slope;
  }
  return std::clamp(s, 0.0, 1.0);
}

BranchingModel branching_model(const DegreeStats& stats, double p) {
  BranchingModel m;
  m.p = p;
  m.node_count = stats.node_count;
  m.offspring_pmf = offspring_distribution(stats, p);
  m.mean_offspring = pmf_mean(m.offspring_pmf);
  m.p_ext = extinction_probability(m.offspring_pmf);
  return m;
}

double normal_quantile(double confidence) {
  if (!(confidence > 0 && confidence < 1)) throw Error("confidence must lie in (0, 1)");
  const double target = (1 + confidence) / 2;
  double lo = 0, hi = 40;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (0.5 * std::erfc(-mid / std::sqrt(2.0)) < target ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

std::size_t sample_size_estimate(std::size_t node_count, double p_ext, double relative_precision,
                                 double confidence, std::size_t floor) {
  if (!(relative_precision > 0)) throw Error("relative precision must be positive");
  if (!(p_ext > 0 && p_ext < 1)) return floor;
  const double z = normal_quantile(confidence);
  const double n = static_cast<double>(node_count);
  const double mean = n * (1 - p_ext);
  const double variance = n * n * p_ext * (1 - p_ext);
  const double needed = std::ceil(z * z * variance / (relative_precision * relative_precision * mean * mean));
  if (!(needed < 1e18)) return std::numeric_limits<std::size_t>::max();
  return std::max(floor, static_cast<std::size_t>(needed));
}

SampleCountAdvice advise_sample_count(const DegreeStats& stats, double p, const SampleCountPolicy& policy) {
  SampleCountAdvice a;
  a.model = branching_model(stats, p);
  a.recommended = sample_size_estimate(stats.node_count, a.model.p_ext, policy.relative_precision,
                                       policy.confidence, 1);
  a.used = std::clamp(a.recommended, policy.min_samples, policy.max_samples);
  return a;
}

double subcritical_mean_size(const DegreeStats& stats, double p, std::size_t seed_out_degree) {
  if (!(stats.mean_out_degree > 0)) throw Error("needs <k> > 0");
  const double m = p * stats.second_moment_out_degree / stats.mean_out_degree;
  if (m >= 1) throw Error("supercritical regime: expected cascade size is unbounded");
  return static_cast<double>(seed_out_degree) * p / (1 - m);
}

}  // namespace osnim
