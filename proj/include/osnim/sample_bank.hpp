#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "osnim/condense.hpp"
#include "osnim/parallel.hpp"

namespace osnim {

// Condensed live-arc samples of one graph at one p; sample i uses seed
// base_seed + i for both arc retention and reciprocation draws.
class SampleBank {
 public:
  SampleBank(const SocialGraph& graph, double p, std::uint64_t base_seed,
             std::vector<CondensedDag> samples, std::vector<std::size_t> kept_arcs);

  const SocialGraph& graph() const { return *graph_; }
  double p() const { return p_; }
  std::uint64_t base_seed() const { return base_seed_; }
  std::uint64_t graph_fingerprint() const { return fingerprint_; }

  std::size_t size() const { return samples_.size(); }
  std::uint64_t seed(std::size_t i) const { return base_seed_ + i; }
  const CondensedDag& sample(std::size_t i) const { return samples_[i]; }
  std::size_t kept_arc_count(std::size_t i) const { return kept_arcs_[i]; }

  void serialize(std::ostream& out) const;

 private:
  const SocialGraph* graph_;
  double p_;
  std::uint64_t base_seed_;
  std::uint64_t fingerprint_;
  std::vector<CondensedDag> samples_;
  std::vector<std::size_t> kept_arcs_;
};

SampleBank build_sample_bank(const SocialGraph& graph, double p, std::size_t n_samples,
                             std::uint64_t base_seed, WorkerPool& pool = WorkerPool::shared());

// On-disk sample cache: one file per sample, named from (fingerprint, p, seed).
std::filesystem::path sample_cache_path(const std::filesystem::path& dir, std::uint64_t fingerprint,
                                        double p, std::uint64_t seed);
void save_sample_bank(const SampleBank& bank, const std::filesystem::path& dir);
// Loads cached samples where present and builds (and stores) the rest.
SampleBank load_or_build_sample_bank(const SocialGraph& graph, double p, std::size_t n_samples,
                                     std::uint64_t base_seed, const std::filesystem::path& dir,
                                     WorkerPool& pool = WorkerPool::shared());

}  // namespace osnim
