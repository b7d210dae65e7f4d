#include "osnim/sample_bank.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "osnim/prune.hpp"

namespace osnim {

SampleBank::SampleBank(const SocialGraph& graph, double p, std::uint64_t base_seed,
                       std::vector<CondensedDag> samples, std::vector<std::size_t> kept_arcs)
    : graph_(&graph),
      p_(p),
      base_seed_(base_seed),
      fingerprint_(graph.fingerprint()),
      samples_(std::move(samples)),
      kept_arcs_(std::move(kept_arcs)) {
  if (samples_.empty()) throw Error("sample bank needs at least one sample");
  if (kept_arcs_.size() != samples_.size()) throw Error("kept-arc counts do not match samples");
  for (const auto& s : samples_) {
    if (s.node_count() != graph.node_count()) throw Error("sample does not match graph");
  }
}

void SampleBank::serialize(std::ostream& out) const {
  out.write(reinterpret_cast<const char*>(&fingerprint_), sizeof fingerprint_);
  out.write(reinterpret_cast<const char*>(&p_), sizeof p_);
  out.write(reinterpret_cast<const char*>(&base_seed_), sizeof base_seed_);
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const std::uint64_t kept = kept_arcs_[i];
    out.write(reinterpret_cast<const char*>(&kept), sizeof kept);
    samples_[i].serialize(out);
  }
}

SampleBank build_sample_bank(const SocialGraph& graph, double p, std::size_t n_samples,
                             std::uint64_t base_seed, WorkerPool& pool) {
  if (n_samples == 0) throw Error("n_samples must be at least 1");
  std::vector<CondensedDag> samples(n_samples);
  std::vector<std::size_t> kept(n_samples);
  pool.parallel_for(n_samples, [&](std::size_t i, std::size_t) {
    const PrunedGraph pruned = prune(graph, p, base_seed + i);
    kept[i] = pruned.kept_arc_count();
    samples[i] = condense(pruned);
  });
  return SampleBank(graph, p, base_seed, std::move(samples), std::move(kept));
}

std::filesystem::path sample_cache_path(const std::filesystem::path& dir, std::uint64_t fingerprint,
                                        double p, std::uint64_t seed) {
  char name[96];
  std::snprintf(name, sizeof name, "%016llx_p%.17g_s%llu.cdag",
                static_cast<unsigned long long>(fingerprint), p, static_cast<unsigned long long>(seed));
  return dir / name;
}

namespace {

void write_cached(const std::filesystem::path& path, const CondensedDag& dag, std::uint64_t kept) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(&kept), sizeof kept);
  dag.serialize(out);
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

void save_sample_bank(const SampleBank& bank, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < bank.size(); ++i) {
    write_cached(sample_cache_path(dir, bank.graph_fingerprint(), bank.p(), bank.seed(i)),
                 bank.sample(i), bank.kept_arc_count(i));
  }
}

SampleBank load_or_build_sample_bank(const SocialGraph& graph, double p, std::size_t n_samples,
                                     std::uint64_t base_seed, const std::filesystem::path& dir,
                                     WorkerPool& pool) {
  if (n_samples == 0) throw Error("n_samples must be at least 1");
  std::filesystem::create_directories(dir);
  const std::uint64_t fp = graph.fingerprint();
  std::vector<CondensedDag> samples(n_samples);
  std::vector<std::size_t> kept(n_samples);
  pool.parallel_for(n_samples, [&](std::size_t i, std::size_t) {
    const auto path = sample_cache_path(dir, fp, p, base_seed + i);
    if (std::ifstream in{path, std::ios::binary}) {
      std::uint64_t k = 0;
      in.read(reinterpret_cast<char*>(&k), sizeof k);
      samples[i] = CondensedDag::deserialize(in);
      if (samples[i].node_count() != graph.node_count()) throw Error("stale cache file " + path.string());
      kept[i] = k;
      return;
    }
    const PrunedGraph pruned = prune(graph, p, base_seed + i);
    kept[i] = pruned.kept_arc_count();
    samples[i] = condense(pruned);
    write_cached(path, samples[i], kept[i]);
  });
  return SampleBank(graph, p, base_seed, std::move(samples), std::move(kept));
}

}  // namespace osnim
