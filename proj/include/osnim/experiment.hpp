#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "osnim/branching.hpp"
#include "osnim/generator.hpp"
#include "osnim/graph_io.hpp"
#include "osnim/parallel.hpp"

namespace osnim {

inline constexpr const char* kVersion = "0.3.0";

struct SyntheticGraphSpec {
  double exponent = 2.3;
  std::size_t nodes = 10000;
  std::size_t min_degree = 1;
  std::size_t max_degree = 1000;
  std::uint64_t seed = 1;

  // "exponent,n,minDeg,maxDeg"
  static SyntheticGraphSpec parse(const std::string& text);
  std::string describe() const;
};

enum class SeedSetRows { with, without, both };

struct ExperimentConfig {
  std::string graph_path;
  Orientation orientation = Orientation::propagation;
  std::optional<SyntheticGraphSpec> synthetic;
  std::vector<double> p_list;
  std::size_t k_max = 200;
  std::vector<std::size_t> k_grid{1, 2, 5, 10, 20, 50, 100, 200};
  std::vector<std::string> strategies{"greedy", "high_degree", "random"};
  std::vector<Metric> metrics{Metric::retweeters};
  std::string reciprocation = "certain";
  std::optional<std::size_t> samples;  // nullopt = auto
  SampleCountPolicy sample_policy;
  std::uint64_t base_seed = 1;
  std::string output;  // CSV path; the manifest goes next to it
  std::size_t threads = 1;
  SeedSetRows seed_set_rows = SeedSetRows::with;
  std::size_t candidate_pool = 0;
  bool lazy = true;
  std::size_t max_attempts = 0;  // dynamic strategy; 0 = node count
  bool record_elapsed = true;
  std::string cache_dir;

  // Applies one key=value setting; throws Error on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  // Checks the invariants; throws Error describing the first violation.
  void validate() const;
  // Echo as key=value lines (re-readable by parse_config).
  std::map<std::string, std::string> echo() const;
};

// Flat key=value file, '#' comments, blank lines ignored.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});

inline constexpr const char* kCsvHeader =
    "strategy,p,metric,K,mean,stderr,ci_low,ci_high,includes_seed_set,elapsed_ms";

struct PCellSummary {
  double p = 0;
  double effective_density = 0;
  double critical_p = 0;
  double p_ext = 1;
  std::size_t recommended_samples = 0;
  std::size_t samples_used = 0;
};

struct ExperimentSummary {
  std::uint64_t graph_fingerprint = 0;
  std::size_t node_count = 0;
  std::size_t arc_count = 0;
  double mean_out_degree = 0;
  std::vector<PCellSummary> cells;
  std::vector<std::string> warnings;
  std::size_t rows = 0;
  std::string id_map;  // written for edgelist inputs
};

LoadedGraph load_experiment_graph(const ExperimentConfig& config);

// Writes the header and one row per (p, strategy, metric, K[, seed-set
// flag]). On failure a "# partial" line is appended before rethrowing.
ExperimentSummary run_experiment(const ExperimentConfig& config, const SocialGraph& graph,
                                 std::ostream& csv, WorkerPool& pool);

void write_manifest(std::ostream& out, const ExperimentConfig& config, const ExperimentSummary& summary);

// Loads the graph, writes CSV to config.output and manifest beside it.
ExperimentSummary run_experiment_to_files(const ExperimentConfig& config);

std::filesystem::path manifest_path_for(const std::filesystem::path& csv);
// external_id,internal_id map written next to the CSV for file inputs.
std::filesystem::path id_map_path_for(const std::filesystem::path& csv);

// CSV body without its elapsed_ms column, for reproducibility checks.
std::string strip_elapsed_column(const std::string& csv);

}  // namespace osnim
