#include "osnim/experiment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "osnim/rng.hpp"
#include "osnim/sample_bank.hpp"
#include "osnim/selection.hpp"

namespace osnim {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw Error("bad number for " + key + ": '" + value + "'");
  return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long x = 0;
  try {
    if (!value.empty() && value[0] != '-') x = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw Error("bad integer for " + key + ": '" + value + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error("bad boolean for " + key + ": '" + value + "'");
}

template <class T, class F>
std::string join(const std::vector<T>& items, F&& show) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += show(items[i]);
  }
  return out;
}

const std::vector<std::string> kStrategies{"greedy", "high_degree", "random", "dynamic_greedy"};

std::string seed_rows_name(SeedSetRows rows) {
  switch (rows) {
    case SeedSetRows::with:
      return "with";
    case SeedSetRows::without:
      return "without";
    case SeedSetRows::both:
      return "both";
  }
  return "with";
}

std::string num(double x) { return fmt::format("{}", x); }

}  // namespace

SyntheticGraphSpec SyntheticGraphSpec::parse(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw Error("synthetic spec must be exponent,n,minDeg,maxDeg");
  SyntheticGraphSpec s;
  s.exponent = to_double("synthetic exponent", parts[0]);
  s.nodes = to_u64("synthetic n", parts[1]);
  s.min_degree = to_u64("synthetic minDeg", parts[2]);
  s.max_degree = to_u64("synthetic maxDeg", parts[3]);
  if (!(s.exponent > 1)) throw Error("synthetic exponent must exceed 1");
  if (s.min_degree > s.max_degree) throw Error("synthetic minDeg exceeds maxDeg");
  if (s.nodes == 0) throw Error("synthetic n must be positive");
  return s;
}

std::string SyntheticGraphSpec::describe() const {
  return fmt::format("{},{},{},{}", exponent, nodes, min_degree, max_degree);
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "graph") {
    graph_path = value;
  } else if (key == "orientation") {
    if (value == "propagation") orientation = Orientation::propagation;
    else if (value == "follows") orientation = Orientation::follows;
    else throw Error("orientation must be propagation or follows");
  } else if (key == "synthetic") {
    const std::uint64_t seed = synthetic ? synthetic->seed : 1;
    synthetic = SyntheticGraphSpec::parse(value);
    synthetic->seed = seed;
  } else if (key == "synthetic_seed") {
    if (!synthetic) synthetic = SyntheticGraphSpec{};
    synthetic->seed = to_u64(key, value);
  } else if (key == "p") {
    p_list.clear();
    for (const auto& x : split(value, ',')) p_list.push_back(to_double(key, x));
  } else if (key == "k_max" || key == "k") {
    k_max = to_u64(key, value);
  } else if (key == "k_grid") {
    k_grid.clear();
    for (const auto& x : split(value, ',')) k_grid.push_back(to_u64(key, x));
  } else if (key == "strategies" || key == "strategy") {
    strategies = split(value, ',');
    for (const auto& s : strategies) {
      if (std::find(kStrategies.begin(), kStrategies.end(), s) == kStrategies.end()) {
        throw Error("unknown strategy '" + s + "'");
      }
    }
  } else if (key == "metrics" || key == "metric") {
    metrics.clear();
    for (const auto& m : split(value, ',')) metrics.push_back(parse_metric(m));
  } else if (key == "recip") {
    ReciprocationModel::parse(value);
    reciprocation = value;
  } else if (key == "samples") {
    if (value == "auto") samples.reset();
    else samples = to_u64(key, value);
  } else if (key == "samples_min") {
    sample_policy.min_samples = to_u64(key, value);
  } else if (key == "samples_max") {
    sample_policy.max_samples = to_u64(key, value);
  } else if (key == "precision") {
    sample_policy.relative_precision = to_double(key, value);
  } else if (key == "confidence") {
    sample_policy.confidence = to_double(key, value);
  } else if (key == "seed") {
    base_seed = to_u64(key, value);
  } else if (key == "out") {
    output = value;
  } else if (key == "threads") {
    threads = to_u64(key, value);
  } else if (key == "seed_set_rows") {
    if (value == "with") seed_set_rows = SeedSetRows::with;
    else if (value == "without") seed_set_rows = SeedSetRows::without;
    else if (value == "both") seed_set_rows = SeedSetRows::both;
    else throw Error("seed_set_rows must be with, without or both");
  } else if (key == "candidate_pool") {
    candidate_pool = to_u64(key, value);
  } else if (key == "lazy") {
    lazy = to_bool(key, value);
  } else if (key == "max_attempts") {
    max_attempts = to_u64(key, value);
  } else if (key == "record_elapsed") {
    record_elapsed = to_bool(key, value);
  } else if (key == "cache_dir") {
    cache_dir = value;
  } else {
    throw Error("unknown config key '" + key + "'");
  }
}

void ExperimentConfig::validate() const {
  if (graph_path.empty() == !synthetic.has_value()) {
    throw Error("exactly one graph source (graph or synthetic) is required");
  }
  if (p_list.empty()) throw Error("p list is empty");
  for (double p : p_list) {
    if (!(p > 0 && p <= 1)) throw Error("p values must lie in (0, 1]");
  }
  if (k_max < 1) throw Error("k_max must be at least 1");
  if (strategies.empty()) throw Error("at least one strategy is required");
  if (metrics.empty()) throw Error("at least one metric is required");
  if (samples && *samples == 0) throw Error("samples must be at least 1");
  if (sample_policy.min_samples == 0 || sample_policy.min_samples > sample_policy.max_samples) {
    throw Error("samples_min must be in [1, samples_max]");
  }
  if (threads == 0) throw Error("threads must be at least 1");
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
  std::map<std::string, std::string> e;
  if (!graph_path.empty()) e["graph"] = graph_path;
  e["orientation"] = orientation == Orientation::propagation ? "propagation" : "follows";
  if (synthetic) {
    e["synthetic"] = synthetic->describe();
    e["synthetic_seed"] = std::to_string(synthetic->seed);
  }
  e["p"] = join(p_list, num);
  e["k_max"] = std::to_string(k_max);
  e["k_grid"] = join(k_grid, [](std::size_t k) { return std::to_string(k); });
  e["strategies"] = join(strategies, [](const std::string& s) { return s; });
  e["metrics"] = join(metrics, [](Metric m) { return std::string(to_string(m)); });
  e["recip"] = reciprocation;
  e["samples"] = samples ? std::to_string(*samples) : "auto";
  e["samples_min"] = std::to_string(sample_policy.min_samples);
  e["samples_max"] = std::to_string(sample_policy.max_samples);
  e["precision"] = num(sample_policy.relative_precision);
  e["confidence"] = num(sample_policy.confidence);
  e["seed"] = std::to_string(base_seed);
  if (!output.empty()) e["out"] = output;
  e["seed_set_rows"] = seed_rows_name(seed_set_rows);
  e["candidate_pool"] = std::to_string(candidate_pool);
  e["lazy"] = lazy ? "true" : "false";
  e["max_attempts"] = std::to_string(max_attempts);
  e["record_elapsed"] = record_elapsed ? "true" : "false";
  if (!cache_dir.empty()) e["cache_dir"] = cache_dir;
  return e;
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    try {
      base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return base;
}

LoadedGraph load_experiment_graph(const ExperimentConfig& config) {
  if (config.synthetic) {
    const auto& s = *config.synthetic;
    LoadedGraph out;
    out.graph = generate_configuration_graph(PowerLawDegrees{s.exponent, s.min_degree, s.max_degree},
                                             s.nodes, s.seed);
    out.external_ids.resize(out.graph.node_count());
    for (std::size_t i = 0; i < out.external_ids.size(); ++i) out.external_ids[i] = i;
    return out;
  }
  return load_graph_file(config.graph_path, config.orientation);
}

namespace {

struct RowWriter {
  std::ostream& csv;
  const ExperimentConfig& config;
  std::size_t rows = 0;

  void write(const std::string& strategy, double p, Metric metric, std::size_t k,
             const InfluenceEstimate& e, bool includes_seed_set, double elapsed_ms) {
    csv << strategy << ',' << num(p) << ',' << to_string(metric) << ',' << k << ',' << num(e.mean) << ','
        << num(e.std_error) << ',' << num(e.ci_low) << ',' << num(e.ci_high) << ','
        << (includes_seed_set ? "true" : "false") << ',' << num(config.record_elapsed ? elapsed_ms : 0.0)
        << '\n';
    ++rows;
  }
};

SelectionResult run_strategy(const std::string& strategy, const SampleBank& bank, Metric metric,
                             const ExperimentConfig& config, const ReciprocationModel& recip,
                             WorkerPool& pool) {
  const SocialGraph& graph = bank.graph();
  const GreedyOptions options{config.lazy, config.candidate_pool};
  const std::optional<ReciprocationModel> filter =
      recip.is_certain() ? std::nullopt : std::optional<ReciprocationModel>(recip);
  if (strategy == "greedy") return greedy_select(bank, config.k_max, metric, recip, options, pool);
  if (strategy == "dynamic_greedy") {
    const std::size_t attempts = config.max_attempts ? config.max_attempts : graph.node_count();
    return dynamic_greedy_simulate(bank, config.k_max, metric, recip,
                                   mix64(config.base_seed ^ 0x64796e616d6963ULL),
                                   std::max(attempts, std::min(config.k_max, graph.node_count())),
                                   options, pool);
  }
  SelectionResult result = strategy == "high_degree"
                               ? high_degree_select(graph, config.k_max, recip)
                               : random_select(graph, config.k_max, mix64(config.base_seed ^ 0x72616e646f6dULL));
  evaluate_curve(result, bank, metric, filter, pool);
  return result;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& config, const SocialGraph& graph,
                                 std::ostream& csv, WorkerPool& pool) {
  config.validate();
  ExperimentSummary summary;
  summary.graph_fingerprint = graph.fingerprint();
  summary.node_count = graph.node_count();
  summary.arc_count = graph.arc_count();
  RowWriter writer{csv, config};
  csv << kCsvHeader << '\n';
  try {
    const DegreeStats stats = degree_stats(graph);
    summary.mean_out_degree = stats.mean_out_degree;
    const ReciprocationModel recip = ReciprocationModel::parse(config.reciprocation);
    std::vector<std::size_t> grid;
    for (std::size_t k : config.k_grid) {
      if (k <= config.k_max) grid.push_back(k);
    }
    for (double p : config.p_list) {
      PCellSummary cell;
      cell.p = p;
      cell.effective_density = stats.mean_out_degree * p;
      cell.critical_p = stats.second_moment_out_degree > 0 ? critical_probability(stats) : 1.0;
      const SampleCountAdvice advice = advise_sample_count(stats, p, config.sample_policy);
      cell.p_ext = advice.model.p_ext;
      cell.recommended_samples = advice.recommended;
      cell.samples_used = config.samples ? *config.samples : advice.used;
      summary.cells.push_back(cell);

      const SampleBank bank =
          config.cache_dir.empty()
              ? build_sample_bank(graph, p, cell.samples_used, config.base_seed, pool)
              : load_or_build_sample_bank(graph, p, cell.samples_used, config.base_seed, config.cache_dir, pool);

      for (const auto& strategy : config.strategies) {
        for (Metric metric : config.metrics) {
          const auto start = std::chrono::steady_clock::now();
          const SelectionResult result = run_strategy(strategy, bank, metric, config, recip, pool);
          const double elapsed =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
          for (const auto& w : result.warnings) summary.warnings.push_back(strategy + ": " + w);
          for (std::size_t k : grid) {
            if (k >= result.objective_curve.size()) {
              summary.warnings.push_back(fmt::format("{} p={} {}: only {} picks, K={} not reported", strategy,
                                                     p, to_string(metric), result.picks.size(), k));
              continue;
            }
            if (config.seed_set_rows != SeedSetRows::without) {
              writer.write(strategy, p, metric, k, result.objective_curve[k], true, elapsed);
            }
            if (config.seed_set_rows != SeedSetRows::with) {
              writer.write(strategy, p, metric, k, result.objective_curve_without_seeds[k], false, elapsed);
            }
          }
          csv.flush();
        }
      }
    }
  } catch (...) {
    csv << "# partial\n";
    csv.flush();
    throw;
  }
  summary.rows = writer.rows;
  return summary;
}

void write_manifest(std::ostream& out, const ExperimentConfig& config, const ExperimentSummary& summary) {
  nlohmann::ordered_json j;
  j["library_version"] = kVersion;
  j["graph_fingerprint"] = fmt::format("{:016x}", summary.graph_fingerprint);
  j["node_count"] = summary.node_count;
  j["arc_count"] = summary.arc_count;
  j["mean_out_degree"] = summary.mean_out_degree;
  j["base_seed"] = config.base_seed;
  j["random_strategy_seed"] = mix64(config.base_seed ^ 0x72616e646f6dULL);
  j["dynamic_strategy_seed"] = mix64(config.base_seed ^ 0x64796e616d6963ULL);
  j["candidate_pool"] = config.candidate_pool == 0 ? std::string("all")
                                                   : "top-" + std::to_string(config.candidate_pool) +
                                                         "-effective-degree";
  auto& cells = j["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : summary.cells) {
    cells.push_back({{"p", c.p},
                     {"effective_density", c.effective_density},
                     {"critical_p", c.critical_p},
                     {"p_ext", c.p_ext},
                     {"recommended_samples", c.recommended_samples},
                     {"samples_used", c.samples_used},
                     {"sample_seeds", fmt::format("{}..{}", config.base_seed,
                                                  config.base_seed + c.samples_used - 1)}});
  }
  j["config"] = config.echo();
  if (!summary.id_map.empty()) j["id_map"] = summary.id_map;
  j["warnings"] = summary.warnings;
  j["rows"] = summary.rows;
  out << j.dump(2) << '\n';
}

std::filesystem::path manifest_path_for(const std::filesystem::path& csv) {
  auto m = csv;
  m += ".manifest.json";
  return m;
}

std::filesystem::path id_map_path_for(const std::filesystem::path& csv) {
  auto m = csv;
  m += ".ids.csv";
  return m;
}

ExperimentSummary run_experiment_to_files(const ExperimentConfig& config) {
  config.validate();
  if (config.output.empty()) throw Error("no output path configured");
  const LoadedGraph loaded = load_experiment_graph(config);
  WorkerPool pool(config.threads);
  std::ofstream csv(config.output);
  if (!csv) throw Error("cannot write " + config.output);
  ExperimentSummary summary = run_experiment(config, loaded.graph, csv, pool);
  if (!config.graph_path.empty()) {
    summary.id_map = id_map_path_for(config.output).string();
    std::ofstream ids(summary.id_map);
    if (!ids) throw Error("cannot write " + summary.id_map);
    write_id_map(ids, loaded.external_ids);
  }
  std::ofstream manifest(manifest_path_for(config.output));
  if (!manifest) throw Error("cannot write manifest for " + config.output);
  write_manifest(manifest, config, summary);
  return summary;
}

std::string strip_elapsed_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (const auto comma = line.rfind(','); comma != std::string::npos && line[0] != '#') line.resize(comma);
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace osnim
