#include <fmt/format.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "osnim/branching.hpp"
#include "osnim/experiment.hpp"
#include "osnim/generator.hpp"
#include "osnim/graph_io.hpp"
#include "osnim/sample_bank.hpp"
#include "osnim/selection.hpp"

using namespace osnim;

namespace {

// Thrown for bad flag values detected after CLI11 parsing; maps to exit 2.
struct UsageError : Error {
  using Error::Error;
};

struct Options {
  std::string graph;
  std::string synthetic;
  std::uint64_t synthetic_seed = 1;
  std::string orientation = "propagation";
  std::string id_map;
  std::string p;
  std::size_t k = 10;
  std::string strategy = "greedy";
  std::string metric = "retweeters";
  std::string recip = "certain";
  std::string samples = "auto";
  std::uint64_t seed = 1;
  std::string out;
  std::size_t threads = 1;
  std::string config;
  std::string seeds;
  std::string format = "text";
  bool lazy = true;
  std::size_t candidate_pool = 0;
  std::size_t max_attempts = 0;
};

double parse_probability(const std::string& text) {
  std::size_t used = 0;
  double p = 0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !(p >= 0 && p <= 1)) {
    throw UsageError("--p expects probabilities in [0, 1], got '" + text + "'");
  }
  return p;
}

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) out.push_back(parse_probability(item));
  if (out.empty()) throw UsageError("--p is required");
  return out;
}

double single_p(const Options& o) {
  const auto list = parse_p_list(o.p);
  if (list.size() != 1) throw UsageError("--p takes a single value for this command");
  return list[0];
}

LoadedGraph load_input(const Options& o) {
  if (o.graph.empty() == o.synthetic.empty()) throw UsageError("give exactly one of --graph or --synthetic");
  ExperimentConfig c;
  if (!o.graph.empty()) {
    c.graph_path = o.graph;
    c.set("orientation", o.orientation);
  } else {
    try {
      c.set("synthetic", o.synthetic);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    c.synthetic->seed = o.synthetic_seed;
  }
  auto loaded = load_experiment_graph(c);
  if (!o.id_map.empty()) {
    std::ofstream out(o.id_map);
    if (!out) throw Error("cannot write " + o.id_map);
    write_id_map(out, loaded.external_ids);
  }
  return loaded;
}

std::uint64_t external(const LoadedGraph& g, NodeId v) { return g.external_ids[v]; }

std::size_t sample_count(const Options& o, const SocialGraph& graph, double p) {
  if (o.samples == "auto") return advise_sample_count(degree_stats(graph), p).used;
  std::size_t used = 0;
  std::size_t n = 0;
  try {
    n = std::stoull(o.samples, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != o.samples.size() || n == 0) throw UsageError("--samples expects N >= 1 or auto");
  return n;
}

// Output goes to --out when given, otherwise stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_stats(const Options& o) {
  const auto loaded = load_input(o);
  const auto& g = loaded.graph;
  const auto s = degree_stats(g);
  fmt::print("N={}\nE={}\n<k>={}\n<k^2>={}\nmax_out_degree={}\n", g.node_count(), g.arc_count(),
             s.mean_out_degree, s.second_moment_out_degree, s.max_out_degree);
  fmt::print("dropped_self_loops={}\ncollapsed_duplicates={}\nfingerprint={:016x}\n", g.dropped_self_loops(),
             g.collapsed_duplicates(), g.fingerprint());
  return 0;
}

int cmd_generate(const Options& o) {
  if (o.synthetic.empty()) throw UsageError("generate needs --synthetic");
  if (o.out.empty()) throw UsageError("generate needs --out");
  const auto g = load_input(o).graph;
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw Error("cannot write " + o.out);
  if (o.format == "binary") write_binary_cache(out, g);
  else write_edgelist(out, g);
  if (!out) throw Error("failed writing " + o.out);
  fmt::print("wrote N={} E={} to {}\n", g.node_count(), g.arc_count(), o.out);
  return 0;
}

int cmd_prune_cache(const Options& o) {
  if (o.out.empty()) throw UsageError("prune-cache needs --out DIR");
  const auto g = load_input(o).graph;
  const double p = single_p(o);
  const std::size_t n = sample_count(o, g, p);
  const auto bank = load_or_build_sample_bank(g, p, n, o.seed, o.out);
  std::size_t kept = 0;
  for (std::size_t i = 0; i < bank.size(); ++i) kept += bank.kept_arc_count(i);
  fmt::print("cached {} samples (seeds {}..{}) in {}; mean kept arcs {}\n", bank.size(), o.seed,
             o.seed + bank.size() - 1, o.out, static_cast<double>(kept) / static_cast<double>(bank.size()));
  return 0;
}

int cmd_select(const Options& o) {
  const auto loaded = load_input(o);
  const auto& g = loaded.graph;
  const double p = single_p(o);
  const Metric metric = parse_metric(o.metric);
  const auto recip = ReciprocationModel::parse(o.recip);
  const auto bank = build_sample_bank(g, p, sample_count(o, g, p), o.seed);
  const GreedyOptions options{o.lazy, o.candidate_pool};
  const std::optional<ReciprocationModel> filter =
      recip.is_certain() ? std::nullopt : std::optional<ReciprocationModel>(recip);

  SelectionResult result;
  if (o.strategy == "greedy") {
    result = greedy_select(bank, o.k, metric, recip, options);
  } else if (o.strategy == "dynamic_greedy") {
    const std::size_t attempts = o.max_attempts ? o.max_attempts : g.node_count();
    result = dynamic_greedy_simulate(bank, o.k, metric, recip, o.seed, std::max(attempts, o.k), options);
  } else {
    result = o.strategy == "high_degree" ? high_degree_select(g, o.k, recip) : random_select(g, o.k, o.seed);
    evaluate_curve(result, bank, metric, filter);
  }
  for (const auto& w : result.warnings) fmt::print(stderr, "warning: {}\n", w);

  Sink sink(o.out);
  auto& out = sink.stream();
  out << "strategy,K_prefix,mean,stderr,ci_low,ci_high,picks\n";
  for (std::size_t k = 0; k < result.objective_curve.size(); ++k) {
    const auto& e = result.objective_curve[k];
    out << fmt::format("{},{},{},{},{},{},{}\n", result.strategy, k, e.mean, e.std_error, e.ci_low, e.ci_high,
                       k ? fmt::format("{}", external(loaded, result.picks[k - 1])) : std::string());
  }
  if (!result.attempts.empty()) {
    std::string log;
    for (const auto& a : result.attempts) {
      log += fmt::format("{}{}:{}", log.empty() ? "" : " ", external(loaded, a.node), a.reciprocated ? 1 : 0);
    }
    fmt::print(stderr, "attempts: {}\n", log);
  }
  return 0;
}

int cmd_estimate(const Options& o) {
  const auto loaded = load_input(o);
  const auto& g = loaded.graph;
  const double p = single_p(o);
  const Metric metric = parse_metric(o.metric);
  const auto recip = ReciprocationModel::parse(o.recip);

  std::map<std::uint64_t, NodeId> internal;
  for (NodeId v = 0; v < loaded.external_ids.size(); ++v) internal[loaded.external_ids[v]] = v;
  NodeSet seeds;
  std::istringstream in(o.seeds);
  for (std::string item; std::getline(in, item, ',');) {
    std::size_t used = 0;
    std::uint64_t id = 0;
    try {
      id = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw UsageError("--seeds expects comma-separated node ids");
    const auto it = internal.find(id);
    if (it == internal.end()) throw Error(fmt::format("node {} not in graph", id));
    seeds.push_back(it->second);
  }

  const auto bank = build_sample_bank(g, p, sample_count(o, g, p), o.seed);
  const std::optional<ReciprocationModel> filter =
      recip.is_certain() ? std::nullopt : std::optional<ReciprocationModel>(recip);
  const auto e = estimate_influence(bank, seeds, metric, filter);
  fmt::print("metric={}\nmean={}\nstderr={}\nci_low={}\nci_high={}\nsamples={}\n", to_string(metric), e.mean,
             e.std_error, e.ci_low, e.ci_high, e.n_samples);
  return 0;
}

int cmd_analyze(const Options& o) {
  const auto g = load_input(o).graph;
  const auto stats = degree_stats(g);
  const double pc = critical_probability(stats);
  fmt::print("N={} E={} <k>={} <k^2>={}\n", g.node_count(), g.arc_count(), stats.mean_out_degree,
             stats.second_moment_out_degree);
  fmt::print("p_c={}\n\n", pc);
  const auto ps = parse_p_list(o.p);

  std::vector<SampleCountAdvice> rows;
  for (double p : ps) {
    if (p == 0) throw UsageError("analyze needs p > 0");
    rows.push_back(advise_sample_count(stats, p));
  }
  fmt::print("{:>12} {:>12} {:>12} {:>12} {:>12} {:>8}\n", "p", "<k>p", "m", "p_ext", "recommended", "used");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto& r = rows[i];
    fmt::print("{:>12} {:>12.6g} {:>12.6g} {:>12.6g} {:>12} {:>8}\n", ps[i], stats.mean_out_degree * ps[i],
               r.model.mean_offspring, r.model.p_ext, r.recommended, r.used);
  }

  std::ostringstream csv;
  csv << "p,effective_density,mean_offspring,p_c,p_ext,recommended_samples,samples_used\n";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto& r = rows[i];
    csv << fmt::format("{},{},{},{},{},{},{}\n", ps[i], stats.mean_out_degree * ps[i], r.model.mean_offspring, pc,
                       r.model.p_ext, r.recommended, r.used);
  }
  if (o.out.empty()) {
    fmt::print("\n{}", csv.str());
  } else {
    Sink sink(o.out);
    sink.stream() << csv.str();
  }
  return 0;
}

int cmd_experiment(const Options& o, const CLI::App& sub) {
  ExperimentConfig config;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw UsageError("cannot read config " + o.config);
    try {
      config = parse_config(in);
    } catch (const ParseError& e) {
      throw UsageError(fmt::format("{}:{}: {}", o.config, e.line(), e.what()));
    }
  }
  // Flags win over the config file.
  const std::vector<std::pair<std::string, std::string>> overrides{
      {"--graph", "graph"},     {"--synthetic", "synthetic"},   {"--orientation", "orientation"},
      {"--p", "p"},             {"--k", "k_max"},               {"--strategy", "strategies"},
      {"--metric", "metrics"},  {"--recip", "recip"},           {"--samples", "samples"},
      {"--seed", "seed"},       {"--out", "out"},               {"--threads", "threads"},
      {"--synthetic-seed", "synthetic_seed"}, {"--candidate-pool", "candidate_pool"},
      {"--max-attempts", "max_attempts"}};
  try {
    for (const auto& [flag, key] : overrides) {
      const auto* opt = sub.get_option_no_throw(flag);
      if (opt && opt->count() > 0) {
        if (key == "graph") config.synthetic.reset();
        if (key == "synthetic") config.graph_path.clear();
        config.set(key, opt->as<std::string>());
      }
    }
    config.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (config.output.empty()) throw UsageError("experiment needs an output path (--out or out=)");
  const auto summary = run_experiment_to_files(config);
  for (const auto& w : summary.warnings) fmt::print(stderr, "warning: {}\n", w);
  fmt::print("wrote {} rows to {} (manifest {})\n", summary.rows, config.output,
             manifest_path_for(config.output).string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Influence maximization for follow-based social networks"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> strategies{"greedy", "high_degree", "random", "dynamic_greedy"};
  const std::vector<std::string> metrics{"retweeters", "readers"};
  const auto recip_check = CLI::Validator(
      [](std::string& s) {
        try {
          ReciprocationModel::parse(s);
        } catch (const std::exception& e) {
          return std::string(e.what());
        }
        return std::string();
      },
      "certain|const=R|ratio");

  auto graph_flags = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph, "edgelist or binary cache path");
    sub->add_option("--synthetic", o.synthetic, "power-law graph: exponent,n,minDeg,maxDeg");
    sub->add_option("--synthetic-seed", o.synthetic_seed, "generator seed for --synthetic");
    sub->add_option("--orientation", o.orientation, "edgelist orientation")
        ->check(CLI::IsMember({"propagation", "follows"}));
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--id-map", o.id_map, "write external_id,internal_id CSV here");
  };
  auto model_flags = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "retweet probability");
    sub->add_option("--metric", o.metric, "retweeters|readers")->check(CLI::IsMember(metrics));
    sub->add_option("--recip", o.recip, "reciprocation model")->check(recip_check);
    sub->add_option("--samples", o.samples, "Monte Carlo samples: N or auto");
    sub->add_option("--seed", o.seed, "base sample seed");
  };

  auto* stats = app.add_subcommand("stats", "graph size and degree moments");
  graph_flags(stats);

  auto* generate = app.add_subcommand("generate", "write a synthetic power-law graph");
  graph_flags(generate);
  generate->add_option("--out", o.out, "output path")->required();
  generate->add_option("--format", o.format, "text|binary")->check(CLI::IsMember({"text", "binary"}));

  auto* prune_cache = app.add_subcommand("prune-cache", "build and store condensed samples");
  graph_flags(prune_cache);
  model_flags(prune_cache);
  prune_cache->add_option("--out", o.out, "cache directory")->required();

  auto* select = app.add_subcommand("select", "run one selection strategy");
  graph_flags(select);
  model_flags(select);
  select->add_option("--k", o.k, "number of followings to pick");
  select->add_option("--strategy", o.strategy, "strategy")->check(CLI::IsMember(strategies));
  select->add_option("--out", o.out, "CSV output (default stdout)");
  select->add_option("--candidate-pool", o.candidate_pool, "top-M candidates by effective degree (0 = all)");
  select->add_option("--max-attempts", o.max_attempts, "dynamic_greedy proposal budget (0 = node count)");
  select->add_flag("!--eager", o.lazy, "disable lazy evaluation");

  auto* estimate = app.add_subcommand("estimate", "estimate the objective of a seed set");
  graph_flags(estimate);
  model_flags(estimate);
  estimate->add_option("--seeds", o.seeds, "comma-separated node ids")->required();

  auto* analyze = app.add_subcommand("analyze", "criticality, extinction and sample counts");
  graph_flags(analyze);
  analyze->add_option("--p", o.p, "comma-separated probabilities")->required();
  analyze->add_option("--out", o.out, "CSV output (default: printed after the table)");

  auto* experiment = app.add_subcommand("experiment", "run a configured experiment");
  experiment->add_option("--config", o.config, "key=value config file");
  experiment->add_option("--graph", o.graph, "edgelist or binary cache path");
  experiment->add_option("--synthetic", o.synthetic, "power-law graph: exponent,n,minDeg,maxDeg");
  experiment->add_option("--synthetic-seed", o.synthetic_seed, "generator seed");
  experiment->add_option("--orientation", o.orientation, "edgelist orientation")
      ->check(CLI::IsMember({"propagation", "follows"}));
  experiment->add_option("--p", o.p, "comma-separated probabilities");
  experiment->add_option("--k", o.k, "K_max");
  experiment->add_option("--strategy", o.strategy, "comma-separated strategies");
  experiment->add_option("--metric", o.metric, "comma-separated metrics");
  experiment->add_option("--recip", o.recip, "reciprocation model")->check(recip_check);
  experiment->add_option("--samples", o.samples, "N or auto");
  experiment->add_option("--seed", o.seed, "base seed");
  experiment->add_option("--out", o.out, "CSV output path");
  experiment->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  experiment->add_option("--candidate-pool", o.candidate_pool, "top-M candidates (0 = all)");
  experiment->add_option("--max-attempts", o.max_attempts, "dynamic_greedy proposal budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    WorkerPool::set_shared_threads(o.threads);
    if (stats->parsed()) return cmd_stats(o);
    if (generate->parsed()) return cmd_generate(o);
    if (prune_cache->parsed()) return cmd_prune_cache(o);
    if (select->parsed()) return cmd_select(o);
    if (estimate->parsed()) return cmd_estimate(o);
    if (analyze->parsed()) return cmd_analyze(o);
    if (experiment->parsed()) return cmd_experiment(o, *experiment);
  } catch (const UsageError& e) {
    fmt::print(stderr, "usage error: {}\nRun with --help for usage.\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 2;
}
