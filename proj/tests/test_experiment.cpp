#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "osnim/experiment.hpp"
#include "test_support.hpp"

using namespace osnim;

namespace {

ExperimentConfig config_from(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string run_to_string(const ExperimentConfig& config, const SocialGraph& g, std::size_t threads) {
  WorkerPool pool(threads);
  std::ostringstream csv;
  run_experiment(config, g, csv, pool);
  return csv.str();
}

const char* kSmallRun =
    "synthetic = 2.3,3000,2,200\n"
    "synthetic_seed = 4\n"
    "p = 0.02,0.2\n"
    "k_max = 12\n"
    "k_grid = 0,1,5,12\n"
    "strategies = greedy,high_degree,random,dynamic_greedy\n"
    "metrics = retweeters,readers\n"
    "recip = ratio\n"
    "samples = 40\n"
    "seed = 99\n";

}  // namespace

TEST_CASE("config parsing") {
  const auto c = config_from(
      "# comment line\n"
      "synthetic = 2.5,500,1,50   # trailing\n"
      "\n"
      "p = 0.1, 0.01\n"
      "k = 7\n"
      "samples = auto\n"
      "recip = const=0.3\n"
      "seed_set_rows = both\n");
  REQUIRE(c.synthetic);
  CHECK(c.synthetic->exponent == 2.5);
  CHECK(c.synthetic->nodes == 500);
  CHECK(c.p_list == std::vector<double>{0.1, 0.01});
  CHECK(c.k_max == 7);
  CHECK_FALSE(c.samples);
  CHECK(c.seed_set_rows == SeedSetRows::both);
  CHECK(c.k_grid == std::vector<std::size_t>{1, 2, 5, 10, 20, 50, 100, 200});
  CHECK_NOTHROW(c.validate());

  // The echo reads back to the same settings.
  std::string text;
  for (const auto& [k, v] : c.echo()) text += k + "=" + v + "\n";
  CHECK(config_from(text).echo() == c.echo());

  auto error_line = [](const std::string& text) -> std::size_t {
    try {
      config_from(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(error_line("p = 0.1\nbogus = 3\n") == 2);
  CHECK(error_line("p = abc\n") == 1);
  CHECK(error_line("\n\nno equals sign\n") == 3);
  CHECK(error_line("strategies = greedy,clever\n") == 1);
  CHECK(error_line("recip = sometimes\n") == 1);
  CHECK(error_line("metric = viewers\n") == 1);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(config_from("p = 0.1\n").validate(), Error);
  CHECK_THROWS_AS(config_from("synthetic = 2.3,10,1,5\n").validate(), Error);
  CHECK_THROWS_AS(config_from("synthetic = 2.3,10,1,5\np = 0\n").validate(), Error);
  CHECK_THROWS_AS(config_from("synthetic = 2.3,10,1,5\np = 1.5\n").validate(), Error);
  CHECK_THROWS_AS(config_from("synthetic = 2.3,10,1,5\np = 0.5\nk_max = 0\n").validate(), Error);
  CHECK_THROWS_AS(config_from("synthetic = 2.3,10,1,5\np = 0.5\ngraph = x.txt\n").validate(), Error);
  CHECK_NOTHROW(config_from("synthetic = 2.3,10,1,5\np = 0.5\n").validate());
}

TEST_CASE("empty prefix yields a single zero row") {
  const auto g = testing::chain(5);
  auto c = config_from("p = 1\nstrategies = random\nk_grid = 0\nsamples = 3\nk_max = 2\n");
  c.graph_path = "unused";
  const auto lines = lines_of(run_to_string(c, g, 1));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == kCsvHeader);
  CHECK(lines[1].starts_with("random,1,retweeters,0,0,0,0,0,true,"));
}

TEST_CASE("seed-set rows") {
  const auto g = testing::chain(5);
  auto c = config_from("p = 1\nstrategies = greedy\nk_grid = 1,2\nk_max = 2\nsamples = 2\nseed_set_rows = both\n");
  c.graph_path = "unused";
  c.record_elapsed = false;
  const auto lines = lines_of(run_to_string(c, g, 1));
  REQUIRE(lines.size() == 5);
  CHECK(lines[1] == "greedy,1,retweeters,1,5,0,5,5,true,0");
  CHECK(lines[2] == "greedy,1,retweeters,1,4,0,4,4,false,0");
  CHECK(lines[3] == "greedy,1,retweeters,2,5,0,5,5,true,0");
  CHECK(lines[4] == "greedy,1,retweeters,2,3,0,3,3,false,0");
}

TEST_CASE("experiment output is reproducible across runs and thread counts") {
  auto c = config_from(kSmallRun);
  const auto g = load_experiment_graph(c).graph;
  const auto a = run_to_string(c, g, 1);
  const auto b = run_to_string(c, g, 1);
  const auto d = run_to_string(c, g, 4);
  CHECK(strip_elapsed_column(a) == strip_elapsed_column(b));
  CHECK(strip_elapsed_column(a) == strip_elapsed_column(d));
  // 2 p x 4 strategies x 2 metrics x 4 grid points.
  CHECK(lines_of(a).size() == 1 + 64);

  c.record_elapsed = false;
  CHECK(run_to_string(c, g, 1) == run_to_string(c, g, 3));

  c.base_seed = 100;
  CHECK(strip_elapsed_column(run_to_string(c, g, 1)) != strip_elapsed_column(a));
}

TEST_CASE("files and manifest") {
  const auto dir = std::filesystem::temp_directory_path() / "osnim_experiment_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  auto c = config_from(kSmallRun);
  c.samples.reset();
  c.output = (dir / "run.csv").string();
  c.threads = 2;
  const auto summary = run_experiment_to_files(c);
  CHECK(summary.rows == 64);

  std::ifstream mf(manifest_path_for(c.output));
  const auto j = nlohmann::json::parse(mf);
  CHECK(j["library_version"] == kVersion);
  CHECK(j["graph_fingerprint"].get<std::string>().size() == 16);
  CHECK(j["base_seed"] == 99);
  CHECK(j["config"]["samples"] == "auto");
  REQUIRE(j["cells"].size() == 2);
  for (const auto& cell : j["cells"]) {
    const std::size_t used = cell["samples_used"];
    CHECK(used >= 30);
    CHECK(used <= 200);
    CHECK(cell["effective_density"].get<double>() ==
          doctest::Approx(cell["p"].get<double>() * summary.mean_out_degree));
  }

  // Fingerprint follows the graph content.
  auto other = c;
  other.synthetic->seed = 5;
  CHECK(load_experiment_graph(other).graph.fingerprint() != load_experiment_graph(c).graph.fingerprint());
  CHECK(load_experiment_graph(c).graph.fingerprint() == summary.graph_fingerprint);
  std::filesystem::remove_all(dir);
}

TEST_CASE("failures leave a partial marker") {
  const auto dir = std::filesystem::temp_directory_path() / "osnim_partial_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto blocker = dir / "not_a_dir";
  std::ofstream(blocker) << "x";
  auto c = config_from("p = 0.5\nk_max = 2\nsamples = 2\n");
  c.graph_path = "unused";
  c.cache_dir = (blocker / "cache").string();
  std::ostringstream csv;
  WorkerPool pool(1);
  CHECK_THROWS(run_experiment(c, testing::chain(4), csv, pool));
  CHECK(lines_of(csv.str()).back() == "# partial");
  std::filesystem::remove_all(dir);
}

TEST_CASE("edgelist graphs load through the config") {
  const auto dir = std::filesystem::temp_directory_path() / "osnim_graph_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "g.txt";
  std::ofstream(path) << "1 2\n2 3\n3 1\n";
  auto c = config_from("p = 0.5\n");
  c.graph_path = path.string();
  CHECK(load_experiment_graph(c).graph.node_count() == 3);
  c.graph_path = (dir / "missing.txt").string();
  CHECK_THROWS_AS(load_experiment_graph(c), Error);
  std::filesystem::remove_all(dir);
}
