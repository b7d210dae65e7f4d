#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "osnim/generator.hpp"
#include "osnim/graph.hpp"
#include "osnim/graph_io.hpp"
#include "test_support.hpp"

using namespace osnim;

namespace {

SocialGraph parse(const std::string& text, Orientation o = Orientation::propagation) {
  std::istringstream in(text);
  return load_edgelist(in, o).graph;
}

}  // namespace

TEST_CASE("load_edgelist builds propagation-oriented CSR") {
  const auto g = parse("0 1\n0 2\n");
  CHECK(g.node_count() == 3);
  CHECK(g.out_degree(0) == 2);
  CHECK(g.in_degree(1) == 1);
  CHECK(g.in_degree(0) == 0);
}

TEST_CASE("duplicate arcs collapse and self-loops are dropped") {
  const auto g = parse("0 1\n0 1\n");
  CHECK(g.arc_count() == 1);
  CHECK(g.collapsed_duplicates() == 1);

  const auto h = parse("0 1\n1 1\n");
  CHECK(h.arc_count() == 1);
  CHECK(h.dropped_self_loops() == 1);
}

TEST_CASE("3-cycle has unit in and out degree everywhere") {
  const auto g = parse("0 1\n1 2\n2 0\n");
  for (NodeId v = 0; v < 3; ++v) {
    CHECK(g.out_degree(v) == 1);
    CHECK(g.in_degree(v) == 1);
  }
}

TEST_CASE("follows orientation reverses arcs; comments and blank lines are skipped") {
  const auto g = parse("# a follows b\n\n5 9  # trailing\n", Orientation::follows);
  // 5 follows 9: tweets flow 9 -> 5. Compacted ids: 5 -> 0, 9 -> 1.
  CHECK(g.arc_count() == 1);
  CHECK(g.out_degree(1) == 1);
  CHECK(g.followers(1)[0] == 0);
}

TEST_CASE("external ids are compacted and recoverable through the id map") {
  std::istringstream in("100 7\n7 3000000000\n");
  const auto loaded = load_edgelist(in);
  REQUIRE(loaded.external_ids == std::vector<std::uint64_t>{7, 100, 3000000000ULL});
  std::stringstream csv;
  write_id_map(csv, loaded.external_ids);
  CHECK(csv.str().starts_with("external_id,internal_id\n7,0\n"));
  CHECK(read_id_map(csv) == loaded.external_ids);
}

TEST_CASE("malformed edgelists report the line number") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 999;
  };
  CHECK(line_of("0 1\n2 x\n") == 2);
  CHECK(line_of("0 1\n\n-1 2\n") == 3);
  CHECK(line_of("0 1 2\n") == 1);
  CHECK(line_of("7\n") == 1);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("# only a comment\n"), ParseError);
}

TEST_CASE("degree_stats closed forms") {
  SUBCASE("star with 10 leaves") {
    const auto s = degree_stats(testing::star(10));
    CHECK(s.mean_out_degree == doctest::Approx(10.0 / 11));
    CHECK(s.second_moment_out_degree == doctest::Approx(100.0 / 11));
    CHECK(s.max_out_degree == 10);
    CHECK(s.degree_histogram.at(0) == doctest::Approx(10.0 / 11));
  }
  SUBCASE("3-cycle") {
    const auto s = degree_stats(parse("0 1\n1 2\n2 0\n"));
    CHECK(s.mean_out_degree == 1.0);
    CHECK(s.second_moment_out_degree == 1.0);
  }
  CHECK_THROWS_AS(degree_stats(SocialGraph{}), Error);
}

TEST_CASE("property: degree sums, histogram mass and edgelist round trip") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    const auto g = testing::random_graph(rng, n, 0.15);
    std::size_t out_sum = 0, in_sum = 0;
    for (NodeId v = 0; v < n; ++v) {
      out_sum += g.out_degree(v);
      in_sum += g.in_degree(v);
    }
    CHECK(out_sum == g.arc_count());
    CHECK(in_sum == g.arc_count());

    const auto s = degree_stats(g);
    double mass = 0;
    for (const auto& [k, q] : s.degree_histogram) mass += q;
    CHECK(std::abs(mass - 1.0) < 1e-12);
    CHECK(s.mean_out_degree == static_cast<double>(g.arc_count()) / static_cast<double>(n));

    if (g.arc_count() == 0) continue;
    std::stringstream text;
    write_edgelist(text, g);
    auto loaded = load_edgelist(text);
    // Isolated nodes vanish from an edgelist; compare through the id map.
    std::vector<std::pair<NodeId, NodeId>> mapped;
    for (NodeId u = 0; u < loaded.graph.node_count(); ++u) {
      for (NodeId v : loaded.graph.followers(u)) {
        mapped.emplace_back(static_cast<NodeId>(loaded.external_ids[u]),
                            static_cast<NodeId>(loaded.external_ids[v]));
      }
    }
    CHECK(SocialGraph::from_arcs(n, mapped) == g);

    std::stringstream bin;
    write_binary_cache(bin, g);
    CHECK(read_binary_cache(bin) == g);
  }
}

TEST_CASE("binary cache layout and corruption") {
  const auto g = parse("0 1\n0 2\n1 2\n");
  std::stringstream bin;
  write_binary_cache(bin, g);
  const std::string bytes = bin.str();
  CHECK(bytes.substr(0, 4) == "CBG1");
  CHECK(bytes.size() == 4 + 16 + 8 * 4 + 4 * 3);
  std::stringstream truncated(bytes.substr(0, bytes.size() - 2));
  CHECK_THROWS_AS(read_binary_cache(truncated), Error);
  std::stringstream wrong("XXXX");
  CHECK_THROWS_AS(read_binary_cache(wrong), Error);
}

TEST_CASE("fingerprint tracks content") {
  const auto a = parse("0 1\n1 2\n");
  const auto b = parse("1 2\n0 1\n");
  const auto c = parse("0 1\n2 1\n");
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() != c.fingerprint());
}

TEST_CASE("configuration generator contracts") {
  const PowerLawDegrees spec{2.3, 1, 50};
  SUBCASE("single node has no valid targets") {
    CHECK(generate_configuration_graph(spec, 1, 3).arc_count() == 0);
  }
  SUBCASE("seed determinism and no self-loops") {
    const auto a = generate_configuration_graph(spec, 2000, 11);
    const auto b = generate_configuration_graph(spec, 2000, 11);
    const auto c = generate_configuration_graph(spec, 2000, 12);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    CHECK(a.dropped_self_loops() == 0);
    CHECK(a.collapsed_duplicates() == 0);
    for (NodeId u = 0; u < a.node_count(); ++u) {
      for (NodeId v : a.followers(u)) CHECK(v != u);
    }
  }
  SUBCASE("infeasible specs are rejected") {
    CHECK_THROWS_AS(generate_configuration_graph(PowerLawDegrees{2.3, 10, 5}, 100, 1), Error);
    CHECK_THROWS_AS(generate_configuration_graph(PowerLawDegrees{1.0, 1, 5}, 100, 1), Error);
    CHECK_THROWS_AS(generate_configuration_graph(DegreeHistogram{}, 100, 1), Error);
  }
  SUBCASE("explicit histogram") {
    const auto g = generate_configuration_graph(DegreeHistogram{{4, 1.0}}, 500, 2);
    for (NodeId u = 0; u < g.node_count(); ++u) CHECK(g.out_degree(u) == 4);
  }
}

TEST_CASE("generated power-law degrees match the target law") {
  const PowerLawDegrees spec{2.3, 1, 1000};
  SUBCASE("KS distance below 0.05 at 1e5 nodes") {
    const auto g = generate_configuration_graph(spec, 100000, 5);
    const auto target = target_distribution(spec);
    const auto empirical = degree_stats(g).degree_histogram;
    double cdf_t = 0, cdf_e = 0, ks = 0;
    for (std::size_t k = 0; k <= 1000; ++k) {
      if (auto it = target.find(k); it != target.end()) cdf_t += it->second;
      if (auto it = empirical.find(k); it != empirical.end()) cdf_e += it->second;
      ks = std::max(ks, std::abs(cdf_t - cdf_e));
    }
    CHECK(ks < 0.05);
  }
  SUBCASE("realized mean within 10% of the analytic mean at 1e4 nodes") {
    const auto g = generate_configuration_graph(spec, 10000, 6);
    const double analytic = analytic_mean_degree(spec);
    CHECK(std::abs(degree_stats(g).mean_out_degree - analytic) < 0.1 * analytic);
  }
}
