#include <doctest.h>

#include <algorithm>
#include <random>

#include "osnim/exact.hpp"
#include "osnim/transforms.hpp"
#include "test_support.hpp"

using namespace osnim;

namespace {

NodeSet original_followers(const TransformedGraph& t, NodeId u) {
  NodeSet out;
  for (NodeId v : t.graph.followers(u)) {
    if (v < t.original_nodes) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("follow-back transform layout") {
  const auto g = testing::chain(3);
  const auto t = follow_back_transform(g, ReciprocationModel::constant(0.5), 0.3);
  CHECK(t.graph.node_count() == 6);
  CHECK(t.graph.arc_count() == g.arc_count() + 3);
  CHECK(t.image(NodeSet{0, 2}) == NodeSet{3, 5});
  for (NodeId u = 0; u < 3; ++u) {
    CHECK(t.node_map[u] == 3 + u);
    const auto f = t.graph.followers(t.node_map[u]);
    REQUIRE(f.size() == 1);
    CHECK(f[0] == u);
    CHECK(std::ranges::equal(original_followers(t, u), g.followers(u)));
  }
  for (double w : t.node_weight) CHECK(w == 1);
}

TEST_CASE("follow-back with certain reciprocation adds exactly |B|") {
  const auto g = testing::chain(3);
  const auto t = follow_back_transform(g, ReciprocationModel::certain(), 0.5);
  for (const NodeSet& b : {NodeSet{0}, NodeSet{1}, NodeSet{0, 2}}) {
    CHECK(exact_weighted_influence(t, t.image(b)) ==
          doctest::Approx(exact_influence(g, b, 0.5, Metric::retweeters) + static_cast<double>(b.size())));
  }
}

TEST_CASE("follow-back with r = 0 never starts a cascade") {
  std::mt19937_64 rng(1);
  const auto g = testing::random_graph_with_arcs(rng, 6, 10);
  const auto t = follow_back_transform(g, ReciprocationModel::constant(0), 0.7);
  CHECK(exact_weighted_influence(t, t.image(NodeSet{0, 1, 4})) == doctest::Approx(3));
}

TEST_CASE("follow-back p0 scales the reciprocation arc") {
  const auto g = testing::chain(2);
  const std::vector<double> p0{0.5, 1.0};
  const auto t = follow_back_transform(g, ReciprocationModel::certain(), 1.0, p0);
  // u'' -> u succeeds w.p. 0.5; then v follows with certainty.
  CHECK(exact_weighted_influence(t, t.image(NodeSet{0})) == doctest::Approx(1 + 0.5 * 2));
}

TEST_CASE("follow-back identity on random tiny instances with r = 0.5") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    const auto g = testing::random_graph_with_arcs(rng, n, rng() % 10);
    const double p = static_cast<double>(1 + rng() % 9) / 10;
    const auto recip = ReciprocationModel::constant(0.5);
    const auto t = follow_back_transform(g, recip, p);
    NodeSet b;
    for (NodeId v = 0; v < n; ++v) {
      if (rng() % 3 == 0) b.push_back(v);
    }
    CHECK(exact_weighted_influence(t, t.image(b)) ==
          doctest::Approx(exact_influence(g, b, p, Metric::retweeters, recip) +
                          static_cast<double>(b.size())));
  }
}

TEST_CASE("reader transform layout") {
  const auto g = testing::chain(3);
  const auto t = reader_transform(g, 0.4);
  CHECK(t.graph.node_count() == 6);
  // Each original arc v -> u adds v -> u''; each node adds u -> u''.
  CHECK(t.graph.arc_count() == 2 + 2 + 3);
  double weight = 0;
  for (NodeId v = 0; v < 6; ++v) {
    weight += t.node_weight[v];
    CHECK(t.node_weight[v] == (v < 3 ? 0.0 : 1.0));
  }
  CHECK(weight == 3);
  for (NodeId u = 0; u < 3; ++u) CHECK(std::ranges::equal(original_followers(t, u), g.followers(u)));
}

TEST_CASE("reader transform hand traces") {
  const auto empty = SocialGraph::from_arcs(4, {});
  const auto te = reader_transform(empty, 0.5);
  for (NodeId u = 0; u < 4; ++u) CHECK(exact_weighted_influence(te, NodeSet{u}) == doctest::Approx(1));

  const auto arc = testing::chain(2);
  CHECK(exact_weighted_influence(reader_transform(arc, 1.0), NodeSet{0}) == doctest::Approx(2));
}

TEST_CASE("reader transform matches reader enumeration on random tiny graphs") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const auto g = testing::random_graph_with_arcs(rng, n, rng() % 12);
    const double p = static_cast<double>(rng() % 11) / 10;
    const auto t = reader_transform(g, p);
    NodeSet b;
    for (NodeId v = 0; v < n; ++v) {
      if (rng() % 3 == 0) b.push_back(v);
    }
    const double psi = exact_weighted_influence(t, b);
    CHECK(psi == doctest::Approx(exact_influence(g, b, p, Metric::readers)));
    CHECK(psi <= static_cast<double>(n) + 1e-9);
  }
}
