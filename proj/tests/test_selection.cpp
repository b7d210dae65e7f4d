#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "osnim/exact.hpp"
#include "osnim/sample_bank.hpp"
#include "osnim/selection.hpp"
#include "test_support.hpp"

using namespace osnim;

namespace {

std::vector<double> random_r(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> r(n);
  for (auto& x : r) x = static_cast<double>(1 + rng() % 10) / 10;
  return r;
}

}  // namespace

TEST_CASE("greedy picks the centre of a star") {
  const auto g = testing::star(6);
  const auto bank = build_sample_bank(g, 1.0, 5, 1);
  for (bool lazy : {true, false}) {
    const auto res = greedy_select(bank, 1, Metric::retweeters, ReciprocationModel::certain(), {lazy});
    CHECK(res.picks == NodeSet{0});
    CHECK(res.objective_curve.back().mean == 7);
  }
}

TEST_CASE("greedy on two disjoint chains takes both heads, longer first") {
  const auto g = SocialGraph::from_arcs(5, {{0, 1}, {1, 2}, {3, 4}});
  const auto bank = build_sample_bank(g, 1.0, 3, 1);
  const auto res = greedy_select(bank, 2, Metric::retweeters, ReciprocationModel::certain());
  CHECK(res.picks == NodeSet{0, 3});
  CHECK(res.step_gains == std::vector<double>{3, 2});
  CHECK(res.objective_curve.size() == 3);
  CHECK(res.objective_curve[0].mean == 0);
  CHECK(res.objective_curve_without_seeds[2].mean == 3);
}

TEST_CASE("greedy truncates K beyond the node count") {
  const auto g = testing::chain(3);
  const auto bank = build_sample_bank(g, 0.5, 5, 1);
  const auto res = greedy_select(bank, 10, Metric::readers, ReciprocationModel::certain());
  CHECK(res.picks.size() == 3);
  CHECK(res.k == 3);
  CHECK(res.warnings.size() == 1);
}

TEST_CASE("lazy and eager greedy agree on sample banks") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 20 + rng() % 60;
    const auto g = testing::random_graph(rng, n, 2.5 / static_cast<double>(n));
    const auto bank = build_sample_bank(g, 0.2 + 0.6 * static_cast<double>(rng() % 10) / 10, 30, rng());
    const auto recip = trial % 2 ? ReciprocationModel::table(random_r(rng, n)) : ReciprocationModel::certain();
    for (Metric m : {Metric::retweeters, Metric::readers}) {
      const auto lazy = greedy_select(bank, 8, m, recip, {true});
      const auto eager = greedy_select(bank, 8, m, recip, {false});
      CHECK(lazy.picks == eager.picks);
      CHECK(lazy.step_gains == eager.step_gains);
      for (std::size_t i = 1; i < lazy.step_gains.size(); ++i) {
        CHECK(lazy.step_gains[i] <= lazy.step_gains[i - 1]);
      }
      for (std::size_t i = 1; i < lazy.objective_curve.size(); ++i) {
        CHECK(lazy.objective_curve[i].mean >= lazy.objective_curve[i - 1].mean);
      }
      CHECK(std::set<NodeId>(lazy.picks.begin(), lazy.picks.end()).size() == lazy.picks.size());
    }
  }
}

TEST_CASE("candidate pool restriction is honoured and recorded") {
  std::mt19937_64 rng(2);
  const auto g = testing::random_graph(rng, 60, 0.05);
  const auto bank = build_sample_bank(g, 0.5, 10, 3);
  GreedyOptions options;
  options.candidate_pool = 5;
  const auto res = greedy_select(bank, 5, Metric::retweeters, ReciprocationModel::certain(), options);
  auto top = effective_degree_order(g, ReciprocationModel::certain());
  top.resize(5);
  CHECK(std::set<NodeId>(res.picks.begin(), res.picks.end()) == std::set<NodeId>(top.begin(), top.end()));
  CHECK(res.candidate_pool == "top-5-effective-degree");
}

TEST_CASE("high-degree ordering") {
  SUBCASE("degrees 5, 3, 1") {
    std::vector<std::pair<NodeId, NodeId>> arcs;
    for (NodeId v = 3; v < 8; ++v) arcs.emplace_back(0, v);
    for (NodeId v = 3; v < 6; ++v) arcs.emplace_back(1, v);
    arcs.emplace_back(2, 3);
    const auto g = SocialGraph::from_arcs(8, arcs);
    CHECK(high_degree_select(g, 2, ReciprocationModel::certain()).picks == NodeSet{0, 1});
  }
  SUBCASE("effective degree r*d") {
    std::vector<std::pair<NodeId, NodeId>> arcs;
    for (NodeId v = 2; v < 12; ++v) arcs.emplace_back(0, v);
    for (NodeId v = 2; v < 6; ++v) arcs.emplace_back(1, v);
    const auto g = SocialGraph::from_arcs(12, arcs);
    std::vector<double> r(12, 1.0);
    r[0] = 0.1;
    CHECK(high_degree_select(g, 1, ReciprocationModel::table(r)).picks == NodeSet{1});
  }
  SUBCASE("ratio formula") {
    std::vector<std::pair<NodeId, NodeId>> arcs;
    for (NodeId v = 1; v <= 150; ++v) arcs.emplace_back(0, v);
    for (NodeId v = 151; v <= 200; ++v) arcs.emplace_back(v, 0);
    const auto g = SocialGraph::from_arcs(201, arcs);
    const auto ratio = ReciprocationModel::ratio_formula();
    CHECK(ratio.probability(g, 0) == doctest::Approx(0.2));
    CHECK(ratio.probability(g, 0) * static_cast<double>(g.out_degree(0)) == doctest::Approx(30));
    CHECK(ratio.probability(g, 151) == 0);  // one follower, no followings
    CHECK(ratio.probability(g, 1) == doctest::Approx(1.0 / 100));
  }
  SUBCASE("certain is pure degree order; scaling r keeps the order") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const auto g = testing::random_graph(rng, 40, 0.1);
      const auto picks = high_degree_select(g, 40, ReciprocationModel::certain()).picks;
      for (std::size_t i = 1; i < picks.size(); ++i) {
        const auto a = g.out_degree(picks[i - 1]), b = g.out_degree(picks[i]);
        CHECK((a > b || (a == b && picks[i - 1] < picks[i])));
      }
      auto r = random_r(rng, 40);
      auto scaled = r;
      for (auto& x : scaled) x *= 0.25;
      CHECK(high_degree_select(g, 40, ReciprocationModel::table(r)).picks ==
            high_degree_select(g, 40, ReciprocationModel::table(scaled)).picks);
    }
  }
}

TEST_CASE("random selection") {
  const auto g = SocialGraph::from_arcs(100, {});
  auto all = random_select(g, 100, 5).picks;
  std::ranges::sort(all);
  for (NodeId v = 0; v < 100; ++v) CHECK(all[v] == v);
  CHECK(random_select(g, 10, 42).picks == random_select(g, 10, 42).picks);
  CHECK(random_select(g, 10, 42).picks != random_select(g, 10, 43).picks);

  std::vector<int> count(100, 0);
  for (std::uint64_t seed = 0; seed < 10000; ++seed) ++count[random_select(g, 1, seed).picks[0]];
  const double sigma = std::sqrt(10000 * 0.01 * 0.99);
  for (int c : count) CHECK(std::abs(c - 100.0) < 4 * sigma);
}

TEST_CASE("dynamic greedy reductions") {
  std::mt19937_64 rng(4);
  const auto g = testing::random_graph(rng, 40, 0.06);
  const auto bank = build_sample_bank(g, 0.5, 20, 9);
  SUBCASE("r = 1 reproduces greedy") {
    const auto dyn = dynamic_greedy_simulate(bank, 6, Metric::retweeters, ReciprocationModel::certain(), 1, 6);
    const auto gr = greedy_select(bank, 6, Metric::retweeters, ReciprocationModel::certain());
    CHECK(dyn.picks == gr.picks);
    CHECK(dyn.attempts.size() == 6);
  }
  SUBCASE("r = 0 never keeps anyone") {
    const auto none = ReciprocationModel::constant(0);
    CHECK(dynamic_greedy_simulate(bank, 5, Metric::readers, none, 1, 25).attempts.size() == 25);
    const auto exhaust = dynamic_greedy_simulate(bank, 5, Metric::readers, none, 1, 1000);
    CHECK(exhaust.picks.empty());
    CHECK(exhaust.attempts.size() == 40);
  }
  SUBCASE("picks reciprocate and each node is proposed once") {
    const auto recip = ReciprocationModel::table(random_r(rng, 40));
    const auto r = recip.probabilities(g);
    const auto dyn = dynamic_greedy_simulate(bank, 8, Metric::retweeters, recip, 77, 30);
    std::set<NodeId> proposed;
    for (const auto& a : dyn.attempts) {
      CHECK(proposed.insert(a.node).second);
      CHECK(a.reciprocated == reciprocates(r[a.node], 77, a.node));
    }
    for (NodeId v : dyn.picks) CHECK(reciprocates(r[v], 77, v));
  }
  CHECK_THROWS_AS(dynamic_greedy_simulate(bank, 5, Metric::readers, ReciprocationModel::certain(), 1, 4), Error);
}

TEST_CASE("brute force optimum basics") {
  const auto star = testing::star(5);
  const auto opt = brute_force_optimal(star, 1, 1.0, Metric::retweeters, ReciprocationModel::certain());
  CHECK(opt.nodes == NodeSet{0});
  CHECK(opt.value == doctest::Approx(6));

  std::mt19937_64 rng(5);
  const auto g = testing::random_graph_with_arcs(rng, 6, 9);
  const auto all = brute_force_optimal(g, 6, 0.3, Metric::readers, ReciprocationModel::certain());
  CHECK(all.value == doctest::Approx(exact_influence(g, NodeSet{0, 1, 2, 3, 4, 5}, 0.3, Metric::readers)));
  CHECK_THROWS_AS(brute_force_optimal(SocialGraph::from_arcs(40, {}), 10, 0.5, Metric::retweeters,
                                      ReciprocationModel::certain()),
                  TooLarge);
}

TEST_CASE("exact greedy against the optimum on 10-node graphs") {
  std::mt19937_64 rng(6);
  const double bound = 1 - std::exp(-1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::random_graph_with_arcs(rng, 10, 6 + rng() % 10);
    const Metric m = trial % 2 ? Metric::readers : Metric::retweeters;
    const ExactSetFunction f(g, m, 3);
    const double p = static_cast<double>(1 + rng() % 9) / 10;
    const auto r = random_r(rng, 10);
    for (bool with_r : {false, true}) {
      const std::span<const double> rr = with_r ? std::span<const double>(r) : std::span<const double>();
      const auto greedy = greedy_select_exact(f, p, 3, rr);
      const auto opt = brute_force_optimal(f, 3, p, rr);
      const double value = greedy.objective_curve.back().mean;
      CHECK(opt.value >= value - 1e-9);
      CHECK(value >= bound * opt.value - 1e-9);
      for (std::size_t i = 1; i < greedy.step_gains.size(); ++i) {
        CHECK(greedy.step_gains[i] <= greedy.step_gains[i - 1] + 1e-9);
      }
    }
  }
}

TEST_CASE("exact dynamic greedy equals greedy on the reciprocating nodes") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = testing::random_graph_with_arcs(rng, 9, 4 + rng() % 10);
    const ExactSetFunction f(g, trial % 2 ? Metric::readers : Metric::retweeters, 3);
    std::vector<char> yes(9);
    NodeSet responders;
    for (NodeId v = 0; v < 9; ++v) {
      yes[v] = rng() % 2;
      if (yes[v]) responders.push_back(v);
    }
    const auto dyn = dynamic_greedy_exact(f, 0.5, 3, yes, 9);
    const auto restricted = greedy_select_exact(f, 0.5, 3, {}, false, responders);
    CHECK(dyn.picks == restricted.picks);
    for (NodeId v : dyn.picks) CHECK(yes[v]);
  }
}
