#pragma once

#include <cstdint>
#include <map>
#include <variant>

#include "osnim/graph.hpp"

namespace osnim {

// P(k) proportional to k^-exponent on [min_degree, max_degree].
struct PowerLawDegrees {
  double exponent = 2.3;
  std::size_t min_degree = 1;
  std::size_t max_degree = 1000;
};

// degree -> relative weight.
using DegreeHistogram = std::map<std::size_t, double>;

using DegreeSpec = std::variant<PowerLawDegrees, DegreeHistogram>;

// Normalized target distribution of the degree parameters (degree -> probability).
DegreeHistogram target_distribution(const DegreeSpec& spec);
double analytic_mean_degree(const DegreeSpec& spec);

// Out-degree-driven configuration graph: each node draws its follower count
// i.i.d. from those parameters (capped at node_count - 1) and picks that many
// distinct followers uniformly among the other nodes. Deterministic in seed.
SocialGraph generate_configuration_graph(const DegreeSpec& spec, std::size_t node_count,
                                         std::uint64_t seed);

}  // namespace osnim
