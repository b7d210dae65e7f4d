#include "osnim/reciprocation.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace osnim {

ReciprocationModel ReciprocationModel::constant(double r) {
  if (!(r >= 0 && r <= 1)) throw Error("reciprocation probability must lie in [0, 1]");
  return ReciprocationModel(Kind::constant, r, {});
}

ReciprocationModel ReciprocationModel::table(std::vector<double> r) {
  for (double x : r) {
    if (!(x >= 0 && x <= 1)) throw Error("reciprocation probability must lie in [0, 1]");
  }
  return ReciprocationModel(Kind::table, 0, std::move(r));
}

ReciprocationModel ReciprocationModel::parse(std::string_view text) {
  if (text == "certain") return certain();
  if (text == "ratio") return ratio_formula();
  if (text.starts_with("const=")) {
    const std::string value(text.substr(6));
    std::size_t used = 0;
    double r = 0;
    try {
      r = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) throw Error("bad reciprocation constant '" + value + "'");
    return constant(r);
  }
  throw Error("unknown reciprocation model '" + std::string(text) + "'");
}

std::string ReciprocationModel::describe() const {
  switch (kind_) {
    case Kind::certain:
      return "certain";
    case Kind::constant: {
      std::ostringstream s;
      s << "const=" << constant_;
      return s.str();
    }
    case Kind::ratio_formula:
      return "ratio";
    case Kind::table:
      return "table";
  }
  return "?";
}

bool ReciprocationModel::is_certain() const {
  switch (kind_) {
    case Kind::certain:
      return true;
    case Kind::constant:
      return constant_ >= 1.0;
    case Kind::table:
      return std::all_of(table_.begin(), table_.end(), [](double r) { return r >= 1.0; });
    case Kind::ratio_formula:
      return false;
  }
  return false;
}

double ReciprocationModel::probability(const SocialGraph& graph, NodeId v) const {
  switch (kind_) {
    case Kind::certain:
      return 1.0;
    case Kind::constant:
      return constant_;
    case Kind::ratio_formula: {
      const double followings = static_cast<double>(graph.in_degree(v));
      const double followers = static_cast<double>(graph.out_degree(v));
      return std::min(followings / (followers + 100.0), 1.0);
    }
    case Kind::table:
      if (v >= table_.size()) throw Error("reciprocation table shorter than graph");
      return table_[v];
  }
  return 1.0;
}

std::vector<double> ReciprocationModel::probabilities(const SocialGraph& graph) const {
  if (kind_ == Kind::table && table_.size() != graph.node_count()) {
    throw Error("reciprocation table size does not match node count");
  }
  std::vector<double> r(graph.node_count());
  for (NodeId v = 0; v < r.size(); ++v) r[v] = probability(graph, v);
  return r;
}

std::vector<char> sample_reciprocation(std::span<const double> r, std::uint64_t seed) {
  std::vector<char> out(r.size());
  for (NodeId v = 0; v < r.size(); ++v) out[v] = reciprocates(r[v], seed, v) ? 1 : 0;
  return out;
}

}  // namespace osnim
