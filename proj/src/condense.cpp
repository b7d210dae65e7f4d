#include "osnim/condense.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>

namespace osnim {

namespace {

constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
constexpr char kDagMagic[4] = {'C', 'D', 'G', '1'};

template <class T>
void put_vector(std::ostream& out, const std::vector<T>& v) {
  const std::uint64_t n = v.size();
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
}

template <class T>
void get_vector(std::istream& in, std::vector<T>& v) {
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in) throw Error("condensed DAG stream truncated");
  v.resize(n);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
  if (!in) throw Error("condensed DAG stream truncated");
}


}  // namespace

CondensedDag condense(const PrunedGraph& pruned) {
  const std::size_t n = pruned.node_count();
  CondensedDag dag;
  dag.component_of_.assign(n, kUnvisited);

  std::vector<std::uint32_t> index(n, kUnvisited);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<NodeId> scc_stack;
  struct Frame {
    NodeId node;
    std::uint32_t next;
  };
  std::vector<Frame> call_stack;
  std::uint32_t counter = 0;
  ComponentId components = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call_stack.push_back({root, 0});
    index[root] = low[root] = counter++;
    scc_stack.push_back(root);
    while (!call_stack.empty()) {
      Frame& f = call_stack.back();
      const auto out = pruned.kept_followers(f.node);
      if (f.next < out.size()) {
        const NodeId w = out[f.next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          scc_stack.push_back(w);
          call_stack.push_back({w, 0});
        } else if (dag.component_of_[w] == kUnvisited) {
          // w is still on the SCC stack.
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const NodeId v = f.node;
      call_stack.pop_back();
      if (!call_stack.empty()) {
        NodeId parent = call_stack.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
      if (low[v] == index[v]) {
        NodeId w;
        do {
          w = scc_stack.back();
          scc_stack.pop_back();
          dag.component_of_[w] = components;
          dag.members_.push_back(w);
        } while (w != v);
        dag.member_offsets_.push_back(static_cast<std::uint32_t>(dag.members_.size()));
        ++components;
      }
    }
  }

  std::vector<ComponentId> seen(components, kUnvisited);
  for (ComponentId c = 0; c < components; ++c) {
    const auto begin = dag.dag_targets_.size();
    for (NodeId u : dag.members(c)) {
      for (NodeId w : pruned.kept_followers(u)) {
        const ComponentId d = dag.component_of_[w];
        if (d != c && seen[d] != c) {
          seen[d] = c;
          dag.dag_targets_.push_back(d);
        }
      }
    }
    std::sort(dag.dag_targets_.begin() + static_cast<std::ptrdiff_t>(begin), dag.dag_targets_.end());
    dag.dag_offsets_.push_back(static_cast<std::uint32_t>(dag.dag_targets_.size()));
  }
  return dag;
}

void CondensedDag::serialize(std::ostream& out) const {
  out.write(kDagMagic, 4);
  put_vector(out, component_of_);
  put_vector(out, member_offsets_);
  put_vector(out, members_);
  put_vector(out, dag_offsets_);
  put_vector(out, dag_targets_);
}

CondensedDag CondensedDag::deserialize(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || !std::equal(magic, magic + 4, kDagMagic)) throw Error("not a condensed DAG stream");
  CondensedDag dag;
  get_vector(in, dag.component_of_);
  get_vector(in, dag.member_offsets_);
  get_vector(in, dag.members_);
  get_vector(in, dag.dag_offsets_);
  get_vector(in, dag.dag_targets_);
  if (dag.member_offsets_.empty() || dag.dag_offsets_.size() != dag.member_offsets_.size() ||
      dag.members_.size() != dag.component_of_.size()) {
    throw Error("condensed DAG stream inconsistent");
  }
  return dag;
}

namespace {

// Marks every component reachable from sources; returns them in visit order.
std::vector<ComponentId> reached_components(const CondensedDag& dag, std::span<const NodeId> sources) {
  std::vector<char> mark(dag.component_count(), 0);
  std::vector<ComponentId> order;
  for (NodeId s : sources) {
    if (s >= dag.node_count()) throw Error("source node out of range");
    const ComponentId c = dag.component_of(s);
    if (!mark[c]) {
      mark[c] = 1;
      order.push_back(c);
    }
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (ComponentId d : dag.successors(order[head])) {
      if (!mark[d]) {
        mark[d] = 1;
        order.push_back(d);
      }
    }
  }
  return order;
}

}  // namespace

NodeSet reach_set(const CondensedDag& dag, std::span<const NodeId> sources) {
  NodeSet out;
  for (ComponentId c : reached_components(dag, sources)) {
    const auto m = dag.members(c);
    out.insert(out.end(), m.begin(), m.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t reach_count(const CondensedDag& dag, std::span<const NodeId> sources) {
  std::size_t total = 0;
  for (ComponentId c : reached_components(dag, sources)) total += dag.component_size(c);
  return total;
}

NodeSet reader_set(const SocialGraph& original, std::span<const NodeId> active) {
  std::vector<char> mark(original.node_count(), 0);
  NodeSet out;
  auto add = [&](NodeId v) {
    if (!mark[v]) {
      mark[v] = 1;
      out.push_back(v);
    }
  };
  for (NodeId u : active) {
    if (u >= original.node_count()) throw Error("active node out of range");
    add(u);
    for (NodeId v : original.followers(u)) add(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace osnim
