#include "osnim/graph_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace osnim {

static_assert(std::endian::native == std::endian::little,
              "binary cache I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'C', 'B', 'G', '1'};

bool parse_u64(std::string_view& rest, std::uint64_t& value) {
  while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
  if (rest.empty()) return false;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  if (ec != std::errc() || ptr == rest.data()) return false;
  rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
  return rest.empty() || rest.front() == ' ' || rest.front() == '\t';
}

template <class T>
void write_raw(std::ostream& out, const T* data, std::size_t count) {
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(T)));
}

template <class T>
void read_raw(std::istream& in, T* data, std::size_t count) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(T)));
  if (!in) throw Error("binary cache truncated");
}

}  // namespace

LoadedGraph load_edgelist(std::istream& in, Orientation orientation) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    if (auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.remove_suffix(1);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) rest.remove_prefix(1);
    if (rest.empty()) continue;
    std::uint64_t a = 0, b = 0;
    if (!parse_u64(rest, a) || !parse_u64(rest, b)) {
      throw ParseError("expected two non-negative integers", line_no);
    }
    while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
    if (!rest.empty()) throw ParseError("trailing characters", line_no);
    if (orientation == Orientation::follows) std::swap(a, b);
    raw.emplace_back(a, b);
  }
  if (raw.empty()) throw ParseError("edgelist is empty", 0);

  LoadedGraph out;
  auto& ids = out.external_ids;
  ids.reserve(raw.size() * 2);
  for (const auto& [a, b] : raw) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() > std::numeric_limits<NodeId>::max()) throw Error("too many nodes");
  auto compact = [&](std::uint64_t x) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
  };
  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve(raw.size());
  for (const auto& [a, b] : raw) arcs.emplace_back(compact(a), compact(b));
  out.graph = SocialGraph::from_arcs(ids.size(), std::move(arcs));
  return out;
}

LoadedGraph load_edgelist(const std::filesystem::path& path, Orientation orientation) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return load_edgelist(in, orientation);
}

void write_edgelist(std::ostream& out, const SocialGraph& graph) {
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    for (NodeId v : graph.followers(u)) out << u << ' ' << v << '\n';
  }
}

void write_id_map(std::ostream& out, const std::vector<std::uint64_t>& external_ids) {
  out << "external_id,internal_id\n";
  for (std::size_t i = 0; i < external_ids.size(); ++i) out << external_ids[i] << ',' << i << '\n';
}

std::vector<std::uint64_t> read_id_map(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "external_id,internal_id") {
    throw ParseError("missing id map header", 1);
  }
  std::vector<std::uint64_t> ids;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    std::uint64_t ext = 0, internal = 0;
    if (comma == std::string::npos ||
        std::from_chars(line.data(), line.data() + comma, ext).ec != std::errc() ||
        std::from_chars(line.data() + comma + 1, line.data() + line.size(), internal).ec !=
            std::errc()) {
      throw ParseError("malformed id map row", line_no);
    }
    if (internal >= ids.size()) ids.resize(internal + 1);
    ids[internal] = ext;
  }
  return ids;
}

void write_binary_cache(std::ostream& out, const SocialGraph& graph) {
  out.write(kMagic, 4);
  const std::uint64_t counts[2] = {graph.node_count(), graph.arc_count()};
  write_raw(out, counts, 2);
  write_raw(out, graph.offsets().data(), graph.offsets().size());
  write_raw(out, graph.targets().data(), graph.targets().size());
}

SocialGraph read_binary_cache(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw Error("not a CBG1 binary cache");
  std::uint64_t counts[2];
  read_raw(in, counts, 2);
  std::vector<std::uint64_t> offsets(counts[0] + 1);
  read_raw(in, offsets.data(), offsets.size());
  std::vector<NodeId> targets(counts[1]);
  read_raw(in, targets.data(), targets.size());
  if (offsets.front() != 0 || offsets.back() != counts[1]) throw Error("binary cache offsets corrupt");
  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve(targets.size());
  for (std::size_t u = 0; u < counts[0]; ++u) {
    if (offsets[u + 1] < offsets[u]) throw Error("binary cache offsets corrupt");
    for (auto i = offsets[u]; i < offsets[u + 1]; ++i) {
      arcs.emplace_back(static_cast<NodeId>(u), targets[i]);
    }
  }
  return SocialGraph::from_arcs(counts[0], std::move(arcs));
}

LoadedGraph load_graph_file(const std::filesystem::path& path, Orientation orientation) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  char magic[4] = {};
  in.read(magic, 4);
  in.clear();
  in.seekg(0);
  if (std::memcmp(magic, kMagic, 4) == 0) {
    LoadedGraph out;
    out.graph = read_binary_cache(in);
    out.external_ids.resize(out.graph.node_count());
    for (std::size_t i = 0; i < out.external_ids.size(); ++i) out.external_ids[i] = i;
    return out;
  }
  return load_edgelist(in, orientation);
}

}  // namespace osnim
