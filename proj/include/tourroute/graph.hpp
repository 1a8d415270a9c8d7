#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tourroute/error.hpp"

namespace tourroute {

// 1-based attraction index.
enum class NodeId : std::uint32_t {};

constexpr std::uint32_t index(NodeId id) noexcept { return static_cast<std::uint32_t>(id); }
constexpr NodeId node(std::uint32_t i) noexcept { return NodeId{i}; }

inline std::ostream& operator<<(std::ostream& os, NodeId id) { return os << index(id); }

inline std::vector<NodeId> nodes(std::initializer_list<std::uint32_t> ids) {
  std::vector<NodeId> out;
  out.reserve(ids.size());
  for (auto i : ids) out.push_back(NodeId{i});
  return out;
}

using Weight = std::uint32_t;
using Cost = std::uint64_t;

enum class CostMetric { Meters, Minutes };

constexpr std::string_view to_string(CostMetric metric) noexcept {
  return metric == CostMetric::Meters ? "meters" : "minutes";
}

inline std::optional<CostMetric> parse_metric(std::string_view text) {
  if (text == "meters" || text == "m" || text == "metres") return CostMetric::Meters;
  if (text == "minutes" || text == "min") return CostMetric::Minutes;
  return std::nullopt;
}

struct Edge {
  NodeId u;
  NodeId v;
  Weight meters;
  Weight minutes;

  [[nodiscard]] constexpr Weight weight(CostMetric metric) const noexcept {
    return metric == CostMetric::Meters ? meters : minutes;
  }

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node;
  Weight meters;
  Weight minutes;

  [[nodiscard]] constexpr Weight weight(CostMetric metric) const noexcept {
    return metric == CostMetric::Meters ? meters : minutes;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\v\f";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
  while (i < s.size()) {
    while (i < s.size() && is_ws(s[i])) ++i;
    auto start = i;
    while (i < s.size() && !is_ws(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view token) {
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::pair<NodeId, NodeId> ordered(NodeId a, NodeId b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

}  // namespace detail

class AttractionRegistry {
 public:
  AttractionRegistry() = default;

  void add(NodeId id, std::string label, std::size_t line = 0) {
    if (index(id) == 0) throw Error(ErrorKind::Format, "registry id must be positive", line);
    if (detail::trim(label).empty()) {
      throw Error(ErrorKind::Format, "empty label for id " + std::to_string(index(id)), line);
    }
    if (!entries_.emplace(id, std::move(label)).second) {
      throw Error(ErrorKind::DuplicateEntry,
                  "duplicate registry id " + std::to_string(index(id)), line);
    }
  }

  [[nodiscard]] const std::string* find(NodeId id) const {
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
  }

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] const std::map<NodeId, std::string>& entries() const noexcept { return entries_; }

  friend bool operator==(const AttractionRegistry&, const AttractionRegistry&) = default;

 private:
  std::map<NodeId, std::string> entries_;
};

inline std::string default_label(NodeId id) { return "O" + std::to_string(index(id)); }

// Immutable undirected graph with two weights per edge. Node ids are 1..n and
// neighbor lists are sorted by ascending id.
class AttractionGraph {
 public:
  AttractionGraph() = default;

  static AttractionGraph from_edges(std::size_t n, std::vector<Edge> edges) {
    AttractionGraph g;
    g.adjacency_.resize(n + 1);
    for (auto& e : edges) {
      if (e.u == e.v) {
        throw Error(ErrorKind::SelfLoop, "self-loop at node " + std::to_string(index(e.u)));
      }
      for (auto id : {e.u, e.v}) {
        if (index(id) < 1 || index(id) > n) {
          throw Error(ErrorKind::InvalidNode,
                      "node " + std::to_string(index(id)) + " outside 1.." + std::to_string(n));
        }
      }
      if (e.meters < 1 || e.minutes < 1) {
        throw Error(ErrorKind::Format, "edge weights must be positive");
      }
      auto [a, b] = detail::ordered(e.u, e.v);
      e.u = a;
      e.v = b;
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
      return std::pair{x.u, x.v} < std::pair{y.u, y.v};
    });
    for (std::size_t i = 1; i < edges.size(); ++i) {
      if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
        throw Error(ErrorKind::DuplicateEdge, "duplicate edge " + std::to_string(index(edges[i].u)) +
                                                  "-" + std::to_string(index(edges[i].v)));
      }
    }
    for (const auto& e : edges) {
      g.adjacency_[index(e.u)].push_back({e.v, e.meters, e.minutes});
      g.adjacency_[index(e.v)].push_back({e.u, e.meters, e.minutes});
    }
    for (auto& list : g.adjacency_) {
      std::sort(list.begin(), list.end(),
                [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
    }
    g.edges_ = std::move(edges);
    return g;
  }

  // Returns a copy carrying `registry`. Nodes without an entry get "O<id>".
  [[nodiscard]] AttractionGraph with_registry(const AttractionRegistry& registry) const {
    AttractionGraph g = *this;
    AttractionRegistry filled;
    for (const auto& [id, label] : registry.entries()) {
      if (!contains(id)) {
        throw Error(ErrorKind::InvalidNode, "registry id " + std::to_string(index(id)) +
                                                " is not a node of the graph");
      }
      filled.add(id, label);
    }
    for (std::uint32_t i = 1; i <= node_count(); ++i) {
      if (!filled.find(NodeId{i})) filled.add(NodeId{i}, default_label(NodeId{i}));
    }
    g.registry_ = std::move(filled);
    return g;
  }

  [[nodiscard]] std::size_t node_count() const noexcept {
    return adjacency_.empty() ? 0 : adjacency_.size() - 1;
  }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }

  [[nodiscard]] bool contains(NodeId id) const noexcept {
    return index(id) >= 1 && index(id) <= node_count();
  }

  [[nodiscard]] std::span<const Neighbor> neighbors(NodeId id) const {
    if (!contains(id)) {
      throw Error(ErrorKind::InvalidNode, "node " + std::to_string(index(id)) + " not in graph");
    }
    return adjacency_[index(id)];
  }

  [[nodiscard]] std::size_t degree(NodeId id) const { return neighbors(id).size(); }

  [[nodiscard]] const Neighbor* find_edge(NodeId u, NodeId v) const noexcept {
    if (!contains(u) || !contains(v)) return nullptr;
    const auto& list = adjacency_[index(u)];
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const Neighbor& x, NodeId id) { return x.node < id; });
    return it != list.end() && it->node == v ? &*it : nullptr;
  }

  [[nodiscard]] bool has_edge(NodeId u, NodeId v) const noexcept { return find_edge(u, v) != nullptr; }

  [[nodiscard]] const std::optional<AttractionRegistry>& registry() const noexcept { return registry_; }

  [[nodiscard]] std::string label(NodeId id) const {
    if (registry_) {
      if (const auto* l = registry_->find(id)) return *l;
    }
    return default_label(id);
  }

  // Topology and weights only; labels are not part of graph identity.
  friend bool operator==(const AttractionGraph& a, const AttractionGraph& b) {
    return a.node_count() == b.node_count() && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<Edge> edges_;
  std::optional<AttractionRegistry> registry_;
};

namespace detail {

struct EdgeRecord {
  std::uint32_t u, v;
  std::vector<Weight> weights;
  std::size_t line;
};

struct EdgeTableText {
  std::optional<std::pair<std::size_t, std::size_t>> header;
  std::size_t header_line = 0;
  std::vector<EdgeRecord> records;
};

// Reads `u v w1 .. wK` records with an optional leading `n m` header.
inline EdgeTableText read_records(std::istream& in, std::size_t weight_count) {
  EdgeTableText table;
  std::string raw;
  std::size_t line_no = 0;
  const std::size_t fields = 2 + weight_count;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto tokens = split_ws(line);
    if (tokens.size() == 2 && !table.header && table.records.empty()) {
      auto n = parse_int<std::size_t>(tokens[0]);
      auto m = parse_int<std::size_t>(tokens[1]);
      if (!n || !m) throw Error(ErrorKind::Parse, "header must be two non-negative integers", line_no);
      table.header = std::pair{*n, *m};
      table.header_line = line_no;
      continue;
    }
    if (tokens.size() != fields) {
      throw Error(ErrorKind::Parse, "expected " + std::to_string(fields) + " fields, found " +
                                        std::to_string(tokens.size()),
                  line_no);
    }
    EdgeRecord rec{0, 0, {}, line_no};
    auto u = parse_int<std::int64_t>(tokens[0]);
    auto v = parse_int<std::int64_t>(tokens[1]);
    if (!u || !v) throw Error(ErrorKind::Parse, "node id is not an integer", line_no);
    if (*u < 1 || *v < 1 || *u > UINT32_MAX || *v > UINT32_MAX) {
      throw Error(ErrorKind::Parse, "node id must be a positive integer", line_no);
    }
    rec.u = static_cast<std::uint32_t>(*u);
    rec.v = static_cast<std::uint32_t>(*v);
    for (std::size_t i = 2; i < fields; ++i) {
      auto w = parse_int<std::int64_t>(tokens[i]);
      if (!w) throw Error(ErrorKind::Parse, "weight is not an integer", line_no);
      if (*w < 1 || *w > UINT32_MAX) throw Error(ErrorKind::Parse, "weight must be positive", line_no);
      rec.weights.push_back(static_cast<Weight>(*w));
    }
    if (rec.u == rec.v) {
      throw Error(ErrorKind::SelfLoop, "self-loop at node " + std::to_string(rec.u), line_no);
    }
    if (table.header && (rec.u > table.header->first || rec.v > table.header->first)) {
      throw Error(ErrorKind::Parse, "node id exceeds declared n=" + std::to_string(table.header->first),
                  line_no);
    }
    table.records.push_back(std::move(rec));
  }
  if (table.header && table.header->second != table.records.size()) {
    throw Error(ErrorKind::Parse, "header declares m=" + std::to_string(table.header->second) +
                                      " but " + std::to_string(table.records.size()) +
                                      " edges follow",
                table.header_line);
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> seen;
  for (const auto& r : table.records) {
    auto key = std::pair{std::min(r.u, r.v), std::max(r.u, r.v)};
    if (auto [it, fresh] = seen.emplace(key, r.line); !fresh) {
      throw Error(ErrorKind::DuplicateEdge,
                  "duplicate edge " + std::to_string(key.first) + "-" + std::to_string(key.second) +
                      " (first seen on line " + std::to_string(it->second) + ")",
                  r.line);
    }
  }
  return table;
}

inline std::size_t declared_or_max_node(const EdgeTableText& table) {
  if (table.header) return table.header->first;
  std::size_t n = 0;
  for (const auto& r : table.records) n = std::max<std::size_t>({n, r.u, r.v});
  return n;
}

}  // namespace detail

inline AttractionGraph parse_edge_table(std::istream& in) {
  auto table = detail::read_records(in, 2);
  std::vector<Edge> edges;
  edges.reserve(table.records.size());
  for (const auto& r : table.records) {
    edges.push_back({NodeId{r.u}, NodeId{r.v}, r.weights[0], r.weights[1]});
  }
  return AttractionGraph::from_edges(detail::declared_or_max_node(table), std::move(edges));
}

inline AttractionGraph parse_edge_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_table(in);
}

inline AttractionGraph load_edge_table(const std::filesystem::path& path) {
  return parse_edge_table(std::string_view{detail::read_file(path)});
}

// Merges a metres-only table and a minutes-only table (`u v w` records) that
// must describe the same topology.
inline AttractionGraph merge_weight_tables(std::string_view meters_text, std::string_view minutes_text) {
  std::istringstream meters_in{std::string(meters_text)};
  std::istringstream minutes_in{std::string(minutes_text)};
  auto meters = detail::read_records(meters_in, 1);
  auto minutes = detail::read_records(minutes_in, 1);

  using Key = std::pair<std::uint32_t, std::uint32_t>;
  auto key_of = [](const detail::EdgeRecord& r) { return Key{std::min(r.u, r.v), std::max(r.u, r.v)}; };
  std::map<Key, Weight> minute_weights;
  for (const auto& r : minutes.records) minute_weights.emplace(key_of(r), r.weights[0]);

  auto n_meters = detail::declared_or_max_node(meters);
  auto n_minutes = detail::declared_or_max_node(minutes);
  if (n_meters != n_minutes) {
    throw Error(ErrorKind::TopologyMismatch, "node counts differ: " + std::to_string(n_meters) +
                                                 " vs " + std::to_string(n_minutes));
  }
  if (meters.records.size() != minutes.records.size()) {
    throw Error(ErrorKind::TopologyMismatch,
                "edge counts differ: " + std::to_string(meters.records.size()) + " vs " +
                    std::to_string(minutes.records.size()));
  }
  std::vector<Edge> edges;
  for (const auto& r : meters.records) {
    auto it = minute_weights.find(key_of(r));
    if (it == minute_weights.end()) {
      throw Error(ErrorKind::TopologyMismatch, "edge " + std::to_string(r.u) + "-" +
                                                   std::to_string(r.v) + " missing from minutes table",
                  r.line);
    }
    edges.push_back({NodeId{r.u}, NodeId{r.v}, r.weights[0], it->second});
  }
  return AttractionGraph::from_edges(n_meters, std::move(edges));
}

inline AttractionRegistry parse_registry(std::istream& in) {
  AttractionRegistry registry;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (detail::trim(line).empty() || detail::trim(line).front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw Error(ErrorKind::Format, "expected id<TAB>label", line_no);
    auto id = detail::parse_int<std::uint32_t>(detail::trim(line.substr(0, tab)));
    if (!id || *id == 0) throw Error(ErrorKind::Format, "registry id must be a positive integer", line_no);
    registry.add(NodeId{*id}, std::string(detail::trim(line.substr(tab + 1))), line_no);
  }
  return registry;
}

inline AttractionRegistry parse_registry(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_registry(in);
}

inline AttractionRegistry load_registry(const std::filesystem::path& path) {
  return parse_registry(std::string_view{detail::read_file(path)});
}

// Canonical edge-table text: `n m` header, then edges ordered by (u, v) with u < v.
inline std::string to_edge_table(const AttractionGraph& graph) {
  std::ostringstream out;
  out << graph.node_count() << ' ' << graph.edge_count() << '\n';
  for (const auto& e : graph.edges()) {
    out << e.u << ' ' << e.v << ' ' << e.meters << ' ' << e.minutes << '\n';
  }
  return out.str();
}

// 64-bit FNV-1a of the canonical edge table, as 16 hex digits.
inline std::string fingerprint(const AttractionGraph& graph) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_edge_table(graph)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

inline Weight edge_cost(const AttractionGraph& graph, NodeId u, NodeId v, CostMetric metric) {
  const auto* e = graph.find_edge(u, v);
  if (!e) {
    throw Error(ErrorKind::MissingEdge,
                "no edge between " + std::to_string(index(u)) + " and " + std::to_string(index(v)));
  }
  return e->weight(metric);
}

struct ValidationReport {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t component_count = 0;
  bool connected = false;
  std::vector<NodeId> isolated;
  std::map<std::size_t, std::size_t> degree_histogram;  // degree -> node count
  std::vector<std::string> warnings;

  [[nodiscard]] bool ok() const noexcept { return connected; }
};

inline ValidationReport validate(const AttractionGraph& graph) {
  ValidationReport report;
  const auto n = graph.node_count();
  report.node_count = n;
  report.edge_count = graph.edge_count();
  if (n == 0) {
    report.connected = true;
    report.warnings.emplace_back("graph is empty (zero components)");
    return report;
  }
  std::vector<bool> seen(n + 1, false);
  std::vector<NodeId> stack;
  for (std::uint32_t i = 1; i <= n; ++i) {
    auto id = NodeId{i};
    auto deg = graph.degree(id);
    ++report.degree_histogram[deg];
    if (deg == 0) report.isolated.push_back(id);
    if (seen[i]) continue;
    ++report.component_count;
    seen[i] = true;
    stack.push_back(id);
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      for (const auto& nb : graph.neighbors(cur)) {
        if (!seen[index(nb.node)]) {
          seen[index(nb.node)] = true;
          stack.push_back(nb.node);
        }
      }
    }
  }
  report.connected = report.component_count == 1;
  if (!report.connected) {
    report.warnings.push_back("graph has " + std::to_string(report.component_count) + " components");
  }
  for (auto id : report.isolated) {
    report.warnings.push_back("node " + std::to_string(index(id)) + " is isolated");
  }
  return report;
}

}  // namespace tourroute
