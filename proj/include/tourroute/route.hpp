#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tourroute/error.hpp"
#include "tourroute/graph.hpp"

namespace tourroute {

enum class EnumerationMode { EnumerateAll, BestOnly };

constexpr std::string_view to_string(EnumerationMode mode) noexcept {
  return mode == EnumerationMode::EnumerateAll ? "all" : "best";
}

// `k` counts every node of the route, both endpoints included.
struct QuerySpec {
  NodeId start{};
  NodeId end{};
  std::size_t k = 2;
  CostMetric metric = CostMetric::Minutes;
  EnumerationMode mode = EnumerationMode::EnumerateAll;
  bool prune = true;
  bool allow_large = false;

  friend bool operator==(const QuerySpec&, const QuerySpec&) = default;
};

struct Route {
  std::vector<NodeId> nodes;
  Cost cost_meters = 0;
  Cost cost_minutes = 0;

  [[nodiscard]] Cost cost(CostMetric metric) const noexcept {
    return metric == CostMetric::Meters ? cost_meters : cost_minutes;
  }

  friend bool operator==(const Route&, const Route&) = default;
};

struct EnumerationResult {
  CostMetric metric = CostMetric::Minutes;
  std::vector<Route> routes;
  std::size_t explored = 0;  // stack pushes

  friend bool operator==(const EnumerationResult&, const EnumerationResult&) = default;
};

// Cost under `metric` first, then node sequence.
struct RouteOrder {
  CostMetric metric;

  bool operator()(const Route& a, const Route& b) const {
    auto ca = a.cost(metric);
    auto cb = b.cost(metric);
    if (ca != cb) return ca < cb;
    return a.nodes < b.nodes;
  }
};

inline void sort_routes(std::vector<Route>& routes, CostMetric metric) {
  std::sort(routes.begin(), routes.end(), RouteOrder{metric});
}

inline Cost route_cost(const AttractionGraph& graph, std::span<const NodeId> nodes, CostMetric metric) {
  if (nodes.empty()) throw Error(ErrorKind::BrokenRoute, "route is empty");
  if (!graph.contains(nodes.front())) {
    throw Error(ErrorKind::InvalidNode, "node " + std::to_string(index(nodes.front())) + " not in graph");
  }
  Cost total = 0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const auto* e = graph.find_edge(nodes[i - 1], nodes[i]);
    if (!e) {
      throw Error(ErrorKind::BrokenRoute, "nodes " + std::to_string(index(nodes[i - 1])) + " and " +
                                              std::to_string(index(nodes[i])) + " are not adjacent");
    }
    total += e->weight(metric);
  }
  return total;
}

inline Route make_route(const AttractionGraph& graph, std::vector<NodeId> nodes) {
  Route r;
  r.cost_meters = route_cost(graph, nodes, CostMetric::Meters);
  r.cost_minutes = route_cost(graph, nodes, CostMetric::Minutes);
  r.nodes = std::move(nodes);
  return r;
}

// Throws InvalidNode / InvalidCardinality / InvalidRequest for a malformed query.
inline void check_query(const AttractionGraph& graph, const QuerySpec& q) {
  for (auto id : {q.start, q.end}) {
    if (!graph.contains(id)) {
      throw Error(ErrorKind::InvalidNode, "node " + std::to_string(index(id)) + " outside 1.." +
                                              std::to_string(graph.node_count()));
    }
  }
  if (q.start == q.end) throw Error(ErrorKind::InvalidRequest, "start and end must differ");
  if (q.k < 2 || q.k > graph.node_count()) {
    throw Error(ErrorKind::InvalidCardinality, "k=" + std::to_string(q.k) + " outside 2.." +
                                                   std::to_string(graph.node_count()));
  }
}

}  // namespace tourroute
