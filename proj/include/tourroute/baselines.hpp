#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "tourroute/error.hpp"
#include "tourroute/graph.hpp"
#include "tourroute/route.hpp"

namespace tourroute {

// All-pairs distances. Unreachable pairs hold std::nullopt.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, CostMetric metric)
      : n_(n), metric_(metric), dist_(n * n, std::nullopt) {}

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] CostMetric metric() const noexcept { return metric_; }

  [[nodiscard]] std::optional<Cost> at(NodeId i, NodeId j) const { return dist_[offset(i, j)]; }
  std::optional<Cost>& at(NodeId i, NodeId j) { return dist_[offset(i, j)]; }

 private:
  [[nodiscard]] std::size_t offset(NodeId i, NodeId j) const {
    if (index(i) < 1 || index(i) > n_ || index(j) < 1 || index(j) > n_) {
      throw Error(ErrorKind::InvalidNode, "distance index out of range");
    }
    return (index(i) - 1) * n_ + (index(j) - 1);
  }

  std::size_t n_ = 0;
  CostMetric metric_ = CostMetric::Minutes;
  std::vector<std::optional<Cost>> dist_;
};

// Floyd-Warshall.
inline DistanceMatrix all_pairs_shortest(const AttractionGraph& graph, CostMetric metric) {
  const auto n = graph.node_count();
  DistanceMatrix d(n, metric);
  for (std::uint32_t i = 1; i <= n; ++i) d.at(NodeId{i}, NodeId{i}) = 0;
  for (const auto& e : graph.edges()) {
    auto w = static_cast<Cost>(e.weight(metric));
    auto& uv = d.at(e.u, e.v);
    if (!uv || w < *uv) {
      uv = w;
      d.at(e.v, e.u) = w;
    }
  }
  for (std::uint32_t l = 1; l <= n; ++l) {
    for (std::uint32_t i = 1; i <= n; ++i) {
      auto il = d.at(NodeId{i}, NodeId{l});
      if (!il) continue;
      for (std::uint32_t j = 1; j <= n; ++j) {
        auto lj = d.at(NodeId{l}, NodeId{j});
        if (!lj) continue;
        auto& ij = d.at(NodeId{i}, NodeId{j});
        if (!ij || *il + *lj < *ij) ij = *il + *lj;
      }
    }
  }
  return d;
}

// Dijkstra without a cardinality constraint. std::nullopt when unreachable.
inline std::optional<Route> shortest_path(const AttractionGraph& graph, NodeId start, NodeId end,
                                          CostMetric metric) {
  for (auto id : {start, end}) {
    if (!graph.contains(id)) {
      throw Error(ErrorKind::InvalidNode, "node " + std::to_string(index(id)) + " not in graph");
    }
  }
  const auto n = graph.node_count();
  std::vector<std::optional<Cost>> dist(n + 1);
  std::vector<NodeId> parent(n + 1, NodeId{0});
  std::vector<bool> done(n + 1, false);
  using Item = std::pair<Cost, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[index(start)] = 0;
  open.emplace(0, index(start));
  while (!open.empty()) {
    auto [d, u] = open.top();
    open.pop();
    if (done[u]) continue;
    done[u] = true;
    if (NodeId{u} == end) break;
    for (const auto& nb : graph.neighbors(NodeId{u})) {
      auto v = index(nb.node);
      Cost cand = d + nb.weight(metric);
      if (!dist[v] || cand < *dist[v]) {
        dist[v] = cand;
        parent[v] = NodeId{u};
        open.emplace(cand, v);
      }
    }
  }
  if (!dist[index(end)]) return std::nullopt;
  std::vector<NodeId> path{end};
  while (path.back() != start) path.push_back(parent[index(path.back())]);
  std::reverse(path.begin(), path.end());
  return make_route(graph, std::move(path));
}

inline constexpr std::size_t kBruteForceNodeLimit = 12;

// Reference enumeration: every ordered choice of k-2 interior nodes, filtered
// for consecutive adjacency. Shares nothing with the backtracking search
// beyond route_cost.
inline EnumerationResult brute_force_k_paths(const AttractionGraph& graph, const QuerySpec& q) {
  const auto n = graph.node_count();
  if (n > kBruteForceNodeLimit) {
    throw Error(ErrorKind::TooLarge, "brute force limited to n <= " +
                                         std::to_string(kBruteForceNodeLimit));
  }
  check_query(graph, q);
  std::vector<NodeId> pool;
  for (std::uint32_t i = 1; i <= n; ++i) {
    if (NodeId{i} != q.start && NodeId{i} != q.end) pool.push_back(NodeId{i});
  }
  const std::size_t interior = q.k - 2;
  EnumerationResult result;
  result.metric = q.metric;
  for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != interior) continue;
    std::vector<NodeId> chosen;
    for (std::size_t b = 0; b < pool.size(); ++b) {
      if (mask & (1u << b)) chosen.push_back(pool[b]);
    }
    do {
      std::vector<NodeId> candidate{q.start};
      candidate.insert(candidate.end(), chosen.begin(), chosen.end());
      candidate.push_back(q.end);
      bool ok = true;
      for (std::size_t i = 1; i < candidate.size() && ok; ++i) {
        ok = graph.has_edge(candidate[i - 1], candidate[i]);
      }
      ++result.explored;
      if (ok) result.routes.push_back(make_route(graph, std::move(candidate)));
    } while (std::next_permutation(chosen.begin(), chosen.end()));
  }
  sort_routes(result.routes, q.metric);
  return result;
}

}  // namespace tourroute
