#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tourroute/error.hpp"
#include "tourroute/graph.hpp"
#include "tourroute/route.hpp"

namespace tourroute {

// EnumerateAll refuses larger graphs unless QuerySpec::allow_large is set.
inline constexpr std::size_t kEnumerateAllNodeLimit = 24;

namespace detail {

// Stack-based backtracking over simple start..end paths with exactly k nodes.
//
// Level 1 holds `start`. A neighbor of the node at level j-1 is a candidate
// for level j when it is not already on the stack. A route is complete when
// level k holds `end`. Candidates are tried in ascending id order, so
// complete routes are reported in lexicographic order.
//
// `skip(meters, minutes)` sees the accumulated cost of a would-be push and
// may reject it; `emit(path, meters, minutes)` receives each complete route.
// Returns the number of pushes performed.
template <typename Skip, typename Emit>
std::size_t backtrack(const AttractionGraph& graph, NodeId start, NodeId end, std::size_t k,
                      Skip&& skip, Emit&& emit) {
  struct Level {
    NodeId node;
    std::size_t cursor;
    Cost meters;
    Cost minutes;
  };
  std::vector<Level> stack;
  stack.reserve(k);
  std::vector<char> on_stack(graph.node_count() + 1, 0);
  std::vector<NodeId> path;
  path.reserve(k);

  stack.push_back({start, 0, 0, 0});
  path.push_back(start);
  on_stack[index(start)] = 1;
  std::size_t pushes = 1;

  while (!stack.empty()) {
    auto& top = stack.back();
    const bool full = stack.size() == k;
    bool pushed = false;
    if (!full) {
      auto nbrs = graph.neighbors(top.node);
      const bool last_slot = stack.size() + 1 == k;
      while (top.cursor < nbrs.size()) {
        const auto& nb = nbrs[top.cursor++];
        if (on_stack[index(nb.node)]) continue;
        // `end` may only occupy the final level, and the final level only `end`.
        if ((nb.node == end) != last_slot) continue;
        Cost meters = top.meters + nb.meters;
        Cost minutes = top.minutes + nb.minutes;
        if (skip(meters, minutes)) continue;
        stack.push_back({nb.node, 0, meters, minutes});
        path.push_back(nb.node);
        on_stack[index(nb.node)] = 1;
        ++pushes;
        if (last_slot) emit(std::span<const NodeId>(path), meters, minutes);
        pushed = true;
        break;
      }
    }
    if (!pushed) {
      on_stack[index(stack.back().node)] = 0;
      stack.pop_back();
      path.pop_back();
    }
  }
  return pushes;
}

inline std::pair<std::optional<Route>, std::size_t> search_best(const AttractionGraph& graph,
                                                                const QuerySpec& q) {
  std::optional<Route> best;
  Cost best_cost = 0;
  auto skip = [&](Cost meters, Cost minutes) {
    if (!q.prune || !best) return false;
    return (q.metric == CostMetric::Meters ? meters : minutes) >= best_cost;
  };
  // Routes arrive in lexicographic order, so strict improvement keeps the
  // lexicographically smallest among equal-cost minima.
  auto emit = [&](std::span<const NodeId> path, Cost meters, Cost minutes) {
    Cost c = q.metric == CostMetric::Meters ? meters : minutes;
    if (!best || c < best_cost) {
      best = Route{{path.begin(), path.end()}, meters, minutes};
      best_cost = c;
    }
  };
  auto explored = backtrack(graph, q.start, q.end, q.k, skip, emit);
  return {std::move(best), explored};
}

}  // namespace detail

// Every simple route from q.start to q.end with exactly q.k nodes, sorted by
// cost under q.metric and then by node sequence. No cost pruning.
inline EnumerationResult enumerate_k_paths(const AttractionGraph& graph, const QuerySpec& q) {
  check_query(graph, q);
  if (graph.node_count() > kEnumerateAllNodeLimit && !q.allow_large) {
    throw Error(ErrorKind::TooLarge, "full enumeration refused for n=" +
                                         std::to_string(graph.node_count()) + " > " +
                                         std::to_string(kEnumerateAllNodeLimit));
  }
  EnumerationResult result;
  result.metric = q.metric;
  result.explored = detail::backtrack(
      graph, q.start, q.end, q.k, [](Cost, Cost) { return false; },
      [&](std::span<const NodeId> path, Cost meters, Cost minutes) {
        result.routes.push_back({{path.begin(), path.end()}, meters, minutes});
      });
  sort_routes(result.routes, q.metric);
  return result;
}

// Minimum-cost route under q.metric; ties go to the lexicographically
// smallest node sequence. With q.prune, partial routes whose cost already
// reaches the incumbent are abandoned.
inline std::optional<Route> best_k_path(const AttractionGraph& graph, const QuerySpec& q) {
  check_query(graph, q);
  return detail::search_best(graph, q).first;
}

inline EnumerationResult hamiltonian_paths(const AttractionGraph& graph, NodeId start, NodeId end,
                                           CostMetric metric, bool allow_large = false) {
  QuerySpec q{start, end, graph.node_count(), metric, EnumerationMode::EnumerateAll, true, allow_large};
  return enumerate_k_paths(graph, q);
}

// Dispatches on q.mode. In BestOnly mode `routes` holds at most one route.
inline EnumerationResult run_query(const AttractionGraph& graph, const QuerySpec& q) {
  if (q.mode == EnumerationMode::EnumerateAll) return enumerate_k_paths(graph, q);
  check_query(graph, q);
  auto [best, explored] = detail::search_best(graph, q);
  EnumerationResult result;
  result.metric = q.metric;
  result.explored = explored;
  if (best) result.routes.push_back(std::move(*best));
  return result;
}

}  // namespace tourroute
