#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tourroute/enumerate.hpp"
#include "tourroute/error.hpp"
#include "tourroute/graph.hpp"
#include "tourroute/route.hpp"

namespace tourroute {

// Exact cost-overshoot fraction num/den, 0 <= slack <= 1.
struct Slack {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  // Accepts plain decimals such as "0", "0.25", "1".
  static Slack parse(std::string_view text) {
    text = detail::trim(text);
    auto dot = text.find('.');
    auto whole_part = text.substr(0, dot);
    auto frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if ((whole_part.empty() && frac_part.empty()) || frac_part.size() > 9) {
      throw Error(ErrorKind::InvalidRequest, "bad slack value '" + std::string(text) + "'");
    }
    std::uint64_t whole = 0;
    std::uint64_t frac = 0;
    if (!whole_part.empty()) {
      auto w = detail::parse_int<std::uint64_t>(whole_part);
      if (!w) throw Error(ErrorKind::InvalidRequest, "bad slack value '" + std::string(text) + "'");
      whole = *w;
    }
    if (!frac_part.empty()) {
      auto f = detail::parse_int<std::uint64_t>(frac_part);
      if (!f) throw Error(ErrorKind::InvalidRequest, "bad slack value '" + std::string(text) + "'");
      frac = *f;
    }
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    Slack s{whole * den + frac, den};
    s.check();
    return s;
  }

  // Rounded to micro-units; decimal inputs with up to six places are exact.
  static Slack from_double(double value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw Error(ErrorKind::InvalidRequest, "slack must lie in [0, 1]");
    }
    Slack s{static_cast<std::uint64_t>(value * 1e6 + 0.5), 1'000'000};
    s.check();
    return s;
  }

  [[nodiscard]] double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

  // cost <= (1 + slack) * best
  [[nodiscard]] bool admits(Cost cost, Cost best) const noexcept {
    return cost * den <= best * (den + num);
  }

  void check() const {
    if (den == 0 || num > den) throw Error(ErrorKind::InvalidRequest, "slack must lie in [0, 1]");
  }

  friend bool operator==(const Slack& a, const Slack& b) noexcept { return a.num * b.den == b.num * a.den; }
};

struct GroupRequest {
  std::string group_id;
  std::uint32_t size = 1;
  QuerySpec query;
  Slack slack;
};

struct OccupancySnapshot {
  std::map<NodeId, std::uint64_t> counts;
  std::int64_t as_of = 0;  // seconds since the Unix epoch, UTC

  [[nodiscard]] std::uint64_t count(NodeId id) const {
    auto it = counts.find(id);
    return it == counts.end() ? 0 : it->second;
  }

  friend bool operator==(const OccupancySnapshot&, const OccupancySnapshot&) = default;
};

struct DispatchConfig {
  std::uint64_t occupancy_weight = 1;
  std::uint64_t overlap_weight = 1;  // multiplied by the size of the already-assigned group
  std::int64_t staleness_horizon = 900;
  std::optional<std::int64_t> now;  // staleness is only checked when set
};

struct Assignment {
  std::string group_id;
  std::uint32_t size = 0;
  Route route;
  Cost best_cost = 0;
  std::size_t feasible_count = 0;
  std::uint64_t congestion_score = 0;
  std::uint64_t overlap_score = 0;
  std::uint64_t objective = 0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct AssignmentPlan {
  std::vector<Assignment> assignments;  // in assignment order
  std::uint64_t total_overlap = 0;      // sum of pairwise route_overlap
  std::vector<std::string> warnings;

  [[nodiscard]] const Assignment* find(std::string_view group_id) const {
    for (const auto& a : assignments) {
      if (a.group_id == group_id) return &a;
    }
    return nullptr;
  }

  friend bool operator==(const AssignmentPlan&, const AssignmentPlan&) = default;
};

// Shared nodes. When both routes have the same pair of endpoints those
// endpoints are not counted.
inline std::uint64_t route_overlap(const Route& a, const Route& b) {
  if (a.nodes.empty() || b.nodes.empty()) return 0;
  std::set<NodeId> excluded;
  auto ends_a = detail::ordered(a.nodes.front(), a.nodes.back());
  auto ends_b = detail::ordered(b.nodes.front(), b.nodes.back());
  if (ends_a == ends_b) excluded = {ends_a.first, ends_a.second};
  std::set<NodeId> in_a(a.nodes.begin(), a.nodes.end());
  std::uint64_t shared = 0;
  for (auto id : std::set<NodeId>(b.nodes.begin(), b.nodes.end())) {
    if (in_a.contains(id) && !excluded.contains(id)) ++shared;
  }
  return shared;
}

// Sum over interior nodes of (headcount + group_size). Nodes absent from the
// snapshot count as 0 and are appended to `missing` when given.
inline std::uint64_t congestion_score(const Route& route, const OccupancySnapshot& occupancy,
                                      std::uint32_t group_size, std::set<NodeId>* missing = nullptr) {
  std::uint64_t score = 0;
  for (std::size_t i = 1; i + 1 < route.nodes.size(); ++i) {
    auto id = route.nodes[i];
    auto it = occupancy.counts.find(id);
    if (it == occupancy.counts.end()) {
      if (missing) missing->insert(id);
    } else {
      score += it->second;
    }
    score += group_size;
  }
  return score;
}

// Greedy sequential assignment. Larger groups choose first; each takes the
// feasible route (cost within slack of the optimum) minimizing
// occupancy_weight * congestion + overlap_weight * sum(overlap * assigned size).
inline AssignmentPlan assign_groups(const AttractionGraph& graph, const std::vector<GroupRequest>& requests,
                                    OccupancySnapshot occupancy, const DispatchConfig& config = {}) {
  AssignmentPlan plan;
  std::set<std::string> ids;
  for (const auto& r : requests) {
    if (r.group_id.empty()) throw Error(ErrorKind::InvalidRequest, "group_id must not be empty");
    if (!ids.insert(r.group_id).second) {
      throw Error(ErrorKind::InvalidRequest, "duplicate group_id '" + r.group_id + "'");
    }
    if (r.size < 1) throw Error(ErrorKind::InvalidRequest, "group '" + r.group_id + "' has size 0");
    r.slack.check();
  }
  for (const auto& [id, count] : occupancy.counts) {
    if (!graph.contains(id)) {
      throw Error(ErrorKind::InvalidNode, "occupancy for unknown node " + std::to_string(index(id)));
    }
  }
  if (config.now && *config.now - occupancy.as_of > config.staleness_horizon) {
    plan.warnings.push_back("occupancy snapshot is older than " +
                            std::to_string(config.staleness_horizon) + " s; assuming zero occupancy");
    OccupancySnapshot zero;
    zero.as_of = occupancy.as_of;
    for (std::uint32_t i = 1; i <= graph.node_count(); ++i) zero.counts[NodeId{i}] = 0;
    occupancy = std::move(zero);
  }

  std::vector<const GroupRequest*> order;
  for (const auto& r : requests) order.push_back(&r);
  std::sort(order.begin(), order.end(), [](const GroupRequest* a, const GroupRequest* b) {
    if (a->size != b->size) return a->size > b->size;
    return a->group_id < b->group_id;
  });

  std::set<NodeId> missing;
  for (const auto* req : order) {
    QuerySpec q = req->query;
    q.mode = EnumerationMode::EnumerateAll;
    auto all = enumerate_k_paths(graph, q);
    if (all.routes.empty()) {
      throw Error(ErrorKind::Unassignable, "no route satisfies group '" + req->group_id + "'");
    }
    const Cost best = all.routes.front().cost(q.metric);

    std::optional<Assignment> chosen;
    std::size_t feasible = 0;
    for (const auto& route : all.routes) {
      const Cost cost = route.cost(q.metric);
      if (!req->slack.admits(cost, best)) break;  // routes are sorted by cost
      ++feasible;
      Assignment cand;
      cand.congestion_score = congestion_score(route, occupancy, req->size, &missing);
      for (const auto& prior : plan.assignments) {
        cand.overlap_score += route_overlap(route, prior.route) * prior.size;
      }
      cand.objective = config.occupancy_weight * cand.congestion_score +
                       config.overlap_weight * cand.overlap_score;
      // Equal objective: the earlier route in sorted order (lower cost, then
      // lexicographic) wins.
      if (!chosen || cand.objective < chosen->objective) {
        cand.route = route;
        chosen = std::move(cand);
      }
    }
    chosen->group_id = req->group_id;
    chosen->size = req->size;
    chosen->best_cost = best;
    chosen->feasible_count = feasible;
    plan.assignments.push_back(std::move(*chosen));
  }

  for (std::size_t i = 0; i < plan.assignments.size(); ++i) {
    for (std::size_t j = i + 1; j < plan.assignments.size(); ++j) {
      plan.total_overlap += route_overlap(plan.assignments[i].route, plan.assignments[j].route);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (auto id : missing) list += (list.empty() ? "" : ",") + std::to_string(index(id));
    plan.warnings.push_back("no occupancy data for nodes " + list + "; assuming 0");
  }
  return plan;
}

}  // namespace tourroute
