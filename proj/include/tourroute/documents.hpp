#pragma once

// JSON documents shared by the HTTP service and the CLI. Field names are
// snake_case; see docs/api.md.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tourroute/dispatch.hpp"
#include "tourroute/error.hpp"
#include "tourroute/graph.hpp"
#include "tourroute/route.hpp"

namespace tourroute {

using json = nlohmann::json;

// A request document that is malformed (bad-request) or names an
// out-of-range value (unprocessable); `field` names the offending member.
class FieldError : public Error {
 public:
  FieldError(ErrorKind kind, std::string field, const std::string& message)
      : Error(kind, "field '" + field + "': " + message), field_(std::move(field)) {}

  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

namespace detail {

inline const json& require(const json& doc, const char* field) {
  if (!doc.is_object()) throw FieldError(ErrorKind::Format, field, "request body must be an object");
  auto it = doc.find(field);
  if (it == doc.end()) throw FieldError(ErrorKind::Format, field, "missing");
  return *it;
}

inline std::int64_t require_int(const json& doc, const char* field) {
  const auto& v = require(doc, field);
  if (!v.is_number_integer()) throw FieldError(ErrorKind::Format, field, "must be an integer");
  return v.get<std::int64_t>();
}

inline NodeId require_node(const json& doc, const char* field) {
  auto v = require_int(doc, field);
  if (v < 1 || v > UINT32_MAX) throw FieldError(ErrorKind::InvalidNode, field, "must be a positive node id");
  return NodeId{static_cast<std::uint32_t>(v)};
}

inline CostMetric require_metric(const json& doc, const char* field) {
  const auto& v = require(doc, field);
  if (!v.is_string()) throw FieldError(ErrorKind::Format, field, "must be \"meters\" or \"minutes\"");
  auto metric = parse_metric(v.get<std::string>());
  if (!metric) throw FieldError(ErrorKind::InvalidRequest, field, "must be \"meters\" or \"minutes\"");
  return *metric;
}

inline bool optional_bool(const json& doc, const char* field, bool fallback) {
  auto it = doc.find(field);
  if (it == doc.end()) return fallback;
  if (!it->is_boolean()) throw FieldError(ErrorKind::Format, field, "must be a boolean");
  return it->get<bool>();
}

}  // namespace detail

inline json route_document(const AttractionGraph& graph, const Route& route) {
  json ids = json::array();
  json labels = json::array();
  for (auto id : route.nodes) {
    ids.push_back(index(id));
    labels.push_back(graph.label(id));
  }
  return {{"nodes", ids}, {"labels", labels}, {"cost_meters", route.cost_meters},
          {"cost_minutes", route.cost_minutes}};
}

inline Route route_from_document(const json& doc) {
  Route r;
  for (const auto& id : detail::require(doc, "nodes")) r.nodes.push_back(NodeId{id.get<std::uint32_t>()});
  r.cost_meters = detail::require(doc, "cost_meters").get<Cost>();
  r.cost_minutes = detail::require(doc, "cost_minutes").get<Cost>();
  return r;
}

inline json query_document(const QuerySpec& q) {
  return {{"start", index(q.start)},
          {"end", index(q.end)},
          {"k", q.k},
          {"metric", to_string(q.metric)},
          {"mode", to_string(q.mode)},
          {"prune", q.prune}};
}

inline QuerySpec query_from_document(const json& doc) {
  QuerySpec q;
  q.start = detail::require_node(doc, "start");
  q.end = detail::require_node(doc, "end");
  auto k = detail::require_int(doc, "k");
  if (k < 0) throw FieldError(ErrorKind::InvalidCardinality, "k", "must be non-negative");
  q.k = static_cast<std::size_t>(k);
  q.metric = detail::require_metric(doc, "metric");
  if (auto it = doc.find("mode"); it != doc.end()) {
    if (*it == "all") {
      q.mode = EnumerationMode::EnumerateAll;
    } else if (*it == "best") {
      q.mode = EnumerationMode::BestOnly;
    } else {
      throw FieldError(ErrorKind::InvalidRequest, "mode", "must be \"all\" or \"best\"");
    }
  }
  q.prune = detail::optional_bool(doc, "prune", true);
  q.allow_large = detail::optional_bool(doc, "allow_large", false);
  return q;
}

inline json enumeration_document(const AttractionGraph& graph, const QuerySpec& q,
                                 const EnumerationResult& result) {
  json routes = json::array();
  for (const auto& r : result.routes) routes.push_back(route_document(graph, r));
  return {{"query", query_document(q)},
          {"metric", to_string(result.metric)},
          {"explored", result.explored},
          {"count", result.routes.size()},
          {"routes", routes}};
}

inline EnumerationResult enumeration_from_document(const json& doc) {
  EnumerationResult result;
  auto metric = detail::require_metric(doc, "metric");
  result.metric = metric;
  result.explored = detail::require(doc, "explored").get<std::size_t>();
  for (const auto& r : detail::require(doc, "routes")) result.routes.push_back(route_from_document(r));
  return result;
}

inline json snapshot_document(const OccupancySnapshot& snap) {
  json counts = json::object();
  for (const auto& [id, c] : snap.counts) counts[std::to_string(index(id))] = c;
  return {{"as_of", snap.as_of}, {"counts", counts}};
}

inline OccupancySnapshot snapshot_from_document(const json& doc) {
  OccupancySnapshot snap;
  snap.as_of = detail::require_int(doc, "as_of");
  for (const auto& [key, value] : detail::require(doc, "counts").items()) {
    auto id = detail::parse_int<std::uint32_t>(key);
    if (!id || *id == 0) throw FieldError(ErrorKind::Format, "counts", "keys must be node ids");
    snap.counts[NodeId{*id}] = value.get<std::uint64_t>();
  }
  return snap;
}

inline GroupRequest group_request_from_document(const json& doc) {
  GroupRequest g;
  const auto& id = detail::require(doc, "group_id");
  if (!id.is_string() || id.get<std::string>().empty()) {
    throw FieldError(ErrorKind::Format, "group_id", "must be a non-empty string");
  }
  g.group_id = id.get<std::string>();
  auto size = detail::require_int(doc, "size");
  if (size < 1 || size > UINT32_MAX) throw FieldError(ErrorKind::InvalidRequest, "size", "must be >= 1");
  g.size = static_cast<std::uint32_t>(size);
  g.query = query_from_document(doc);
  g.query.mode = EnumerationMode::EnumerateAll;
  auto eps = doc.find("epsilon");
  if (eps != doc.end()) {
    if (!eps->is_number()) throw FieldError(ErrorKind::Format, "epsilon", "must be a number");
    auto value = eps->get<double>();
    if (!(value >= 0.0 && value <= 1.0)) {
      throw FieldError(ErrorKind::InvalidRequest, "epsilon", "must lie in [0, 1]");
    }
    g.slack = Slack::from_double(value);
  }
  return g;
}

inline json plan_document(const AttractionGraph& graph, const AssignmentPlan& plan) {
  json assignments = json::array();
  for (const auto& a : plan.assignments) {
    assignments.push_back({{"group_id", a.group_id},
                           {"size", a.size},
                           {"route", route_document(graph, a.route)},
                           {"best_cost", a.best_cost},
                           {"feasible_routes", a.feasible_count},
                           {"congestion_score", a.congestion_score},
                           {"overlap_score", a.overlap_score},
                           {"objective", a.objective}});
  }
  return {{"assignments", assignments}, {"total_overlap", plan.total_overlap}, {"warnings", plan.warnings}};
}

inline json graph_document(const AttractionGraph& graph) {
  json nodes = json::array();
  for (std::uint32_t i = 1; i <= graph.node_count(); ++i) {
    nodes.push_back({{"id", i}, {"label", graph.label(NodeId{i})}});
  }
  json edges = json::array();
  for (const auto& e : graph.edges()) {
    edges.push_back({{"u", index(e.u)}, {"v", index(e.v)}, {"meters", e.meters}, {"minutes", e.minutes}});
  }
  return {{"node_count", graph.node_count()},
          {"edge_count", graph.edge_count()},
          {"fingerprint", fingerprint(graph)},
          {"nodes", nodes},
          {"edges", edges}};
}

// Rebuilds the edge-table text of a graph document.
inline std::string edge_table_from_document(const json& doc) {
  std::ostringstream out;
  out << detail::require(doc, "node_count").get<std::size_t>() << ' '
      << detail::require(doc, "edges").size() << '\n';
  for (const auto& e : doc.at("edges")) {
    out << e.at("u").get<std::uint32_t>() << ' ' << e.at("v").get<std::uint32_t>() << ' '
        << e.at("meters").get<Weight>() << ' ' << e.at("minutes").get<Weight>() << '\n';
  }
  return out.str();
}

}  // namespace tourroute
