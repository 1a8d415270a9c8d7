#pragma once

// Subcommand bodies for the `tourroute` CLI. Each writes to the given streams
// and returns the process exit code, so tests can drive them in-process.

#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tourroute/documents.hpp"
#include "tourroute/tourroute.hpp"

namespace tourroute::cli {

// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNoResult = 2;

enum class OutputMode { Table, Json };

struct RouteOptions {
  std::filesystem::path edges;
  std::optional<std::filesystem::path> names;
  std::uint32_t start = 0;
  std::uint32_t end = 0;
  std::size_t visit = 2;
  std::string metric = "minutes";
  bool all = false;
  bool no_prune = false;
  bool allow_large = false;
  OutputMode output = OutputMode::Table;
};

inline AttractionGraph load_graph(const std::filesystem::path& edges,
                                  const std::optional<std::filesystem::path>& names) {
  auto graph = load_edge_table(edges);
  if (names) graph = graph.with_registry(load_registry(*names));
  return graph;
}

inline CostMetric metric_or_throw(const std::string& text) {
  auto metric = parse_metric(text);
  if (!metric) throw Error(ErrorKind::InvalidRequest, "unknown metric '" + text + "'");
  return *metric;
}

// Ids alone, or "Label (id) -> ..." when a registry is loaded.
inline std::string format_route(const AttractionGraph& graph, const Route& route, CostMetric metric) {
  std::ostringstream out;
  for (std::size_t i = 0; i < route.nodes.size(); ++i) {
    auto id = route.nodes[i];
    if (graph.registry()) {
      out << (i ? " -> " : "") << graph.label(id) << " (" << id << ")";
    } else {
      out << (i ? " " : "") << std::setw(2) << id;
    }
  }
  out << "  cost=" << route.cost(metric) << "  [meters=" << route.cost_meters
      << " minutes=" << route.cost_minutes << "]";
  return out.str();
}

inline int cmd_validate(const std::filesystem::path& edges, const std::optional<std::filesystem::path>& names,
                        std::ostream& out, std::ostream& err) {
  try {
    auto graph = load_graph(edges, names);
    auto report = validate(graph);
    out << report.node_count << " nodes, " << report.edge_count << " edges, "
        << (report.connected ? "connected" : "not connected") << '\n';
    out << "components: " << report.component_count << '\n';
    out << "degree histogram:";
    for (const auto& [deg, count] : report.degree_histogram) out << ' ' << deg << ':' << count;
    out << '\n';
    if (!report.isolated.empty()) {
      out << "isolated:";
      for (auto id : report.isolated) out << ' ' << id;
      out << '\n';
    }
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    return report.ok() ? kExitOk : kExitInput;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitInput;
  }
}

inline int cmd_route(const RouteOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    auto graph = load_graph(opt.edges, opt.names);
    QuerySpec q;
    q.start = NodeId{opt.start};
    q.end = NodeId{opt.end};
    q.k = opt.visit;
    q.metric = metric_or_throw(opt.metric);
    q.mode = opt.all ? EnumerationMode::EnumerateAll : EnumerationMode::BestOnly;
    q.prune = !opt.no_prune;
    q.allow_large = opt.allow_large;
    auto result = run_query(graph, q);
    if (opt.output == OutputMode::Json) {
      out << enumeration_document(graph, q, result).dump(2) << '\n';
    } else {
      for (const auto& r : result.routes) out << format_route(graph, r, q.metric) << '\n';
    }
    if (result.routes.empty()) {
      err << "no route\n";
      return kExitNoResult;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitInput;
  }
}

inline int cmd_all_pairs(const std::filesystem::path& edges, const std::string& metric_text, OutputMode output,
                         std::ostream& out, std::ostream& err) {
  try {
    auto graph = load_edge_table(edges);
    auto metric = metric_or_throw(metric_text);
    auto d = all_pairs_shortest(graph, metric);
    const auto n = static_cast<std::uint32_t>(graph.node_count());
    if (output == OutputMode::Json) {
      json rows = json::array();
      for (std::uint32_t i = 1; i <= n; ++i) {
        json row = json::array();
        for (std::uint32_t j = 1; j <= n; ++j) {
          auto v = d.at(NodeId{i}, NodeId{j});
          row.push_back(v ? json(*v) : json(nullptr));
        }
        rows.push_back(row);
      }
      out << json{{"metric", to_string(metric)}, {"n", n}, {"dist", rows}}.dump() << '\n';
      return kExitOk;
    }
    const int width = metric == CostMetric::Meters ? 6 : 4;
    out << std::setw(4) << "";
    for (std::uint32_t j = 1; j <= n; ++j) out << std::setw(width) << j;
    out << '\n';
    for (std::uint32_t i = 1; i <= n; ++i) {
      out << std::setw(4) << i;
      for (std::uint32_t j = 1; j <= n; ++j) {
        auto v = d.at(NodeId{i}, NodeId{j});
        if (v) {
          out << std::setw(width) << *v;
        } else {
          out << std::setw(width) << "-";
        }
      }
      out << '\n';
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitInput;
  }
}

// `group_id size start end k metric epsilon` per line.
inline std::vector<GroupRequest> parse_requests(std::string_view text) {
  std::vector<GroupRequest> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto t = detail::split_ws(line);
    if (t.size() != 7) throw Error(ErrorKind::Parse, "expected `group_id size start end k metric epsilon`", line_no);
    GroupRequest g;
    g.group_id = std::string(t[0]);
    auto size = detail::parse_int<std::uint32_t>(t[1]);
    auto start = detail::parse_int<std::uint32_t>(t[2]);
    auto end = detail::parse_int<std::uint32_t>(t[3]);
    auto k = detail::parse_int<std::size_t>(t[4]);
    auto metric = parse_metric(t[5]);
    if (!size || *size == 0 || !start || !end || !k || !metric) {
      throw Error(ErrorKind::Parse, "malformed group request", line_no);
    }
    g.size = *size;
    g.query = QuerySpec{NodeId{*start}, NodeId{*end}, *k, *metric, EnumerationMode::EnumerateAll, true, false};
    try {
      g.slack = Slack::parse(t[6]);
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, e.what(), line_no);
    }
    out.push_back(std::move(g));
  }
  return out;
}

// `node count` per line.
inline OccupancySnapshot parse_occupancy(std::string_view text, std::int64_t as_of) {
  OccupancySnapshot snap;
  snap.as_of = as_of;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto t = detail::split_ws(line);
    std::optional<std::uint32_t> id;
    std::optional<std::uint64_t> count;
    if (t.size() == 2) {
      id = detail::parse_int<std::uint32_t>(t[0]);
      count = detail::parse_int<std::uint64_t>(t[1]);
    }
    if (!id || *id == 0 || !count) throw Error(ErrorKind::Parse, "expected `node count`", line_no);
    if (!snap.counts.emplace(NodeId{*id}, *count).second) {
      throw Error(ErrorKind::DuplicateEntry, "duplicate node " + std::to_string(*id), line_no);
    }
  }
  return snap;
}

inline int cmd_assign(const std::filesystem::path& edges, const std::filesystem::path& requests_path,
                      const std::optional<std::filesystem::path>& occupancy_path,
                      const std::optional<std::filesystem::path>& names, OutputMode output, std::ostream& out,
                      std::ostream& err) {
  try {
    auto graph = load_graph(edges, names);
    auto requests = parse_requests(detail::read_file(requests_path));
    if (requests.empty()) {
      err << "usage error: requests file " << requests_path << " contains no group requests\n";
      return kExitInput;
    }
    OccupancySnapshot occupancy;
    if (occupancy_path) occupancy = parse_occupancy(detail::read_file(*occupancy_path), 0);
    // An occupancy file has no timestamp, so it is taken as current.
    AssignmentPlan plan;
    try {
      plan = assign_groups(graph, requests, occupancy);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Unassignable) throw;
      err << "error: " << e.what() << '\n';
      return kExitNoResult;
    }
    if (output == OutputMode::Json) {
      out << plan_document(graph, plan).dump(2) << '\n';
    } else {
      for (const auto& a : plan.assignments) {
        const auto* req = &requests.front();
        for (const auto& r : requests) {
          if (r.group_id == a.group_id) req = &r;
        }
        out << a.group_id << "  size=" << a.size << "  congestion=" << a.congestion_score
            << "  overlap=" << a.overlap_score << "  feasible=" << a.feasible_count << '\n'
            << "  " << format_route(graph, a.route, req->query.metric) << '\n';
      }
      out << "total_overlap=" << plan.total_overlap << '\n';
    }
    for (const auto& w : plan.warnings) err << "warning: " << w << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitInput;
  }
}

inline int cmd_merge(const std::filesystem::path& meters, const std::filesystem::path& minutes, std::ostream& out,
                     std::ostream& err) {
  try {
    auto graph = merge_weight_tables(detail::read_file(meters), detail::read_file(minutes));
    out << "# u v meters minutes\n" << to_edge_table(graph);
    return kExitOk;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace tourroute::cli
