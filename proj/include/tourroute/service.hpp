#pragma once

// HTTP facade over a single immutable graph and its occupancy ledger.

#include <chrono>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#ifndef CPPHTTPLIB_LISTEN_BACKLOG
#define CPPHTTPLIB_LISTEN_BACKLOG 128
#endif
#include <httplib.h>
#include <json.hpp>

#include "tourroute/dispatch.hpp"
#include "tourroute/documents.hpp"
#include "tourroute/enumerate.hpp"
#include "tourroute/error.hpp"
#include "tourroute/graph.hpp"
#include "tourroute/ledger.hpp"

namespace tourroute {

inline constexpr const char* kVersion = "0.1.0";

// ApiError codes: bad-request, not-found, unprocessable, too-large,
// unavailable, internal.
struct Reply {
  int status = 200;
  json body;
};

inline Reply api_error(int status, std::string code, std::string message, json detail = nullptr) {
  json err = {{"code", std::move(code)}, {"message", std::move(message)}};
  if (!detail.is_null()) err["detail"] = std::move(detail);
  return {status, {{"error", err}}};
}

inline Reply error_reply(const Error& e) {
  json detail = {{"kind", to_string(e.kind())}};
  if (const auto* fe = dynamic_cast<const FieldError*>(&e)) detail["field"] = fe->field();
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::Format:
      return api_error(400, "bad-request", e.what(), detail);
    case ErrorKind::TooLarge:
      return api_error(413, "too-large", e.what(), detail);
    case ErrorKind::InvalidNode:
    case ErrorKind::InvalidCardinality:
    case ErrorKind::InvalidRequest:
    case ErrorKind::Unassignable:
    case ErrorKind::BrokenRoute:
    case ErrorKind::MissingEdge:
      return api_error(422, "unprocessable", e.what(), detail);
    default:
      return api_error(500, "internal", e.what(), detail);
  }
}

struct ServiceOptions {
  std::optional<std::filesystem::path> ledger_path;
  DispatchConfig dispatch;
  OccupancyLedger::Clock clock = unix_seconds;
};

class Service {
 public:
  explicit Service(std::optional<AttractionGraph> graph, ServiceOptions options = {})
      : options_(std::move(options)), started_(std::chrono::steady_clock::now()) {
    if (graph) {
      graph_ = std::make_shared<const AttractionGraph>(std::move(*graph));
      fingerprint_ = fingerprint(*graph_);
      ledger_ = std::make_unique<OccupancyLedger>(graph_->node_count(), options_.ledger_path,
                                                  options_.clock);
    }
  }

  [[nodiscard]] const AttractionGraph* graph() const noexcept { return graph_.get(); }
  [[nodiscard]] const OccupancyLedger* ledger() const noexcept { return ledger_.get(); }

  Reply health() const {
    auto uptime = std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - started_);
    if (!graph_) {
      return {503, {{"status", "unavailable"}, {"version", kVersion}, {"uptime_seconds", uptime.count()}}};
    }
    return {200,
            {{"status", "ok"},
             {"version", kVersion},
             {"fingerprint", fingerprint_},
             {"nodes", graph_->node_count()},
             {"edges", graph_->edge_count()},
             {"uptime_seconds", uptime.count()}}};
  }

  Reply graph_doc() const {
    if (!graph_) return unavailable();
    return {200, graph_document(*graph_)};
  }

  Reply query(const std::string& body) const {
    if (!graph_) return unavailable();
    return guarded([&] {
      auto q = query_from_document(parse_body(body));
      auto result = run_query(*graph_, q);
      return Reply{200, enumeration_document(*graph_, q, result)};
    });
  }

  Reply get_occupancy() const {
    if (!ledger_) return unavailable();
    return {200, snapshot_document(ledger_->snapshot())};
  }

  Reply post_occupancy(const std::string& body) {
    if (!ledger_) return unavailable();
    return guarded([&] {
      auto doc = parse_body(body);
      auto id = detail::require_int(doc, "node");
      auto delta = detail::require_int(doc, "delta");
      if (id < 1 || static_cast<std::size_t>(id) > graph_->node_count()) {
        return api_error(404, "not-found", "node " + std::to_string(id) + " not in graph",
                         {{"field", "node"}});
      }
      auto update = ledger_->apply(NodeId{static_cast<std::uint32_t>(id)}, delta);
      auto out = snapshot_document(update.snapshot);
      out["clamped"] = update.clamped;
      out["warnings"] = json::array();
      if (update.clamped) out["warnings"].push_back("count at node " + std::to_string(id) + " clamped to 0");
      return Reply{200, out};
    });
  }

  Reply plan(const std::string& body) const {
    if (!graph_) return unavailable();
    return guarded([&] {
      auto doc = parse_body(body);
      const json* list = &doc;
      if (doc.is_object() && doc.contains("groups")) list = &doc["groups"];
      if (!list->is_array()) return api_error(400, "bad-request", "expected a list of group requests");
      if (list->empty()) return api_error(400, "bad-request", "group request list is empty");
      std::vector<GroupRequest> requests;
      for (const auto& g : *list) requests.push_back(group_request_from_document(g));
      auto snapshot = ledger_->snapshot();
      auto config = options_.dispatch;
      if (!config.now) config.now = options_.clock();
      std::lock_guard lock(plan_mutex_);
      auto plan = assign_groups(*graph_, requests, snapshot, config);
      return Reply{200, plan_document(*graph_, plan)};
    });
  }

  void mount(httplib::Server& server) {
    auto send = [](httplib::Response& res, const Reply& reply) {
      res.status = reply.status;
      res.set_content(reply.body.dump(), "application/json");
    };
    server.Get("/health", [this, send](const httplib::Request&, httplib::Response& res) { send(res, health()); });
    server.Get("/graph", [this, send](const httplib::Request&, httplib::Response& res) { send(res, graph_doc()); });
    server.Post("/routes/query", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, query(req.body));
    });
    server.Get("/occupancy", [this, send](const httplib::Request&, httplib::Response& res) {
      send(res, get_occupancy());
    });
    server.Post("/occupancy", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, post_occupancy(req.body));
    });
    server.Post("/plan", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, plan(req.body));
    });
    server.set_exception_handler([send](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      std::string what = "unknown error";
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        what = e.what();
      } catch (...) {
      }
      send(res, api_error(500, "internal", what));
    });
  }

 private:
  static Reply unavailable() { return api_error(503, "unavailable", "no graph loaded"); }

  static json parse_body(const std::string& body) {
    try {
      return json::parse(body);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::Format, std::string("malformed JSON: ") + e.what());
    }
  }

  template <typename F>
  static Reply guarded(F&& f) {
    try {
      return f();
    } catch (const Error& e) {
      return error_reply(e);
    } catch (const json::exception& e) {
      return api_error(400, "bad-request", e.what());
    }
  }

  ServiceOptions options_;
  std::chrono::steady_clock::time_point started_;
  std::shared_ptr<const AttractionGraph> graph_;
  std::string fingerprint_;
  std::unique_ptr<OccupancyLedger> ledger_;
  mutable std::mutex plan_mutex_;
};

}  // namespace tourroute
