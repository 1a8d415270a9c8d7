#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "tourroute/dispatch.hpp"
#include "tourroute/error.hpp"
#include "tourroute/graph.hpp"

namespace tourroute {

struct OccupancyEvent {
  std::int64_t timestamp = 0;
  NodeId node{};
  std::int64_t delta = 0;

  friend bool operator==(const OccupancyEvent&, const OccupancyEvent&) = default;
};

struct OccupancyUpdate {
  OccupancySnapshot snapshot;
  bool clamped = false;
};

inline std::int64_t unix_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

// Applies events in order over an all-zero snapshot of nodes 1..n; counts
// never go below zero.
inline OccupancySnapshot fold_events(std::size_t node_count, std::span<const OccupancyEvent> events) {
  OccupancySnapshot snap;
  for (std::uint32_t i = 1; i <= node_count; ++i) snap.counts[NodeId{i}] = 0;
  for (const auto& e : events) {
    auto& c = snap.counts[e.node];
    auto next = static_cast<std::int64_t>(c) + e.delta;
    c = next < 0 ? 0 : static_cast<std::uint64_t>(next);
    snap.as_of = std::max(snap.as_of, e.timestamp);
  }
  return snap;
}

// Append-only headcount ledger. With a log path, every event is written as
// `timestamp node delta` and the log is replayed on construction.
class OccupancyLedger {
 public:
  using Clock = std::function<std::int64_t()>;

  explicit OccupancyLedger(std::size_t node_count, std::optional<std::filesystem::path> log_path = {},
                           Clock clock = unix_seconds)
      : node_count_(node_count), log_path_(std::move(log_path)), clock_(std::move(clock)) {
    current_ = fold_events(node_count_, {});
    if (log_path_) replay();
  }

  OccupancyUpdate apply(NodeId node, std::int64_t delta) {
    if (index(node) < 1 || index(node) > node_count_) {
      throw Error(ErrorKind::InvalidNode, "node " + std::to_string(index(node)) + " not in graph");
    }
    std::lock_guard lock(mutex_);
    OccupancyEvent e{std::max(clock_(), current_.as_of), node, delta};
    if (log_.is_open()) {
      log_ << e.timestamp << ' ' << index(e.node) << ' ' << e.delta << '\n';
      log_.flush();
      if (!log_) throw Error(ErrorKind::Io, "cannot append to ledger " + log_path_->string());
    }
    history_.push_back(e);
    auto& c = current_.counts[node];
    auto next = static_cast<std::int64_t>(c) + delta;
    OccupancyUpdate out;
    out.clamped = next < 0;
    c = next < 0 ? 0 : static_cast<std::uint64_t>(next);
    current_.as_of = e.timestamp;
    out.snapshot = current_;
    return out;
  }

  [[nodiscard]] OccupancySnapshot snapshot() const {
    std::lock_guard lock(mutex_);
    return current_;
  }

  [[nodiscard]] std::vector<OccupancyEvent> history() const {
    std::lock_guard lock(mutex_);
    return history_;
  }

  [[nodiscard]] const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  void replay() {
    std::string text;
    if (std::filesystem::exists(*log_path_)) text = detail::read_file(*log_path_);
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      auto line = detail::trim(raw);
      if (line.empty()) continue;
      auto tokens = detail::split_ws(line);
      std::optional<std::int64_t> ts, delta;
      std::optional<std::uint32_t> id;
      if (tokens.size() == 3) {
        ts = detail::parse_int<std::int64_t>(tokens[0]);
        id = detail::parse_int<std::uint32_t>(tokens[1]);
        delta = detail::parse_int<std::int64_t>(tokens[2]);
      }
      if (!ts || !id || !delta) {
        // A crash mid-write leaves an unterminated last line.
        if (in.eof() && !text.empty() && text.back() != '\n') {
          warnings_.push_back("dropped truncated ledger line " + std::to_string(line_no));
          auto keep = text.rfind('\n');
          std::filesystem::resize_file(*log_path_, keep == std::string::npos ? 0 : keep + 1);
          break;
        }
        throw Error(ErrorKind::Parse, "expected `timestamp node delta`", line_no);
      }
      if (*id < 1 || *id > node_count_) {
        throw Error(ErrorKind::InvalidNode, "ledger refers to unknown node " + std::to_string(*id),
                    line_no);
      }
      history_.push_back({*ts, NodeId{*id}, *delta});
    }
    current_ = fold_events(node_count_, history_);
    log_.open(*log_path_, std::ios::app);
    if (!log_) throw Error(ErrorKind::Io, "cannot open ledger " + log_path_->string());
  }

  std::size_t node_count_;
  std::optional<std::filesystem::path> log_path_;
  Clock clock_;
  mutable std::mutex mutex_;
  OccupancySnapshot current_;
  std::vector<OccupancyEvent> history_;
  std::vector<std::string> warnings_;
  std::ofstream log_;
};

}  // namespace tourroute
