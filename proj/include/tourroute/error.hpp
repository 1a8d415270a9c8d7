#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tourroute {

enum class ErrorKind {
  Io,
  Parse,
  SelfLoop,
  DuplicateEdge,
  DuplicateEntry,
  Format,
  TopologyMismatch,
  MissingEdge,
  BrokenRoute,
  InvalidNode,
  InvalidCardinality,
  InvalidRequest,
  TooLarge,
  Unassignable,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Io: return "io";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::SelfLoop: return "self-loop";
    case ErrorKind::DuplicateEdge: return "duplicate-edge";
    case ErrorKind::DuplicateEntry: return "duplicate-entry";
    case ErrorKind::Format: return "format";
    case ErrorKind::TopologyMismatch: return "topology-mismatch";
    case ErrorKind::MissingEdge: return "missing-edge";
    case ErrorKind::BrokenRoute: return "broken-route";
    case ErrorKind::InvalidNode: return "invalid-node";
    case ErrorKind::InvalidCardinality: return "invalid-cardinality";
    case ErrorKind::InvalidRequest: return "invalid-request";
    case ErrorKind::TooLarge: return "too-large";
    case ErrorKind::Unassignable: return "unassignable";
  }
  return "unknown";
}

// Every failure raised by the library. `line()` is 1-based and 0 when the
// error is not tied to an input line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::size_t line = 0)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " + message),
        kind_(kind),
        line_(line) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
};

}  // namespace tourroute
