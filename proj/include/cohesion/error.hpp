#pragma once

#include <stdexcept>
#include <string>

namespace cohesion {

/// Broad category of a domain failure; the CLI prints it as the error tag.
enum class ErrorKind {
  invalid_argument,
  parse,
  shape_mismatch,
  size_limit,
  not_a_matroid,
  internal,
  io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::parse: return "parse";
    case ErrorKind::shape_mismatch: return "shape_mismatch";
    case ErrorKind::size_limit: return "size_limit";
    case ErrorKind::not_a_matroid: return "not_a_matroid";
    case ErrorKind::internal: return "internal";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cohesion
