#pragma once

#include <stdexcept>
#include <string>

namespace cyclex {

/// An argument fell outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested expectations admit no joint distribution.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what, int index = -1)
      : std::runtime_error(what), index_(index) {}

  /// Offending position (0-based), or -1 when not tied to one.
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// Malformed input document.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::string location = {})
      : std::runtime_error(what), location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

/// A request exceeded a configured size limit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cyclex
