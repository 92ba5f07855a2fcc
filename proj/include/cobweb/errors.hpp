#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cobweb {

/// Invalid construction parameters (non-positive alpha, zero budget, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An instance or query does not conform to the attribute schema.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inference was requested from a tree that has absorbed no instances.
class EmptyModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed snapshot input. `position` is a byte offset into the input
/// when the failure is syntactic, or npos for structural problems.
class ParseError : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace cobweb
