#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dynflow {

using VertexId = std::int32_t;
using EdgeId = std::int64_t;
using Capacity = std::int64_t;
using Height = std::int32_t;

// Raised when input data violates a documented precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by the file parsers; carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dynflow
