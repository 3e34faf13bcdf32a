#pragma once

#include <stdexcept>
#include <string>

namespace overlap {

/// Input that violates a structural precondition (duplicate vertex in a
/// simplex, unknown vertex id, empty simplex).
class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact search was asked to run beyond its configured size limit.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An integer does not fit the requested binary code width.
class EncodingError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A documented hypothesis of an operation does not hold for its arguments.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A guarantee that should hold by construction was violated.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace overlap
