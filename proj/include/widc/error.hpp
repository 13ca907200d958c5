#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace widc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector or observation lengths that do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Tallies or matrices that violate an internal invariant.
class InternalError : public Error {
 public:
  using Error::Error;
};

// Malformed input files. line() is 1-based, 0 when not tied to a line.
class DataError : public Error {
 public:
  DataError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace widc
