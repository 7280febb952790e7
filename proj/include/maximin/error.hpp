#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maximin {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input geometry is degenerate (coincident points, collinear triangle, ...).
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// Instance violates an invariant (too few points, bad weight, point outside region).
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

/// Malformed instance or report file. `line()` is 1-based, 0 when not line-specific.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Requested solver/region combination is not supported (e.g. BTST outside the hull).
class UnsupportedCombination : public Error {
 public:
  using Error::Error;
};

}  // namespace maximin
