#pragma once

#include <stdexcept>
#include <string>

namespace textgeom {

// Base class for all domain errors thrown by this library. Argument and
// range misuse (bad config values, out-of-range labels) throws the matching
// std exceptions instead.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Self-intersecting or otherwise unusable polygon input.
class InvalidGeometryError : public Error {
public:
  explicit InvalidGeometryError(const std::string& what) : Error(what) {}
};

// An operation that needs at least one set pixel got an all-zero mask.
class EmptyMaskError : public Error {
public:
  explicit EmptyMaskError(const std::string& what) : Error(what) {}
};

// Degenerate axis-aligned box where a positive extent is required.
class InvalidBoxError : public Error {
public:
  explicit InvalidBoxError(const std::string& what) : Error(what) {}
};

// Malformed annotation or detection input; carries a 1-based line number
// when the failure is tied to a specific line (0 otherwise).
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// Structurally valid input whose payload is inconsistent (e.g. RLE runs not
// summing to the mask size).
class FormatError : public Error {
public:
  explicit FormatError(const std::string& what) : Error(what) {}
};

// File could not be opened for reading or writing.
class FileError : public Error {
public:
  explicit FileError(const std::string& what) : Error(what) {}
};

// A generator exhausted its rejection-sampling budget.
class CapacityError : public Error {
public:
  explicit CapacityError(const std::string& what) : Error(what) {}
};

}  // namespace textgeom
