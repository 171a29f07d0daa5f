#pragma once

#include <stdexcept>
#include <string>

namespace matgraph {

// Base of every error the library throws. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

// Residual variance of a node collapsed to zero (or below).
class DegenerateData : public Error {
 public:
  DegenerateData(const std::string& what, std::size_t node) : Error(what), node_(node) {}
  std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

// Structural problem in an input file (ragged dimensions, missing columns).
class FormatError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Non-numeric cell; row and column are 1-based file coordinates.
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : InvalidInput(what), row_(row), column_(column) {}
  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace matgraph
