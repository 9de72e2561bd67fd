#pragma once

#include <stdexcept>
#include <string>

namespace stagewise {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Data validation problems (bad input files, malformed datasets).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Numerical failures (rank deficiency, stalled path steps).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConstantColumnError : public ValidationError {
 public:
  explicit ConstantColumnError(int column)
      : ValidationError("column " + std::to_string(column) +
                        " has zero variance after centering"),
        column(column) {}
  int column;
};

class RankDeficientError : public NumericalError {
 public:
  explicit RankDeficientError(const std::string& context)
      : NumericalError("rank-deficient matrix: " + context) {}
};

class NotStandardizedError : public NumericalError {
 public:
  explicit NotStandardizedError(const std::string& what)
      : NumericalError(what) {}
};

class NotLinearSmootherError : public NumericalError {
 public:
  explicit NotLinearSmootherError(const std::string& what)
      : NumericalError(what) {}
};

class NoProgressError : public NumericalError {
 public:
  explicit NoProgressError(const std::string& what) : NumericalError(what) {}
};

class OutOfRangeError : public ValidationError {
 public:
  explicit OutOfRangeError(const std::string& what) : ValidationError(what) {}
};

class ParseError : public ValidationError {
 public:
  ParseError(int line, int column, const std::string& what)
      : ValidationError("parse error at line " + std::to_string(line) +
                        ", column " + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

class MissingColumnError : public ValidationError {
 public:
  explicit MissingColumnError(const std::string& name)
      : ValidationError("column not found: " + name), name(name) {}
  std::string name;
};

class InsufficientDataError : public ValidationError {
 public:
  explicit InsufficientDataError(const std::string& what)
      : ValidationError(what) {}
};

}  // namespace stagewise
