#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace omni {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed expression or document text.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position, std::size_t line = 0, std::size_t column = 0)
      : Error(msg), position_(position), line_(line), column_(column) {}
  std::size_t position() const { return position_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t position_;
  std::size_t line_;
  std::size_t column_;
};

// Numeric evaluation failed (near-zero denominator, non-finite value).
class EvalError : public Error {
 public:
  EvalError(const std::string& msg, std::vector<double> point) : Error(msg), point_(std::move(point)) {}
  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

class ChartMismatch : public Error {
 public:
  using Error::Error;
};

// A mathematical precondition failed at a concrete sample point.
class WitnessError : public Error {
 public:
  WitnessError(const std::string& msg, std::vector<double> point, double value)
      : Error(msg), point_(std::move(point)), value_(value) {}
  const std::vector<double>& point() const { return point_; }
  double value() const { return value_; }

 private:
  std::vector<double> point_;
  double value_;
};

}  // namespace omni
