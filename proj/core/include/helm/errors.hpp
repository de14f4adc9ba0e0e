#pragma once

#include <stdexcept>
#include <string>

namespace helm {

/// Raised for malformed or schema-violating configuration input.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string msg, int line = 0, int column = 0)
      : std::runtime_error(format(msg, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  static std::string format(const std::string& msg, int line, int column) {
    if (line <= 0) return msg;
    return msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
  }
  int line_;
  int column_;
};

/// Raised when a scenario cannot be started (assumption or tube admission failure).
class FeasibilityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised mid-run for faults that make the closed loop undefined
/// (parametrisation singularity, non-finite state).
class SimFault : public std::runtime_error {
public:
  SimFault(std::string what, double t) : std::runtime_error(std::move(what)), t_(t) {}
  double time() const { return t_; }

private:
  double t_;
};

}  // namespace helm
