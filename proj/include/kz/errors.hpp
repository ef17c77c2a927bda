#pragma once

#include <stdexcept>
#include <string>

namespace kz {

// Malformed basis text; line and column are 1-based.
class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& msg, int line, int col)
      : std::runtime_error(msg), line_(line), col_(col) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return col_; }

private:
  int line_;
  int col_;
};

// Basis (or a projected block) is not full rank within tolerance.
class rank_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Invalid argument values: delta range, worker count, dimensions, ...
class param_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Failure inside a multi-worker run, or a computation that did not converge.
class run_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace kz
