#pragma once

#include <stdexcept>
#include <string>

namespace mjr {

// Precondition or argument-contract violation.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A bounded randomized search (rejection sampling, restarts) ran out of budget.
struct AttemptsExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// run_to_cycle hit its round cap before detecting a limit cycle.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed text input; carries a 1-based line number when known (0 = n/a).
struct ParseError : std::runtime_error {
  ParseError(const std::string& message, int line_number = 0)
      : std::runtime_error(line_number > 0
                               ? "line " + std::to_string(line_number) + ": " + message
                               : message),
        line(line_number) {}
  int line;
};

}  // namespace mjr
