#pragma once

#include <stdexcept>
#include <string>

namespace ncrelax {

enum class ErrorCode {
  parse_error,
  undeclared_variable,
  duplicate_section,
  bad_substitution_coefficient,
  duplicate_lhs,
  empty_lhs,
  cycle_suspected,
  unknown_moment,
  order_too_low,
  invariant_violation,
  numerical_failure,
  io_error,
  invalid_argument,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::undeclared_variable: return "undeclared_variable";
    case ErrorCode::duplicate_section: return "duplicate_section";
    case ErrorCode::bad_substitution_coefficient: return "bad_substitution_coefficient";
    case ErrorCode::duplicate_lhs: return "duplicate_lhs";
    case ErrorCode::empty_lhs: return "empty_lhs";
    case ErrorCode::cycle_suspected: return "cycle_suspected";
    case ErrorCode::unknown_moment: return "unknown_moment";
    case ErrorCode::order_too_low: return "order_too_low";
    case ErrorCode::invariant_violation: return "invariant_violation";
    case ErrorCode::numerical_failure: return "numerical_failure";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse-time diagnostics carry a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what,
             ErrorCode code = ErrorCode::parse_error)
      : Error(code, "line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class OrderTooLowError : public Error {
 public:
  explicit OrderTooLowError(int required)
      : Error(ErrorCode::order_too_low,
              "relaxation order too low; the problem needs order >= " +
                  std::to_string(required)),
        required_(required) {}

  int required_order() const { return required_; }

 private:
  int required_;
};

}  // namespace ncrelax
