#pragma once

#include <stdexcept>
#include <string>

namespace cdyn {

enum class ErrorKind {
  DegenerateInput,
  InvalidLifting,
  ComplexityBudgetExceeded,
  PrecisionBudgetExceeded,
  WrongDegree,
  NoFixedPoint,
  ExtensibleMap,
  NonStabilizing,
  Parse,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::InvalidLifting: return "InvalidLifting";
    case ErrorKind::ComplexityBudgetExceeded: return "ComplexityBudgetExceeded";
    case ErrorKind::PrecisionBudgetExceeded: return "PrecisionBudgetExceeded";
    case ErrorKind::WrongDegree: return "WrongDegree";
    case ErrorKind::NoFixedPoint: return "NoFixedPoint";
    case ErrorKind::ExtensibleMap: return "ExtensibleMap";
    case ErrorKind::NonStabilizing: return "NonStabilizing";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a computation would exceed a configured size cap. Callers in
/// the CLI map this to the "inconclusive" exit status.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what)
      : Error(ErrorKind::ComplexityBudgetExceeded, what) {}
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace cdyn
