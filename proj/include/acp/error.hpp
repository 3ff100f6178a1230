#pragma once

#include <stdexcept>
#include <string>

namespace acp {

enum class ErrorKind {
  Overflow,
  InvalidRoot,
  NonTerminating,
  MemoryBudgetExceeded,
  DegenerateFit,
  DiscriminantMismatch,
  BadModulus,
  ConstraintViolation,
  SearchExhausted,
  HypothesisViolation,
  SeedNotPrime,
  BadQuadruple,
  DivisionByZero,
  PlacementUnavailable,
  IOError,
  InconsistentCase,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Overflow: return "OverflowError";
    case ErrorKind::InvalidRoot: return "InvalidRoot";
    case ErrorKind::NonTerminating: return "NonTerminating";
    case ErrorKind::MemoryBudgetExceeded: return "MemoryBudgetExceeded";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::DiscriminantMismatch: return "DiscriminantMismatch";
    case ErrorKind::BadModulus: return "BadModulus";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::SeedNotPrime: return "SeedNotPrime";
    case ErrorKind::BadQuadruple: return "BadQuadruple";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::PlacementUnavailable: return "PlacementUnavailable";
    case ErrorKind::IOError: return "IOError";
    case ErrorKind::InconsistentCase: return "InconsistentCase";
  }
  return "Error";
}

// Domain error carrying a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace acp
