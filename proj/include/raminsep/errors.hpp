#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace raminsep {

/// Failure categories raised by the library. Every mathematical precondition
/// failure maps to exactly one of these.
enum class ErrorKind {
  SingularSystem,
  InsufficientPrecision,
  DivisionByIndistinguishableZero,
  NotAPthPower,
  NotAUniformizer,
  KDivisibleByP,
  NotSingleBreak,
  DependentGenerators,
  DimensionMismatch,
  PreconditionViolated,
  EnumerationTooLarge,
  ReductionFailed,
  ResidualNonzero,
  ParseError,
  UnknownSymbol,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::DivisionByIndistinguishableZero: return "DivisionByIndistinguishableZero";
    case ErrorKind::NotAPthPower: return "NotAPthPower";
    case ErrorKind::NotAUniformizer: return "NotAUniformizer";
    case ErrorKind::KDivisibleByP: return "KDivisibleByP";
    case ErrorKind::NotSingleBreak: return "NotSingleBreak";
    case ErrorKind::DependentGenerators: return "DependentGenerators";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::ReductionFailed: return "ReductionFailed";
    case ErrorKind::ResidualNonzero: return "ResidualNonzero";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
  }
  return "Unknown";
}

class MathError : public std::runtime_error {
 public:
  MathError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures carry the byte offset into the input.
class ParseError : public MathError {
 public:
  ParseError(ErrorKind kind, std::size_t offset, const std::string& what)
      : MathError(kind, what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw MathError(kind, what); }

}  // namespace raminsep
