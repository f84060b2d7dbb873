#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace grouplat {

enum class ErrorKind {
  UnknownGenerator,
  MalformedExponent,
  MalformedInput,
  AlphabetMismatch,
  ArenaMismatch,
  LengthMismatch,
  TrivialGenerator,
  NotInSubgroup,
  EmptyLanguage,
  NondeterministicInput,
  NonReducedLanguage,
  BothTrivial,
  BudgetExceeded,
  InvalidPresentation,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Recoverable failure raised by library operations. Internal invariant
/// violations use std::logic_error instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

  /// True for errors caused by malformed text input (as opposed to
  /// well-formed input that violates an operation's precondition).
  bool is_parse_error() const noexcept;

 private:
  ErrorKind kind_;
};

/// Raised when an expansion or enumeration would exceed its budget. Carries
/// the size that was actually required, when known.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget,
                 const std::string& what);

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

}  // namespace grouplat
