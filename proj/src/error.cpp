#include "grouplat/error.hpp"

namespace grouplat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::MalformedExponent: return "MalformedExponent";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::ArenaMismatch: return "ArenaMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::TrivialGenerator: return "TrivialGenerator";
    case ErrorKind::NotInSubgroup: return "NotInSubgroup";
    case ErrorKind::EmptyLanguage: return "EmptyLanguage";
    case ErrorKind::NondeterministicInput: return "NondeterministicInput";
    case ErrorKind::NonReducedLanguage: return "NonReducedLanguage";
    case ErrorKind::BothTrivial: return "BothTrivial";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InvalidPresentation: return "InvalidPresentation";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
      kind_(kind) {}

bool Error::is_parse_error() const noexcept {
  return kind_ == ErrorKind::UnknownGenerator ||
         kind_ == ErrorKind::MalformedExponent ||
         kind_ == ErrorKind::MalformedInput;
}

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t budget,
                               const std::string& what)
    : Error(ErrorKind::BudgetExceeded, what),
      required_(required),
      budget_(budget) {}

}  // namespace grouplat
