#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twistzero {

enum class ErrorCode {
  Pole,
  Convergence,
  ZeroDenominator,
  NotCoprime,
  EvenDenominator,
  EvenInput,
  ZeroArgument,
  EvenP,
  NonIntegralPrefactor,
  Overflow,
  InsufficientTruncation,
  Parse,
  WeightMismatch,
  InvalidForm,
  CosineZero,
  HypothesisViolation,
  RealnessViolation,
  LostBracket,
  SelfCheckFailed,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Pole: return "PoleError";
    case ErrorCode::Convergence: return "ConvergenceError";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::EvenDenominator: return "EvenDenominator";
    case ErrorCode::EvenInput: return "EvenInput";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::EvenP: return "EvenP";
    case ErrorCode::NonIntegralPrefactor: return "NonIntegralPrefactor";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InsufficientTruncation: return "InsufficientTruncation";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::WeightMismatch: return "WeightMismatch";
    case ErrorCode::InvalidForm: return "InvalidForm";
    case ErrorCode::CosineZero: return "CosineZero";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::RealnessViolation: return "RealnessViolation";
    case ErrorCode::LostBracket: return "LostBracket";
    case ErrorCode::SelfCheckFailed: return "SelfCheckFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "IoError";
  }
  return "Error";
}

}  // namespace twistzero
