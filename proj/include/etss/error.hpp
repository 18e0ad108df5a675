#pragma once

#include <stdexcept>
#include <string>

namespace etss {

// Machine-checkable failure kinds for every operation in the library.
enum class ErrorCode {
  // ring arithmetic
  InvalidModulus,
  InvalidTruncation,
  ModulusMismatch,
  ZeroPolynomial,
  NotDivisible,
  TruncationUnderflow,
  NonUnit,
  InconsistentSystem,
  DegreeBoundViolated,
  BadDigit,
  // codecs
  OutOfDomain,
  Malformed,
  Truncated,
  SymbolOutOfRange,
  BadTable,
  // scheme
  ParamMismatch,
  DuplicateParticipant,
  CodecMiss,
  NotEnoughShares,
  TooManyShares,
  InconsistentShares,
  RandomnessExhausted,
  BadRecord,
  InternalInvariantViolation,
  // secrecy oracle
  BudgetExceeded,
  DegenerateCodewords,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace etss
