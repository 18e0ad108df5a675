#include "etss/error.hpp"

namespace etss {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::InvalidTruncation: return "InvalidTruncation";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::TruncationUnderflow: return "TruncationUnderflow";
    case ErrorCode::NonUnit: return "NonUnit";
    case ErrorCode::InconsistentSystem: return "InconsistentSystem";
    case ErrorCode::DegreeBoundViolated: return "DegreeBoundViolated";
    case ErrorCode::BadDigit: return "BadDigit";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::Truncated: return "Truncated";
    case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::BadTable: return "BadTable";
    case ErrorCode::ParamMismatch: return "ParamMismatch";
    case ErrorCode::DuplicateParticipant: return "DuplicateParticipant";
    case ErrorCode::CodecMiss: return "CodecMiss";
    case ErrorCode::NotEnoughShares: return "NotEnoughShares";
    case ErrorCode::TooManyShares: return "TooManyShares";
    case ErrorCode::InconsistentShares: return "InconsistentShares";
    case ErrorCode::RandomnessExhausted: return "RandomnessExhausted";
    case ErrorCode::BadRecord: return "BadRecord";
    case ErrorCode::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DegenerateCodewords: return "DegenerateCodewords";
  }
  return "UnknownError";
}

}  // namespace etss
