#include "notezipf/errors.hpp"

namespace notezipf {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingHeader: return "MissingHeader";
    case ErrorCode::InvalidHeader: return "InvalidHeader";
    case ErrorCode::TruncatedChunk: return "TruncatedChunk";
    case ErrorCode::InvalidVlq: return "InvalidVlq";
    case ErrorCode::SmpteDivision: return "SmpteDivision";
    case ErrorCode::DanglingStatus: return "DanglingStatus";
    case ErrorCode::MalformedEvent: return "MalformedEvent";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::InsufficientSupport: return "InsufficientSupport";
    case ErrorCode::DegenerateTable: return "DegenerateTable";
    case ErrorCode::DecodeError: return "DecodeError";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::BracketInvalid: return "BracketInvalid";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace notezipf
