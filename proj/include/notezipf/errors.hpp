#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace notezipf {

enum class ErrorCode {
  // SMF decoding
  MissingHeader,
  InvalidHeader,
  TruncatedChunk,
  InvalidVlq,
  SmpteDivision,
  DanglingStatus,
  MalformedEvent,
  // corpus and statistics
  EmptyCorpus,
  InsufficientSupport,
  DegenerateTable,
  DecodeError,
  // numerics
  DomainError,
  NoRoot,
  BracketInvalid,
  NonConvergence,
  // configuration / IO
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure the library reports carries a machine-readable code so
/// callers (and the CLI report) can branch on the kind of failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace notezipf
