#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chromatic {

// Machine-readable failure categories. The service maps these onto HTTP
// status codes and the CLI onto exit codes, so names are part of the wire
// format.
enum class ErrorCode {
  DimensionOutOfRange,
  EmptyIdSet,
  ResourceLimit,
  NotInComplex,
  NotASingleSubdivision,
  DimensionMismatch,
  EmbeddingFailed,
  LevelMismatch,
  BadFace,
  UnsatisfiedPostcondition,
  AmbiguousReplication,
  ForcedValencyViolated,
  RoundCapExceeded,
  RangeViolation,
  ClashViolation,
  ClaimFailed,
  UnsupportedN,
  NotASuccessor,
  GameOver,
  WrongPhase,
  StalePhase,
  NotSperner,
  InvalidKey,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorCode::EmptyIdSet: return "EmptyIdSet";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::NotInComplex: return "NotInComplex";
    case ErrorCode::NotASingleSubdivision: return "NotASingleSubdivision";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmbeddingFailed: return "EmbeddingFailed";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::BadFace: return "BadFace";
    case ErrorCode::UnsatisfiedPostcondition: return "UnsatisfiedPostcondition";
    case ErrorCode::AmbiguousReplication: return "AmbiguousReplication";
    case ErrorCode::ForcedValencyViolated: return "ForcedValencyViolated";
    case ErrorCode::RoundCapExceeded: return "RoundCapExceeded";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::ClashViolation: return "ClashViolation";
    case ErrorCode::ClaimFailed: return "ClaimFailed";
    case ErrorCode::UnsupportedN: return "UnsupportedN";
    case ErrorCode::NotASuccessor: return "NotASuccessor";
    case ErrorCode::GameOver: return "GameOver";
    case ErrorCode::WrongPhase: return "WrongPhase";
    case ErrorCode::StalePhase: return "StalePhase";
    case ErrorCode::NotSperner: return "NotSperner";
    case ErrorCode::InvalidKey: return "InvalidKey";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, std::string_view what) {
  if (!condition) [[unlikely]]
    fail(code, std::string(what));
}

}  // namespace chromatic
