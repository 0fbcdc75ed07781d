#pragma once

#include <stdexcept>
#include <string>

namespace symdist {

enum class ErrorKind {
  NotHermitian,
  NotPsd,
  InvalidState,
  DimensionMismatch,
  DimensionCap,
  ParameterRange,
  InvalidChannel,
  MTooSmall,
  NotMajorized,
  NotInfiniteResource,
  InfiniteResource,
  SolverFailure,
  Parse,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DimensionCap: return "DimensionCap";
    case ErrorKind::ParameterRange: return "ParameterRange";
    case ErrorKind::InvalidChannel: return "InvalidChannel";
    case ErrorKind::MTooSmall: return "MTooSmall";
    case ErrorKind::NotMajorized: return "NotMajorized";
    case ErrorKind::NotInfiniteResource: return "NotInfiniteResource";
    case ErrorKind::InfiniteResource: return "InfiniteResource";
    case ErrorKind::SolverFailure: return "SolverFailure";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace symdist
