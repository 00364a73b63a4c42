#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace fracell {

using cplx = std::complex<double>;

// Numeric values are part of the C API (see fracell.h) and must stay stable.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kNonConvergent = 2,
  kDomainOrder = 3,
  kWrongSign = 4,
  kNotSmoothEnough = 5,
  kNotAnalytic = 6,
  kBranchCollision = 7,
  kDCUndefined = 8,
  kEdgeLeakage = 9,
  kDimensionMismatch = 10,
  kNotElliptic = 11,
  kNoRFound = 12,
  kCutoffExceedsNyquist = 13,
  kTooFewBands = 14,
  kUnreliableEstimate = 15,
  kUnknownCheckId = 16,
  kUnknownCatalogEntry = 17,
  kParseError = 18,
  kIoError = 19,
  kParametrixSingular = 20,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  const char* name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace fracell
