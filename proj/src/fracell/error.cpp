#include "fracell/error.hpp"

namespace fracell {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonConvergent: return "NonConvergent";
    case ErrorCode::kDomainOrder: return "DomainOrder";
    case ErrorCode::kWrongSign: return "WrongSign";
    case ErrorCode::kNotSmoothEnough: return "NotSmoothEnough";
    case ErrorCode::kNotAnalytic: return "NotAnalytic";
    case ErrorCode::kBranchCollision: return "BranchCollision";
    case ErrorCode::kDCUndefined: return "DCUndefined";
    case ErrorCode::kEdgeLeakage: return "EdgeLeakage";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotElliptic: return "NotElliptic";
    case ErrorCode::kNoRFound: return "NoRFound";
    case ErrorCode::kCutoffExceedsNyquist: return "CutoffExceedsNyquist";
    case ErrorCode::kTooFewBands: return "TooFewBands";
    case ErrorCode::kUnreliableEstimate: return "UnreliableEstimate";
    case ErrorCode::kUnknownCheckId: return "UnknownCheckId";
    case ErrorCode::kUnknownCatalogEntry: return "UnknownCatalogEntry";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kParametrixSingular: return "ParametrixSingular";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fracell
