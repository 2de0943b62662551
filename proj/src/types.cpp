#include "nk/types.hpp"

namespace nk {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::NotComplexStructure: return "NotComplexStructure";
    case ErrorCode::WrongOrientation: return "WrongOrientation";
    case ErrorCode::NotInAOMinus: return "NotInAOMinus";
    case ErrorCode::NonNegativeTau: return "NonNegativeTau";
    case ErrorCode::NotAlternating: return "NotAlternating";
    case ErrorCode::SingularSkewPart: return "SingularSkewPart";
    case ErrorCode::SingularFrame: return "SingularFrame";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::PoleAtHalf: return "PoleAtHalf";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InvalidMetric: return "InvalidMetric";
  }
  return "Unknown";
}

}  // namespace nk
