#include "connsys/error.hpp"

namespace connsys {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::SubmodularityViolation: return "SubmodularityViolation";
    case ErrorCode::NormalizationViolation: return "NormalizationViolation";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::GroundSetTooLarge: return "GroundSetTooLarge";
    case ErrorCode::GroundSetMismatch: return "GroundSetMismatch";
    case ErrorCode::GroundSetTooLargeForEnumeration: return "GroundSetTooLargeForEnumeration";
    case ErrorCode::GroundSetTooLargeForExhaustiveSearch: return "GroundSetTooLargeForExhaustiveSearch";
    case ErrorCode::NotAFilter: return "NotAFilter";
    case ErrorCode::NotASubbase: return "NotASubbase";
    case ErrorCode::BoundIncrease: return "BoundIncrease";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::EfficiencyEscape: return "EfficiencyEscape";
    case ErrorCode::ExtensionImpossible: return "ExtensionImpossible";
    case ErrorCode::MalformedTree: return "MalformedTree";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::NotASequenceChain: return "NotASequenceChain";
    case ErrorCode::NotSingleElement: return "NotSingleElement";
    case ErrorCode::ElementAlreadyPresent: return "ElementAlreadyPresent";
    case ErrorCode::ElementAbsent: return "ElementAbsent";
    case ErrorCode::ChainOrderBroken: return "ChainOrderBroken";
    case ErrorCode::EfficiencyViolation: return "EfficiencyViolation";
    case ErrorCode::NotKEfficient: return "NotKEfficient";
  }
  return "Unknown";
}

}  // namespace connsys
