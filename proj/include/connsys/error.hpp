#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "connsys/subset.hpp"

namespace connsys {

enum class ErrorCode {
  InvalidParameter,
  ParseError,
  UnknownLabel,
  SymmetryViolation,
  SubmodularityViolation,
  NormalizationViolation,
  IncompleteTable,
  GroundSetTooLarge,
  GroundSetMismatch,
  GroundSetTooLargeForEnumeration,
  GroundSetTooLargeForExhaustiveSearch,
  NotAFilter,
  NotASubbase,
  BoundIncrease,
  EmptyIntersection,
  EfficiencyEscape,
  ExtensionImpossible,
  MalformedTree,
  NotAPermutation,
  NotASequenceChain,
  NotSingleElement,
  ElementAlreadyPresent,
  ElementAbsent,
  ChainOrderBroken,
  EfficiencyViolation,
  NotKEfficient,
};

std::string_view code_name(ErrorCode code);

/// Library error. Carries a machine-readable code and, where the failure is
/// witnessed by concrete subsets, those subsets (lowest bitmask first).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<Subset> witnesses = {})
      : std::runtime_error(std::string(code_name(code)) + ": " + message),
        code_(code),
        witnesses_(std::move(witnesses)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<Subset>& witnesses() const noexcept { return witnesses_; }

 private:
  ErrorCode code_;
  std::vector<Subset> witnesses_;
};

}  // namespace connsys
