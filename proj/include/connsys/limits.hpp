#pragma once

#include <cstddef>
#include <string_view>

#include "connsys/error.hpp"

namespace connsys::limits {

// Default ground-set size gates for the exhaustive searches.
inline constexpr std::size_t kEnumeration = 8;
inline constexpr std::size_t kUltrafilterNumber = 6;
inline constexpr std::size_t kWidthSearch = 10;
inline constexpr std::size_t kAntichain = 5;
inline constexpr std::size_t kMajority = 8;
inline constexpr std::size_t kChainAudit = 5;
inline constexpr std::size_t kFullSubmodularCheck = 12;

/// Effective gate: CONNSYS_MAX_N, when set to a positive integer, replaces the default.
std::size_t effective(std::size_t default_gate);

/// Throws `code` when n exceeds the effective gate for `default_gate`.
void require(std::size_t n, std::size_t default_gate, ErrorCode code, std::string_view what);

}  // namespace connsys::limits
