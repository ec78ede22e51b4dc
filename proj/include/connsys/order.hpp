#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "connsys/connectivity.hpp"

namespace connsys {

/// Strictly increasing k-efficient sets.
struct Chain {
  std::vector<Subset> sets;
  Bound k;
  friend bool operator==(const Chain&, const Chain&) = default;
};

/// Pairwise incomparable k-efficient sets.
struct Antichain {
  std::vector<Subset> sets;
  Bound k;
  friend bool operator==(const Antichain&, const Antichain&) = default;
};

/// Checks strict inclusion (ChainOrderBroken) and efficiency (EfficiencyViolation).
Chain make_chain(const ConnectivitySystem& sys, std::vector<Subset> sets, Bound k);

bool is_antichain(const std::vector<Subset>& sets);

/// Maximum antichain of an arbitrary family via Konig's theorem on the comparability
/// bipartite graph. Members are returned in increasing bitmask order.
std::vector<Subset> max_antichain_of(std::vector<Subset> family);

/// Maximum antichain among the non-empty k-efficient sets.
/// Throws GroundSetTooLargeForEnumeration above the gate (default n <= 5).
Antichain find_max_antichain(const ConnectivitySystem& sys, Bound k);

/// Partition of the family into the fewest chains (minimum path cover of the inclusion
/// order through bipartite matching). Chains are listed by their smallest member.
/// Throws NotKEfficient, InvalidParameter (more than 64 sets).
std::vector<Chain> min_chain_cover(const ConnectivitySystem& sys, std::vector<Subset> family, Bound k);

/// Exhaustive minimum chain partition size, for families of at most 16 sets.
std::size_t brute_force_cover_size(const std::vector<Subset>& family);

/// Breadth-first search from the empty set to X through k-efficient sets. Single-element
/// mode adds one element per step; otherwise any non-empty step is allowed.
std::optional<Chain> find_sequence_chain(const ConnectivitySystem& sys, Bound k, bool single_element = true);

/// Appends A_m + {e}. Throws ElementAlreadyPresent, EfficiencyViolation.
Chain chain_extend_single(const ConnectivitySystem& sys, const Chain& chain, std::size_t e);

/// Removes e from the set at index (0-based) and re-validates the whole chain.
/// Throws ElementAbsent, ChainOrderBroken, EfficiencyViolation.
Chain chain_delete_single(const ConnectivitySystem& sys, const Chain& chain, std::size_t index, std::size_t e);

}  // namespace connsys
