#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "connsys/connectivity.hpp"
#include "connsys/family.hpp"

namespace connsys {

enum class Principality { any, non_principal_only };

struct EnumerationRequest {
  /// ultrafilter, tangle, single_ultrafilter or filter.
  FamilyKind kind = FamilyKind::ultrafilter;
  Bound k;
  Principality principality = Principality::any;
  std::optional<std::size_t> limit;
  /// Deletion rule for single_ultrafilter.
  SingleMode mode = SingleMode::QS1;
  /// Sets forced into every result (each must be k-efficient).
  std::vector<Subset> seed;
  unsigned workers = 1;
};

/// Every family of the requested kind (up to limit), in canonical decision order:
/// complement pairs are decided in order of their lower bitmask, trying
/// "lower set in" before "complement in". Throws GroundSetTooLargeForEnumeration
/// above the enumeration gate, InvalidParameter for unsupported kinds or limit 0.
std::vector<SetFamily> enumerate_families(const ConnectivitySystem& sys, const EnumerationRequest& req);

/// Tukey extension: an ultrafilter of the same order containing F.
/// Undecided k-efficient sets are visited in increasing bitmask order; when both a set
/// and its complement keep the closure free of the empty set, the larger one is taken
/// (lower bitmask on ties). Throws NotAFilter, or ExtensionImpossible.
SetFamily extend_filter_to_ultrafilter(const ConnectivitySystem& sys, const SetFamily& f);

struct ConstructionResult {
  SetFamily family;
  /// Counted basic steps: intersection tests, superset visits, candidate visits.
  std::uint64_t operations = 0;
};

/// Three-step construction: list the k-efficient sets, grow a filter from the first
/// non-empty candidate, then extend it by deciding every remaining complement pair.
ConstructionResult construct_ultrafilter_counted(const ConnectivitySystem& sys, Bound k);
SetFamily construct_ultrafilter(const ConnectivitySystem& sys, Bound k);

/// Up-closure (within k-efficient sets) of the k-efficient finite intersections of S.
/// Throws NotASubbase, EmptyIntersection, EfficiencyEscape.
SetFamily generate_from_subbase(const ConnectivitySystem& sys, const SetFamily& s);

struct UltrafilterNumberResult {
  /// Smallest prefilter size generating a non-principal ultrafilter; empty means "none".
  std::optional<std::size_t> u;
  std::optional<SetFamily> witness_prefilter;
  std::optional<SetFamily> ultrafilter;
  /// Number of non-principal ultrafilters examined.
  std::size_t candidates = 0;
};

/// Throws GroundSetTooLargeForEnumeration above the gate (default n <= 6).
UltrafilterNumberResult ultrafilter_number(const ConnectivitySystem& sys, Bound k);

/// Efficient supersets of members, within bound k.
SetFamily up_closure(const ConnectivitySystem& sys, const std::vector<Subset>& sets, Bound k);

}  // namespace connsys
