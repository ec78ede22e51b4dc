#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "connsys/connectivity.hpp"
#include "connsys/decomposition.hpp"
#include "connsys/family.hpp"

namespace connsys {

enum class TheoremId {
  antichain_meets_ultrafilter,      // T3.5
  chain_exactly_one,                // T3.6
  maximal_set_exclusion,            // T3.8
  no_chain_no_ultrafilter,          // T3.9
  sequence_chain_no_antichain,      // TSC-no-antichain
  sequence_chain_no_ultrafilter,    // TSC-no-nonprincipal-ultrafilter
  sequence_chain_decomposition,     // TSC-decomposition
  nonprincipal_equivalences,        // T2.32-equivalence-list
  filter_is_cotangle,               // co-tangle-filter
};

std::string_view theorem_name(TheoremId id);
std::optional<TheoremId> parse_theorem(std::string_view name);
const std::vector<TheoremId>& all_theorems();

/// all | duality | dilworth | chains | families, or a comma-separated list of theorem names.
/// Throws InvalidParameter.
std::vector<TheoremId> theorem_selection(std::string_view spec);
/// Whether the selection string asks for width/obstruction duality checks too.
bool selection_includes_duality(std::string_view spec);

enum class AuditStatus { verified_at_scale, counterexample_found };
std::string_view audit_status_name(AuditStatus s);

struct AuditReport {
  TheoremId theorem = TheoremId::antichain_meets_ultrafilter;
  AuditStatus status = AuditStatus::verified_at_scale;
  Bound k;
  std::size_t n = 0;
  /// Sets exhibiting the counterexample (empty when verified).
  std::vector<Subset> witness;
  /// Families involved in the counterexample (ultrafilters, filters, tangles).
  std::vector<SetFamily> witness_families;
  /// Number of hypothesis instances examined.
  std::size_t instances = 0;
  /// True when the hypothesis never holds on the instance.
  bool vacuous = false;
  std::string note;
};

struct AuditOptions {
  unsigned workers = 1;
};

/// Exhaustively checks each selected theorem on the instance. Reports are returned in
/// theorem order. Throws size errors from the underlying enumerations.
std::vector<AuditReport> run_theorem_audit(const ConnectivitySystem& sys, Bound k,
                                           const std::vector<TheoremId>& theorems, const AuditOptions& opts = {});

/// Re-checks a counterexample against the literal theorem statement.
bool witness_reverifies(const ConnectivitySystem& sys, const AuditReport& report);

/// All antichains of the family that cannot be extended by another member, in
/// lexicographic order of their bitmask lists.
std::vector<std::vector<Subset>> maximal_antichains(const std::vector<Subset>& family);

/// Dilworth check on the non-empty k-efficient family.
struct DilworthResult {
  Bound k;
  std::vector<Subset> family;
  std::vector<Subset> antichain;
  std::vector<std::vector<Subset>> cover;
  /// Second, exhaustive cover size when the family has at most 16 members.
  std::optional<std::size_t> brute_force_cover;
  bool equal = false;
};
DilworthResult dilworth_check(const ConnectivitySystem& sys, Bound k);

}  // namespace connsys
