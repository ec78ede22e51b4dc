#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "connsys/connectivity.hpp"
#include "connsys/subset.hpp"

namespace connsys {

/// An explicit finite family of subsets of an n-element ground set, with efficiency bound k.
/// Members are kept sorted by bitmask and unique; membership is a bitmap lookup.
class SetFamily {
 public:
  SetFamily(std::size_t ground_size, Bound k, std::vector<Subset> members = {});

  std::size_t ground_size() const { return n_; }
  Bound bound() const { return k_; }
  Subset full() const { return Subset::full(n_); }
  const std::vector<Subset>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Subset s) const { return (s.bits >> n_) == 0 && bitmap_[s.bits]; }
  bool includes(const SetFamily& other) const;

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.members_ == b.members_;
  }

 private:
  std::size_t n_;
  Bound k_;
  std::vector<Subset> members_;
  std::vector<bool> bitmap_;
};

enum class FamilyKind {
  filter,
  ultrafilter,
  weak_filter,
  quasi_filter,
  single_filter,
  single_ultrafilter,
  tangle,
  prefilter,
  ultra_prefilter,
  filter_subbase,
  ultrafilter_subbase,
  pi_system,
  lambda_system,
  superfilter,
  sigma_filter,
  closure_system,
  union_closed_system,
  independence_system,
  majority_system,
};

std::string_view kind_name(FamilyKind kind);
std::optional<FamilyKind> parse_kind(std::string_view name);
const std::vector<FamilyKind>& all_kinds();

/// The single-element deletion rule used by single filters.
enum class SingleMode { QS1, QSD1 };

/// Axiom labels checked for a kind, in the order they are evaluated.
std::vector<std::string> axiom_list(FamilyKind kind, SingleMode mode = SingleMode::QS1);

struct Verdict {
  bool holds = true;
  std::optional<std::string> violated_axiom;
  std::vector<Subset> witnesses;
  /// Three-wise intersection property (A & B & C non-empty); reported for filter and ultrafilter kinds.
  std::optional<bool> ft1;
};

enum class TriState { yes, no, vacuous };
std::string_view tri_state_name(TriState t);

struct FamilyFlags {
  /// Every k-efficient singleton is a member; vacuous when no singleton is k-efficient.
  TriState principal = TriState::vacuous;
  /// No singleton is a member (the quantifier ranges over all singletons of X).
  TriState non_principal = TriState::vacuous;
  /// Every member equals X.
  bool uniform = true;
};

/// Decides whether F satisfies every axiom of `kind` over sys at bound F.bound().
/// Reports the first violated axiom (fixed order) with lowest-bitmask witnesses.
/// Throws GroundSetMismatch, or GroundSetTooLarge for majority systems above the gate.
Verdict check_family(const ConnectivitySystem& sys, const SetFamily& f, FamilyKind kind,
                     SingleMode mode = SingleMode::QS1);

FamilyFlags classify_family(const ConnectivitySystem& sys, const SetFamily& f);

/// {X \ A : A in F}, same bound.
SetFamily complement_family(const SetFamily& f);

struct FipResult {
  /// Every finite intersection of members of F together with A is non-empty.
  bool fip = false;
  /// Whether fip agrees with the criterion "X \ A is not a member".
  bool criterion_agrees = true;
};

/// Throws NotAFilter when F is not a filter of its order.
FipResult fip_check(const ConnectivitySystem& sys, const SetFamily& f, Subset a);

/// Members with f(A) <= k_new. Throws BoundIncrease when k_new > F.bound().
SetFamily truncate_order(const ConnectivitySystem& sys, const SetFamily& f, Bound k_new);

/// Closure of `seed` under k-efficient intersections and k-efficient supersets.
/// Returns nullopt when the closure would contain the empty set.
std::optional<SetFamily> close_filter(const ConnectivitySystem& sys, const std::vector<Subset>& seed, Bound k);

}  // namespace connsys
