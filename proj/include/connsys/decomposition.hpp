#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "connsys/connectivity.hpp"
#include "connsys/family.hpp"

namespace connsys {

/// Tree stored as a parent array (one root with parent -1). Leaves carry the element
/// they represent; internal nodes carry nothing.
struct BranchDecomposition {
  std::vector<int> parent;
  std::vector<std::optional<std::size_t>> leaf;

  std::size_t node_count() const { return parent.size(); }
  friend bool operator==(const BranchDecomposition&, const BranchDecomposition&) = default;
};

/// A permutation of the ground set, by element index.
struct LinearOrdering {
  std::vector<std::size_t> order;
  friend bool operator==(const LinearOrdering&, const LinearOrdering&) = default;
};

using Certificate = std::variant<BranchDecomposition, LinearOrdering>;

struct WidthResult {
  std::uint32_t width = 0;
  Certificate certificate;
};

/// Maximum over tree edges of f(one side). Throws MalformedTree.
std::uint32_t decomposition_width(const ConnectivitySystem& sys, const BranchDecomposition& d);

/// Exact branch-width by exhaustive leaf insertion over all ternary trees.
/// Throws GroundSetTooLargeForExhaustiveSearch above the gate (default n <= 10).
WidthResult branch_width(const ConnectivitySystem& sys, unsigned workers = 1);

/// Exact linear width: max of prefix values and singleton values, minimised over orderings.
/// The certificate is the lexicographically smallest optimal ordering.
WidthResult linear_width(const ConnectivitySystem& sys);

/// Throws NotAPermutation.
std::uint32_t ordering_width(const ConnectivitySystem& sys, const LinearOrdering& ord);

/// Caterpillar tree whose spine edges induce the prefixes of the ordering.
BranchDecomposition caterpillar(const LinearOrdering& ord);

/// Element sets on the child side of every non-root node, indexed by node.
std::vector<Subset> subtree_sets(const BranchDecomposition& d, std::size_t n);

enum class DualityKind { ultrafilter, tangle, single_ultrafilter };
std::string_view duality_kind_name(DualityKind kind);

struct DualityVerdict {
  DualityKind kind = DualityKind::ultrafilter;
  Bound k;
  std::uint32_t width = 0;
  /// width <= k
  bool width_side = false;
  /// no obstruction of order k+1 exists
  bool obstruction_side = false;
  bool consistent = false;
  /// An obstruction found when one exists.
  std::optional<SetFamily> obstruction;
  /// The width certificate (always produced).
  std::optional<WidthResult> certificate;
};

/// Computes both sides independently: branch width (linear width for single_ultrafilter)
/// and existence of a non-principal ultrafilter, a tangle, or a non-principal
/// single-ultrafilter of order k+1.
DualityVerdict duality_audit(const ConnectivitySystem& sys, Bound k, DualityKind kind, unsigned workers = 1);

/// The linear decomposition (element addition order) of a single-element sequence chain
/// from the empty set to X; `caterpillar` turns its certificate into a tree.
/// With a declared bound every chain member must satisfy f <= k.
/// Throws NotASequenceChain, NotSingleElement.
WidthResult chain_to_decomposition(const ConnectivitySystem& sys, const std::vector<Subset>& chain,
                                   std::optional<Bound> declared = std::nullopt);

}  // namespace connsys
