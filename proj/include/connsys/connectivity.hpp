#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "connsys/subset.hpp"

namespace connsys {

/// Ordered, labelled ground set. Element i corresponds to bit i of every Subset.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels);

  /// Labels "<prefix>1", "<prefix>2", ...; "<prefix>0"... when zero_based.
  static GroundSet numbered(std::size_t n, const std::string& prefix, bool zero_based = false);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> index_of(const std::string& label) const;
  Subset full() const { return Subset::full(size()); }

  /// Comma-joined labels in ground order; "" for the empty set.
  std::string encode(Subset s) const;
  /// Inverse of encode. Throws UnknownLabel.
  Subset decode(const std::string& key) const;
  Subset from_labels(const std::vector<std::string>& labels) const;

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  std::vector<std::string> labels_;
};

/// Value per subset, keyed by bitmask. Missing entries may be filled from the complement.
struct TableFunction {
  std::vector<std::pair<Subset, std::uint32_t>> values;
};

/// Simple undirected graph on vertices 0..vertices-1.
struct SimpleGraph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Ground set = edges; f(A) counts vertices touched by both A and E \ A.
struct EdgeCutGraph {
  SimpleGraph graph;
};

/// Ground set = vertices; f(A) counts edges crossing (A, V \ A).
struct VertexCutGraph {
  SimpleGraph graph;
};

using FunctionSpec = std::variant<TableFunction, EdgeCutGraph, VertexCutGraph>;

std::string_view spec_kind_name(const FunctionSpec& spec);

/// Upper bound k on member values; a family of order k+1.
struct Bound {
  std::uint32_t k = 0;
  constexpr std::uint32_t order() const { return k + 1; }
  friend constexpr bool operator==(Bound, Bound) = default;
  friend constexpr auto operator<=>(Bound, Bound) = default;
};

struct ValidationOptions {
  /// Seed for sampled submodularity checks on ground sets above the full-check limit.
  std::uint64_t seed = 0x5eed;
  std::size_t samples = 1'000'000;
};

/// A ground set with a validated symmetric submodular function, normalised so f(empty) = 0.
/// Immutable after construction; all values are stored densely.
class ConnectivitySystem {
 public:
  std::size_t size() const { return ground_.size(); }
  const GroundSet& ground() const { return ground_; }
  Subset full() const { return ground_.full(); }
  const FunctionSpec& spec() const { return spec_; }

  std::uint32_t evaluate(Subset a) const { return values_[a.bits]; }
  std::uint32_t operator()(Subset a) const { return values_[a.bits]; }
  bool efficient(Subset a, Bound k) const { return values_[a.bits] <= k.k; }
  Subset complement(Subset a) const { return a.complement(size()); }

  std::uint32_t max_value() const { return max_value_; }
  std::span<const std::uint32_t> values() const { return values_; }
  /// Seed used for sampled validation; empty when validation was exhaustive.
  std::optional<std::uint64_t> validation_seed() const { return validation_seed_; }

 private:
  friend ConnectivitySystem build_system(GroundSet, FunctionSpec, const ValidationOptions&);

  GroundSet ground_;
  FunctionSpec spec_;
  std::vector<std::uint32_t> values_;
  std::uint32_t max_value_ = 0;
  std::optional<std::uint64_t> validation_seed_;
};

/// Builds and validates a system. Throws SymmetryViolation, NormalizationViolation,
/// SubmodularityViolation (witness pair, lowest bitmask first), IncompleteTable,
/// GroundSetTooLarge or InvalidParameter.
ConnectivitySystem build_system(GroundSet ground, FunctionSpec spec, const ValidationOptions& opts = {});

/// Edge-cut system with default labels e1..em.
ConnectivitySystem edge_cut_system(const SimpleGraph& g);
/// Vertex-cut system with default labels v0..v(n-1).
ConnectivitySystem vertex_cut_system(const SimpleGraph& g);
/// f(A) = 0 for all A.
ConnectivitySystem zero_system(GroundSet ground);

/// All A with f(A) <= k, increasing bitmask order.
std::vector<Subset> enumerate_k_efficient(const ConnectivitySystem& sys, Bound k);

}  // namespace connsys
