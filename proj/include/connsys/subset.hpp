#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace connsys {

/// Largest ground set the library stores densely (2^20 function values).
inline constexpr std::size_t kMaxGroundSize = 20;

/// A subset of an indexed ground set. Element i is bit i.
struct Subset {
  std::uint32_t bits = 0;

  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t b) : bits(b) {}

  static constexpr Subset empty() { return Subset{}; }
  static constexpr Subset full(std::size_t n) {
    return Subset{n >= 32 ? ~0u : ((1u << n) - 1u)};
  }
  static constexpr Subset singleton(std::size_t i) { return Subset{1u << i}; }

  constexpr bool contains(std::size_t i) const { return (bits >> i) & 1u; }
  constexpr Subset with(std::size_t i) const { return Subset{bits | (1u << i)}; }
  constexpr Subset without(std::size_t i) const { return Subset{bits & ~(1u << i)}; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits)); }
  constexpr bool is_empty() const { return bits == 0; }
  constexpr bool subset_of(Subset other) const { return (bits & ~other.bits) == 0; }
  constexpr bool comparable(Subset other) const { return subset_of(other) || other.subset_of(*this); }

  /// Complement relative to the full set of an n-element ground set.
  constexpr Subset complement(std::size_t n) const { return Subset{bits ^ full(n).bits}; }

  friend constexpr Subset operator&(Subset a, Subset b) { return Subset{a.bits & b.bits}; }
  friend constexpr Subset operator|(Subset a, Subset b) { return Subset{a.bits | b.bits}; }
  /// Set difference a \ b.
  friend constexpr Subset operator-(Subset a, Subset b) { return Subset{a.bits & ~b.bits}; }
  friend constexpr bool operator==(Subset, Subset) = default;
  friend constexpr auto operator<=>(Subset, Subset) = default;
};

/// Element indices of s in increasing order.
inline std::vector<std::size_t> elements_of(Subset s) {
  std::vector<std::size_t> out;
  for (std::uint32_t b = s.bits; b != 0; b &= b - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  }
  return out;
}

/// Calls fn(sub) for every subset of s (including empty and s), in increasing bitmask order.
template <class Fn>
void for_each_subset_of(Subset s, Fn&& fn) {
  // Gosper-free ascending submask walk: (sub - s) & s enumerates upward.
  std::uint32_t sub = 0;
  while (true) {
    fn(Subset{sub});
    if (sub == s.bits) break;
    sub = (sub - s.bits) & s.bits;
  }
}

/// Calls fn(sup) for every superset of s inside an n-element ground set, increasing bitmask order.
template <class Fn>
void for_each_superset_of(Subset s, std::size_t n, Fn&& fn) {
  const Subset rest = s.complement(n);
  for_each_subset_of(rest, [&](Subset extra) { fn(s | extra); });
}

}  // namespace connsys
