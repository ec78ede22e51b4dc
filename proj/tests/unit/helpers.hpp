#pragma once

#include <doctest.h>

#include <string>
#include <vector>

#include "connsys/connectivity.hpp"
#include "connsys/error.hpp"
#include "connsys/family.hpp"

namespace connsys::testing {

inline ConnectivitySystem c4_edges() {
  return build_system(GroundSet({"e1", "e2", "e3", "e4"}), EdgeCutGraph{SimpleGraph{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}}});
}

inline ConnectivitySystem k4_edges() {
  return edge_cut_system(SimpleGraph{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}});
}

inline ConnectivitySystem zero_on(std::vector<std::string> labels) { return zero_system(GroundSet(std::move(labels))); }

/// Table from label-keyed values; keys use the ground set's comma encoding.
inline ConnectivitySystem table_system(std::vector<std::string> labels,
                                       const std::vector<std::pair<std::string, std::uint32_t>>& values) {
  GroundSet g(std::move(labels));
  TableFunction t;
  for (const auto& [key, v] : values) t.values.emplace_back(g.decode(key), v);
  return build_system(g, t);
}

inline Subset S(const ConnectivitySystem& sys, const std::string& key) { return sys.ground().decode(key); }

inline SetFamily F(const ConnectivitySystem& sys, std::uint32_t k, const std::vector<std::string>& keys) {
  std::vector<Subset> sets;
  for (const auto& key : keys) sets.push_back(S(sys, key));
  return SetFamily(sys.size(), Bound{k}, sets);
}

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidParameter;
}

template <class Fn>
Error error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::InvalidParameter, "");
}

}  // namespace connsys::testing
