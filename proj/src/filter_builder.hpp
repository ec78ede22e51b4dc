#pragma once

#include <cstdint>
#include <vector>

#include "connsys/connectivity.hpp"

namespace connsys::detail {

// A family kept closed under k-efficient intersections and k-efficient supersets.
// try_add either commits the closure of (current + A) or leaves the state untouched
// when that closure would contain the empty set.
class FilterBuilder {
 public:
  FilterBuilder(const ConnectivitySystem& sys, Bound k)
      : sys_(sys), k_(k), n_(sys.size()), in_(std::size_t{1} << sys.size(), 0) {}

  bool contains(Subset s) const { return in_[s.bits] != 0; }
  const std::vector<Subset>& members() const { return members_; }
  std::uint64_t operations() const { return ops_; }
  void count(std::uint64_t ops) { ops_ += ops; }

  bool try_add(Subset a) {
    if (contains(a)) return true;
    const std::size_t start = members_.size();
    std::size_t next = start;
    mark(a);
    while (next < members_.size()) {
      const Subset s = members_[next++];
      ++ops_;
      if (s.is_empty()) {
        rollback(start);
        return false;
      }
      for_each_superset_of(s, n_, [&](Subset t) {
        ++ops_;
        if (!contains(t) && sys_.efficient(t, k_)) mark(t);
      });
      // Every member strictly before s; pairs among later members are met when they are processed.
      for (std::size_t i = 0; i + 1 < next; ++i) {
        ++ops_;
        const Subset c = s & members_[i];
        if (!contains(c) && sys_.efficient(c, k_)) mark(c);
      }
    }
    return true;
  }

 private:
  void mark(Subset s) {
    in_[s.bits] = 1;
    members_.push_back(s);
  }
  void rollback(std::size_t start) {
    for (std::size_t i = start; i < members_.size(); ++i) in_[members_[i].bits] = 0;
    members_.resize(start);
  }

  const ConnectivitySystem& sys_;
  Bound k_;
  std::size_t n_;
  std::vector<std::uint8_t> in_;
  std::vector<Subset> members_;
  std::uint64_t ops_ = 0;
};

}  // namespace connsys::detail
