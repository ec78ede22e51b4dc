#include "connsys/family.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>

#include "connsys/error.hpp"
#include "connsys/limits.hpp"

namespace connsys {

SetFamily::SetFamily(std::size_t ground_size, Bound k, std::vector<Subset> members)
    : n_(ground_size), k_(k), members_(std::move(members)) {
  if (n_ == 0 || n_ > kMaxGroundSize) throw Error(ErrorCode::InvalidParameter, "family ground size out of range");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  bitmap_.assign(std::size_t{1} << n_, false);
  for (Subset s : members_) {
    if ((s.bits >> n_) != 0) throw Error(ErrorCode::GroundSetMismatch, "family member outside the ground set", {s});
    bitmap_[s.bits] = true;
  }
}

bool SetFamily::includes(const SetFamily& other) const {
  if (other.n_ != n_) return false;
  return std::all_of(other.members_.begin(), other.members_.end(), [&](Subset s) { return contains(s); });
}

namespace {

struct KindInfo {
  FamilyKind kind;
  std::string_view name;
};

constexpr std::array kKinds{
    KindInfo{FamilyKind::filter, "filter"},
    KindInfo{FamilyKind::ultrafilter, "ultrafilter"},
    KindInfo{FamilyKind::weak_filter, "weak_filter"},
    KindInfo{FamilyKind::quasi_filter, "quasi_filter"},
    KindInfo{FamilyKind::single_filter, "single_filter"},
    KindInfo{FamilyKind::single_ultrafilter, "single_ultrafilter"},
    KindInfo{FamilyKind::tangle, "tangle"},
    KindInfo{FamilyKind::prefilter, "prefilter"},
    KindInfo{FamilyKind::ultra_prefilter, "ultra_prefilter"},
    KindInfo{FamilyKind::filter_subbase, "filter_subbase"},
    KindInfo{FamilyKind::ultrafilter_subbase, "ultrafilter_subbase"},
    KindInfo{FamilyKind::pi_system, "pi_system"},
    KindInfo{FamilyKind::lambda_system, "lambda_system"},
    KindInfo{FamilyKind::superfilter, "superfilter"},
    KindInfo{FamilyKind::sigma_filter, "sigma_filter"},
    KindInfo{FamilyKind::closure_system, "closure_system"},
    KindInfo{FamilyKind::union_closed_system, "union_closed_system"},
    KindInfo{FamilyKind::independence_system, "independence_system"},
    KindInfo{FamilyKind::majority_system, "majority_system"},
};

using Witness = std::optional<std::vector<Subset>>;

// Literal quantification of each axiom over one family. Every check walks
// members and subsets in increasing bitmask order, so the first witness found
// is the lowest one.
class AxiomChecker {
 public:
  AxiomChecker(const ConnectivitySystem& sys, const SetFamily& f)
      : sys_(sys), f_(f), n_(sys.size()), k_(f.bound()), full_(sys.full()), m_(f.members()) {}

  bool eff(Subset s) const { return sys_.efficient(s, k_); }
  bool in(Subset s) const { return f_.contains(s); }

  Witness non_empty() const {
    if (m_.empty()) return std::vector<Subset>{};
    return std::nullopt;
  }

  Witness all_efficient() const {
    for (Subset a : m_) {
      if (!eff(a)) return std::vector{a};
    }
    return std::nullopt;
  }

  Witness intersection_closed() const {
    for (std::size_t i = 0; i < m_.size(); ++i) {
      for (std::size_t j = i; j < m_.size(); ++j) {
        const Subset c = m_[i] & m_[j];
        if (eff(c) && !in(c)) return std::vector{m_[i], m_[j]};
      }
    }
    return std::nullopt;
  }

  Witness union_closed() const {
    for (std::size_t i = 0; i < m_.size(); ++i) {
      for (std::size_t j = i; j < m_.size(); ++j) {
        const Subset c = m_[i] | m_[j];
        if (eff(c) && !in(c)) return std::vector{m_[i], m_[j]};
      }
    }
    return std::nullopt;
  }

  Witness upward_closed() const {
    for (Subset a : m_) {
      Witness w;
      for_each_superset_of(a, n_, [&](Subset b) {
        if (!w && eff(b) && !in(b)) w = std::vector{a, b};
      });
      if (w) return w;
    }
    return std::nullopt;
  }

  Witness excludes_empty() const {
    if (in(Subset::empty())) return std::vector{Subset::empty()};
    return std::nullopt;
  }

  Witness contains_empty() const {
    if (!in(Subset::empty())) return std::vector{Subset::empty()};
    return std::nullopt;
  }

  Witness contains_full() const {
    if (!in(full_)) return std::vector{full_};
    return std::nullopt;
  }

  // (Q4), (T2), (MA1): every k-efficient set or its complement is a member.
  Witness decides_every_pair() const {
    const std::uint32_t total = 1u << n_;
    for (std::uint32_t a = 0; a < total; ++a) {
      const Subset s{a};
      if (eff(s) && !in(s) && !in(s.complement(n_))) return std::vector{s};
    }
    return std::nullopt;
  }

  Witness weak_intersection() const {
    for (std::size_t i = 0; i < m_.size(); ++i) {
      for (std::size_t j = i; j < m_.size(); ++j) {
        const Subset c = m_[i] & m_[j];
        if (eff(c) && c.is_empty()) return std::vector{m_[i], m_[j]};
      }
    }
    return std::nullopt;
  }

  // A, B not members => A | B not a member. A violation needs a member C = A | B.
  Witness quasi_union() const {
    for (Subset c : m_) {
      Witness w;
      for_each_subset_of(c, [&](Subset a) {
        if (w || in(a)) return;
        for_each_superset_of(c - a, n_, [&](Subset b) {
          if (!w && b.subset_of(c) && !in(b)) w = std::vector{a, b, c};
        });
      });
      if (w) return w;
    }
    return std::nullopt;
  }

  Witness single_deletion(SingleMode mode) const {
    for (Subset a : m_) {
      for (std::size_t e = 0; e < n_; ++e) {
        const Subset single = Subset::singleton(e);
        if (mode == SingleMode::QS1 && !eff(single)) continue;
        const Subset reduced = a.without(e);
        if (eff(reduced) && !in(reduced)) return std::vector{a, single};
      }
    }
    return std::nullopt;
  }

  Witness no_three_cover() const {
    for (std::size_t i = 0; i < m_.size(); ++i) {
      for (std::size_t j = i; j < m_.size(); ++j) {
        const Subset need = full_ - (m_[i] | m_[j]);
        for (std::size_t l = j; l < m_.size(); ++l) {
          if (need.subset_of(m_[l])) return std::vector{m_[i], m_[j], m_[l]};
        }
      }
    }
    return std::nullopt;
  }

  Witness no_cosingleton() const {
    for (std::size_t e = 0; e < n_; ++e) {
      const Subset co = full_.without(e);
      if (in(co)) return std::vector{co};
    }
    return std::nullopt;
  }

  Witness downward_directed() const {
    for (std::size_t i = 0; i < m_.size(); ++i) {
      for (std::size_t j = i; j < m_.size(); ++j) {
        const Subset meet = m_[i] & m_[j];
        const bool found = std::any_of(m_.begin(), m_.end(), [&](Subset a) { return a.subset_of(meet) && eff(a); });
        if (!found) return std::vector{m_[i], m_[j]};
      }
    }
    return std::nullopt;
  }

  // (P4), (SB4): every k-efficient A has an efficient member inside A or inside X \ A.
  Witness meets_every_side() const {
    const std::uint32_t total = 1u << n_;
    for (std::uint32_t bits = 0; bits < total; ++bits) {
      const Subset a{bits};
      if (!eff(a)) continue;
      const Subset co = a.complement(n_);
      const bool found =
          std::any_of(m_.begin(), m_.end(), [&](Subset b) { return eff(b) && (b.subset_of(a) || b.subset_of(co)); });
      if (!found) return std::vector{a};
    }
    return std::nullopt;
  }

  Witness lambda_full() const {
    if (!in(full_) || !eff(full_)) return std::vector{full_};
    return std::nullopt;
  }

  Witness lambda_complement() const {
    for (Subset a : m_) {
      const Subset co = a.complement(n_);
      if (eff(co) && !in(co)) return std::vector{a, co};
    }
    return std::nullopt;
  }

  // Unions of pairwise-disjoint subcollections (two or more members).
  Witness lambda_disjoint_unions() const {
    Witness w;
    std::vector<Subset> picked;
    std::function<void(std::size_t, Subset)> dfs = [&](std::size_t start, Subset acc) {
      for (std::size_t i = start; i < m_.size() && !w; ++i) {
        if ((acc & m_[i]).bits != 0) continue;
        picked.push_back(m_[i]);
        const Subset u = acc | m_[i];
        if (picked.size() >= 2 && eff(u) && !in(u)) {
          w = std::vector{u, picked[0], picked[1]};
        }
        if (!w) dfs(i + 1, u);
        picked.pop_back();
      }
    };
    dfs(0, Subset::empty());
    return w;
  }

  Witness super_split() const {
    for (Subset c : m_) {
      Witness w;
      for_each_subset_of(c, [&](Subset a) {
        if (w || !eff(a) || in(a)) return;
        for_each_superset_of(c - a, n_, [&](Subset b) {
          if (!w && b.subset_of(c) && eff(b) && !in(b)) w = std::vector{a, b, c};
        });
      });
      if (w) return w;
    }
    return std::nullopt;
  }

  Witness sigma_intersections() const {
    const std::size_t total = std::size_t{1} << n_;
    std::vector<bool> seen(total, false);
    std::deque<Subset> queue;
    for (Subset a : m_) {
      seen[a.bits] = true;
      queue.push_back(a);
    }
    while (!queue.empty()) {
      const Subset x = queue.front();
      queue.pop_front();
      for (Subset m : m_) {
        const Subset y = x & m;
        if (!seen[y.bits]) {
          seen[y.bits] = true;
          queue.push_back(y);
        }
      }
    }
    for (std::uint32_t bits = 0; bits < total; ++bits) {
      const Subset s{bits};
      if (seen[bits] && eff(s) && !in(s)) return std::vector{s};
    }
    return std::nullopt;
  }

  Witness union_closed_contains_ends() const {
    if (!in(Subset::empty())) return std::vector{Subset::empty()};
    if (!in(full_)) return std::vector{full_};
    return std::nullopt;
  }

  Witness hereditary() const {
    for (Subset z : m_) {
      Witness w;
      for_each_subset_of(z, [&](Subset y) {
        if (!w && eff(y) && !in(y)) w = std::vector{z, y};
      });
      if (w) return w;
    }
    return std::nullopt;
  }

  Witness majority_disjoint() const {
    for (std::size_t i = 0; i < m_.size(); ++i) {
      for (std::size_t j = i; j < m_.size(); ++j) {
        if ((m_[i] & m_[j]).is_empty() && m_[j] != m_[i].complement(n_)) return std::vector{m_[i], m_[j]};
      }
    }
    return std::nullopt;
  }

  Witness majority_exchange() const {
    limits::require(n_, limits::kMajority, ErrorCode::GroundSetTooLargeForEnumeration, "majority-system check");
    for (Subset a : m_) {
      Witness w;
      const Subset outside = a.complement(n_);
      for_each_subset_of(a, [&](Subset removed) {
        if (w) return;
        for_each_subset_of(outside, [&](Subset added) {
          if (w || removed.size() > added.size()) return;
          const Subset t = (a - removed) | added;
          if (eff(t) && !in(t)) w = std::vector{a, removed, added};
        });
      });
      if (w) return w;
    }
    return std::nullopt;
  }

  bool ft1() const {
    for (std::size_t i = 0; i < m_.size(); ++i) {
      for (std::size_t j = i; j < m_.size(); ++j) {
        const Subset ij = m_[i] & m_[j];
        for (std::size_t l = j; l < m_.size(); ++l) {
          if ((ij & m_[l]).is_empty()) return false;
        }
      }
    }
    return true;
  }

  Witness run(std::string_view axiom, SingleMode mode) const {
    if (axiom == "non-empty" || axiom == "SB1" || axiom == "PI1") return non_empty();
    if (axiom == "Q0" || axiom == "T1" || axiom == "P2" || axiom == "SB3" || axiom == "SUF1") return all_efficient();
    if (axiom == "Q1" || axiom == "PI2" || axiom == "CL1") return intersection_closed();
    if (axiom == "Q2" || axiom == "SUF2" || axiom == "SIF2") return upward_closed();
    if (axiom == "Q3" || axiom == "P1" || axiom == "SB2") return excludes_empty();
    if (axiom == "Q4" || axiom == "T2" || axiom == "MA1") return decides_every_pair();
    if (axiom == "QW1'") return weak_intersection();
    if (axiom == "QQ1'") return quasi_union();
    if (axiom == "QS1" || axiom == "QSD1") return single_deletion(mode);
    if (axiom == "T3") return no_three_cover();
    if (axiom == "T4") return no_cosingleton();
    if (axiom == "P3") return downward_directed();
    if (axiom == "P4" || axiom == "SB4") return meets_every_side();
    if (axiom == "LA1") return lambda_full();
    if (axiom == "LA2") return lambda_complement();
    if (axiom == "LA3") return lambda_disjoint_unions();
    if (axiom == "SUF3") return super_split();
    if (axiom == "SIF1" || axiom == "CL2") return contains_full();
    if (axiom == "SIF3") return sigma_intersections();
    if (axiom == "UC1") return union_closed();
    if (axiom == "UC2") return union_closed_contains_ends();
    if (axiom == "IN1") return contains_empty();
    if (axiom == "IN2") return hereditary();
    if (axiom == "MA2") return majority_disjoint();
    if (axiom == "MA3") return majority_exchange();
    throw Error(ErrorCode::InvalidParameter, "unknown axiom " + std::string(axiom));
  }

 private:
  const ConnectivitySystem& sys_;
  const SetFamily& f_;
  std::size_t n_;
  Bound k_;
  Subset full_;
  const std::vector<Subset>& m_;
};

}  // namespace

std::string_view kind_name(FamilyKind kind) {
  for (const auto& info : kKinds) {
    if (info.kind == kind) return info.name;
  }
  return "unknown";
}

std::optional<FamilyKind> parse_kind(std::string_view name) {
  for (const auto& info : kKinds) {
    if (info.name == name) return info.kind;
  }
  // Accept hyphenated spellings too.
  std::string alt(name);
  std::replace(alt.begin(), alt.end(), '-', '_');
  for (const auto& info : kKinds) {
    if (info.name == alt) return info.kind;
  }
  return std::nullopt;
}

const std::vector<FamilyKind>& all_kinds() {
  static const std::vector<FamilyKind> kinds = [] {
    std::vector<FamilyKind> out;
    for (const auto& info : kKinds) out.push_back(info.kind);
    return out;
  }();
  return kinds;
}

std::vector<std::string> axiom_list(FamilyKind kind, SingleMode mode) {
  const std::string single = mode == SingleMode::QS1 ? "QS1" : "QSD1";
  switch (kind) {
    case FamilyKind::filter: return {"non-empty", "Q0", "Q1", "Q2", "Q3"};
    case FamilyKind::ultrafilter: return {"non-empty", "Q0", "Q1", "Q2", "Q3", "Q4"};
    case FamilyKind::weak_filter: return {"non-empty", "Q0", "QW1'", "Q2", "Q3"};
    case FamilyKind::quasi_filter: return {"non-empty", "Q0", "QQ1'", "Q2", "Q3"};
    case FamilyKind::single_filter: return {"non-empty", "Q0", single, "Q2", "Q3"};
    case FamilyKind::single_ultrafilter: return {"non-empty", "Q0", single, "Q2", "Q3", "Q4"};
    case FamilyKind::tangle: return {"non-empty", "T1", "T2", "T3", "T4"};
    case FamilyKind::prefilter: return {"non-empty", "P1", "P2", "P3"};
    case FamilyKind::ultra_prefilter: return {"non-empty", "P1", "P2", "P3", "P4"};
    case FamilyKind::filter_subbase: return {"SB1", "SB2", "SB3"};
    case FamilyKind::ultrafilter_subbase: return {"SB1", "SB2", "SB3", "SB4"};
    case FamilyKind::pi_system: return {"PI1", "PI2"};
    case FamilyKind::lambda_system: return {"LA1", "LA2", "LA3"};
    case FamilyKind::superfilter: return {"non-empty", "SUF1", "SUF2", "SUF3"};
    case FamilyKind::sigma_filter: return {"SIF1", "SIF2", "SIF3"};
    case FamilyKind::closure_system: return {"CL1", "CL2"};
    case FamilyKind::union_closed_system: return {"UC1", "UC2"};
    case FamilyKind::independence_system: return {"IN1", "IN2"};
    case FamilyKind::majority_system: return {"MA1", "MA2", "MA3"};
  }
  return {};
}

Verdict check_family(const ConnectivitySystem& sys, const SetFamily& f, FamilyKind kind, SingleMode mode) {
  if (sys.size() != f.ground_size()) {
    throw Error(ErrorCode::GroundSetMismatch, "family is over " + std::to_string(f.ground_size()) +
                                                  " elements but the system has " + std::to_string(sys.size()));
  }
  const AxiomChecker checker(sys, f);
  Verdict v;
  for (const auto& axiom : axiom_list(kind, mode)) {
    if (auto w = checker.run(axiom, mode)) {
      v.holds = false;
      v.violated_axiom = axiom;
      v.witnesses = std::move(*w);
      if (v.witnesses.size() > 3) v.witnesses.resize(3);
      break;
    }
  }
  if (kind == FamilyKind::filter || kind == FamilyKind::ultrafilter) v.ft1 = checker.ft1();
  return v;
}

std::string_view tri_state_name(TriState t) {
  switch (t) {
    case TriState::yes: return "yes";
    case TriState::no: return "no";
    case TriState::vacuous: return "vacuous";
  }
  return "vacuous";
}

FamilyFlags classify_family(const ConnectivitySystem& sys, const SetFamily& f) {
  if (sys.size() != f.ground_size()) throw Error(ErrorCode::GroundSetMismatch, "family and system ground sizes differ");
  FamilyFlags flags;
  bool any_efficient = false;
  bool all_efficient_in = true;
  bool any_singleton_in = false;
  for (std::size_t e = 0; e < sys.size(); ++e) {
    const Subset s = Subset::singleton(e);
    if (f.contains(s)) any_singleton_in = true;
    if (sys.efficient(s, f.bound())) {
      any_efficient = true;
      if (!f.contains(s)) all_efficient_in = false;
    }
  }
  flags.principal = !any_efficient ? TriState::vacuous : (all_efficient_in ? TriState::yes : TriState::no);
  flags.non_principal = any_singleton_in ? TriState::no : TriState::yes;
  flags.uniform = std::all_of(f.members().begin(), f.members().end(), [&](Subset a) { return a == f.full(); });
  return flags;
}

SetFamily complement_family(const SetFamily& f) {
  std::vector<Subset> out;
  out.reserve(f.size());
  for (Subset a : f.members()) out.push_back(a.complement(f.ground_size()));
  return SetFamily(f.ground_size(), f.bound(), std::move(out));
}

FipResult fip_check(const ConnectivitySystem& sys, const SetFamily& f, Subset a) {
  const Verdict v = check_family(sys, f, FamilyKind::filter);
  if (!v.holds) throw Error(ErrorCode::NotAFilter, "fip_check requires a filter (violates " + *v.violated_axiom + ")",
                            v.witnesses);
  // The smallest finite intersection is the intersection of everything.
  Subset meet = a;
  for (Subset m : f.members()) meet = meet & m;
  FipResult r;
  r.fip = !meet.is_empty();
  r.criterion_agrees = r.fip == !f.contains(a.complement(f.ground_size()));
  return r;
}

SetFamily truncate_order(const ConnectivitySystem& sys, const SetFamily& f, Bound k_new) {
  if (k_new > f.bound()) throw Error(ErrorCode::BoundIncrease, "truncation cannot raise the bound");
  if (sys.size() != f.ground_size()) throw Error(ErrorCode::GroundSetMismatch, "family and system ground sizes differ");
  std::vector<Subset> kept;
  for (Subset a : f.members()) {
    if (sys.efficient(a, k_new)) kept.push_back(a);
  }
  return SetFamily(f.ground_size(), k_new, std::move(kept));
}

std::optional<SetFamily> close_filter(const ConnectivitySystem& sys, const std::vector<Subset>& seed, Bound k) {
  const std::size_t n = sys.size();
  std::vector<bool> in(std::size_t{1} << n, false);
  std::vector<Subset> members;
  std::deque<Subset> queue;
  auto add = [&](Subset s) {
    if (in[s.bits]) return;
    in[s.bits] = true;
    members.push_back(s);
    queue.push_back(s);
  };
  for (Subset s : seed) {
    if (!sys.efficient(s, k)) throw Error(ErrorCode::NotKEfficient, "seed set exceeds the bound", {s});
    add(s);
  }
  while (!queue.empty()) {
    const Subset a = queue.front();
    queue.pop_front();
    if (a.is_empty()) return std::nullopt;
    for_each_superset_of(a, n, [&](Subset b) {
      if (sys.efficient(b, k)) add(b);
    });
    for (std::size_t i = 0; i < members.size(); ++i) {
      const Subset c = a & members[i];
      if (sys.efficient(c, k)) add(c);
    }
  }
  if (in[0]) return std::nullopt;
  return SetFamily(n, k, std::move(members));
}

}  // namespace connsys
