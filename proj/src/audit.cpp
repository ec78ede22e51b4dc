#include "connsys/audit.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <thread>

#include "connsys/construction.hpp"
#include "connsys/error.hpp"
#include "connsys/limits.hpp"
#include "connsys/order.hpp"

namespace connsys {

namespace {

struct TheoremInfo {
  TheoremId id;
  std::string_view name;
};

constexpr std::array kTheorems{
    TheoremInfo{TheoremId::antichain_meets_ultrafilter, "T3.5-antichain-meets-ultrafilter"},
    TheoremInfo{TheoremId::chain_exactly_one, "T3.6-exactly-one"},
    TheoremInfo{TheoremId::maximal_set_exclusion, "T3.8-maximal-set-exclusion"},
    TheoremInfo{TheoremId::no_chain_no_ultrafilter, "T3.9-no-chain-no-ultrafilter"},
    TheoremInfo{TheoremId::sequence_chain_no_antichain, "TSC-no-antichain"},
    TheoremInfo{TheoremId::sequence_chain_no_ultrafilter, "TSC-no-nonprincipal-ultrafilter"},
    TheoremInfo{TheoremId::sequence_chain_decomposition, "TSC-decomposition"},
    TheoremInfo{TheoremId::nonprincipal_equivalences, "T2.32-equivalence-list"},
    TheoremInfo{TheoremId::filter_is_cotangle, "co-tangle-filter"},
};

std::vector<SetFamily> ultrafilters(const ConnectivitySystem& sys, Bound k, Principality p) {
  EnumerationRequest req;
  req.kind = FamilyKind::ultrafilter;
  req.k = k;
  req.principality = p;
  return enumerate_families(sys, req);
}

std::string chain_text(const ConnectivitySystem& sys, const std::vector<Subset>& sets) {
  std::string out;
  for (Subset s : sets) {
    if (!out.empty()) out += " < ";
    out += "{" + sys.ground().encode(s) + "}";
  }
  return out;
}

std::vector<Subset> nonempty_efficient(const ConnectivitySystem& sys, Bound k) {
  std::vector<Subset> out;
  for (Subset s : enumerate_k_efficient(sys, k)) {
    if (!s.is_empty()) out.push_back(s);
  }
  return out;
}

std::size_t count_members(const SetFamily& u, const std::vector<Subset>& sets) {
  return static_cast<std::size_t>(std::count_if(sets.begin(), sets.end(), [&](Subset s) { return u.contains(s); }));
}

bool is_valid_sequence_chain(const ConnectivitySystem& sys, const std::vector<Subset>& sets, Bound k) {
  if (sets.size() < 2 || !sets.front().is_empty() || sets.back() != sys.full()) return false;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!sys.efficient(sets[i], k)) return false;
    if (i > 0 && (!sets[i - 1].subset_of(sets[i]) || (sets[i] - sets[i - 1]).size() != 1)) return false;
  }
  return true;
}

struct PropertyFailure {
  std::string property;
  Verdict verdict;
};

// The properties every non-principal ultrafilter is claimed to have, in report order.
std::optional<PropertyFailure> first_failed_property(const ConnectivitySystem& sys, const SetFamily& u) {
  const SetFamily co = complement_family(u);
  const std::vector<std::pair<std::string, std::function<Verdict()>>> checks = {
      {"co-tangle", [&] { return check_family(sys, co, FamilyKind::tangle); }},
      {"superfilter", [&] { return check_family(sys, u, FamilyKind::superfilter); }},
      {"closure system", [&] { return check_family(sys, u, FamilyKind::closure_system); }},
      {"sigma-filter", [&] { return check_family(sys, u, FamilyKind::sigma_filter); }},
      {"co-independence system", [&] { return check_family(sys, co, FamilyKind::independence_system); }},
      {"pi-system", [&] { return check_family(sys, u, FamilyKind::pi_system); }},
      {"weak ultrafilter",
       [&] {
         Verdict v = check_family(sys, u, FamilyKind::weak_filter);
         if (!v.holds) return v;
         const Verdict q4 = check_family(sys, u, FamilyKind::ultrafilter);
         if (!q4.holds && q4.violated_axiom == "Q4") return q4;
         return v;
       }},
  };
  for (const auto& [name, run] : checks) {
    Verdict v = run();
    if (!v.holds) return PropertyFailure{name, std::move(v)};
  }
  return std::nullopt;
}

class Auditor {
 public:
  Auditor(const ConnectivitySystem& sys, Bound k) : sys_(sys), k_(k) {}

  AuditReport run(TheoremId id) const {
    AuditReport r;
    r.theorem = id;
    r.k = k_;
    r.n = sys_.size();
    switch (id) {
      case TheoremId::antichain_meets_ultrafilter: antichain_meets(r); break;
      case TheoremId::chain_exactly_one: exactly_one(r); break;
      case TheoremId::maximal_set_exclusion: maximal_exclusion(r); break;
      case TheoremId::no_chain_no_ultrafilter: no_chain(r); break;
      case TheoremId::sequence_chain_no_antichain: seq_no_antichain(r); break;
      case TheoremId::sequence_chain_no_ultrafilter: seq_no_ultrafilter(r); break;
      case TheoremId::sequence_chain_decomposition: seq_decomposition(r); break;
      case TheoremId::nonprincipal_equivalences: equivalences(r); break;
      case TheoremId::filter_is_cotangle: cotangle(r); break;
    }
    return r;
  }

 private:
  static void fail(AuditReport& r, std::vector<Subset> witness, std::vector<SetFamily> families, std::string note) {
    r.status = AuditStatus::counterexample_found;
    r.witness = std::move(witness);
    r.witness_families = std::move(families);
    r.note = std::move(note);
  }

  void antichain_meets(AuditReport& r) const {
    limits::require(sys_.size(), limits::kAntichain, ErrorCode::GroundSetTooLargeForEnumeration, "antichain audit");
    const auto chains = maximal_antichains(nonempty_efficient(sys_, k_));
    const auto us = ultrafilters(sys_, k_, Principality::any);
    for (const SetFamily& u : us) {
      for (const auto& a : chains) {
        ++r.instances;
        if (count_members(u, a) == 0) {
          fail(r, a, {u}, "maximal antichain with no member in the ultrafilter");
          return;
        }
      }
    }
    r.note = std::to_string(chains.size()) + " maximal antichains x " + std::to_string(us.size()) + " ultrafilters";
  }

  void exactly_one(AuditReport& r) const {
    limits::require(sys_.size(), limits::kChainAudit, ErrorCode::GroundSetTooLargeForEnumeration, "chain audit");
    const auto eff = enumerate_k_efficient(sys_, k_);
    std::vector<std::vector<Subset>> chains;
    for (Subset a : eff) chains.push_back({a});
    for (Subset a : eff) {
      for (Subset b : eff) {
        if (a != b && a.subset_of(b)) chains.push_back({a, b});
      }
    }
    const auto us = ultrafilters(sys_, k_, Principality::any);
    std::array<std::size_t, 3> pattern{0, 0, 0};
    std::optional<std::pair<std::vector<Subset>, const SetFamily*>> zero, two;
    for (const SetFamily& u : us) {
      for (const auto& c : chains) {
        ++r.instances;
        const std::size_t m = count_members(u, c);
        ++pattern[m];
        if (m == 0 && !zero) zero.emplace(c, &u);
        if (m == 2 && !two) two.emplace(c, &u);
      }
    }
    const std::string counts = "chains of length <= 2: " + std::to_string(pattern[0]) + " with no member, " +
                               std::to_string(pattern[1]) + " with one, " + std::to_string(pattern[2]) + " with two";
    // Longer chains contain these as sub-chains, so "exactly one" over all chains fails iff it fails here.
    if (two) {
      fail(r, two->first, {*two->second}, "both sets of the chain are members; " + counts);
    } else if (zero) {
      fail(r, zero->first, {*zero->second}, "no set of the chain is a member; " + counts);
    } else {
      r.note = counts;
    }
  }

  void maximal_exclusion(AuditReport& r) const {
    if (k_.k == 0) {
      r.vacuous = true;
      r.note = "no ultrafilter of order 0 exists";
      return;
    }
    const Bound lower{k_.k - 1};
    const auto us = ultrafilters(sys_, lower, Principality::any);
    const auto eff = enumerate_k_efficient(sys_, k_);
    std::size_t restricted = 0;
    std::optional<std::pair<Subset, const SetFamily*>> hit;
    for (const SetFamily& u : us) {
      for (Subset a : eff) {
        ++r.instances;
        if (sys_.evaluate(a) == k_.k) ++restricted;
        if (u.contains(a) && !hit) hit.emplace(a, &u);
      }
    }
    const std::string tail = "; restricted reading (top value exactly k) holds in all " + std::to_string(restricted) +
                             " cases since such sets exceed the smaller order";
    if (hit) {
      fail(r, {hit->first}, {*hit->second}, "the top set of a chain is a member of an ultrafilter of order k" + tail);
    } else {
      r.note = "literal statement holds" + tail;
    }
  }

  void no_chain(AuditReport& r) const {
    // The one-set chain {empty set} is always k-efficient, so the hypothesis never holds.
    r.vacuous = true;
    r.note = "a chain of this order always exists (the empty set alone)";
  }

  void seq_no_antichain(AuditReport& r) const {
    const auto chain = find_sequence_chain(sys_, k_);
    if (!chain) {
      r.vacuous = true;
      r.note = "no single-element sequence chain of this order";
      return;
    }
    const auto eff = enumerate_k_efficient(sys_, k_);
    for (std::size_t i = 0; i < eff.size(); ++i) {
      for (std::size_t j = i + 1; j < eff.size(); ++j) {
        ++r.instances;
        if (!eff[i].comparable(eff[j])) {
          fail(r, {eff[i], eff[j]}, {}, "antichain coexists with sequence chain " + chain_text(sys_, chain->sets));
          return;
        }
      }
    }
    r.note = "sequence chain " + chain_text(sys_, chain->sets) + "; all k-efficient sets are comparable";
  }

  void seq_no_ultrafilter(AuditReport& r) const {
    const auto chain = find_sequence_chain(sys_, k_);
    if (!chain) {
      r.vacuous = true;
      r.note = "no single-element sequence chain of this order";
      return;
    }
    const auto us = ultrafilters(sys_, k_, Principality::non_principal_only);
    r.instances = us.size();
    if (!us.empty()) {
      fail(r, chain->sets, {us.front()}, "non-principal ultrafilter coexists with the sequence chain");
      return;
    }
    r.note = "sequence chain " + chain_text(sys_, chain->sets) + "; no non-principal ultrafilter";
  }

  void seq_decomposition(AuditReport& r) const {
    const auto chain = find_sequence_chain(sys_, k_);
    if (!chain) {
      r.vacuous = true;
      r.note = "no single-element sequence chain of this order";
      return;
    }
    const WidthResult bw = branch_width(sys_);
    r.instances = 1;
    if (bw.width > k_.k) {
      fail(r, chain->sets, {}, "branch-width is " + std::to_string(bw.width));
      return;
    }
    r.note = "branch-width " + std::to_string(bw.width);
  }

  void equivalences(AuditReport& r) const {
    const auto us = ultrafilters(sys_, k_, Principality::non_principal_only);
    r.instances = us.size();
    if (us.empty()) {
      r.vacuous = true;
      r.note = "no non-principal ultrafilter of this order";
      return;
    }
    for (const SetFamily& u : us) {
      if (auto bad = first_failed_property(sys_, u)) {
        fail(r, bad->verdict.witnesses, {u},
             "not a " + bad->property + " (violates " + bad->verdict.violated_axiom.value_or("?") + ")");
        return;
      }
    }
    r.note = "all listed properties hold";
  }

  void cotangle(AuditReport& r) const {
    limits::require(sys_.size(), limits::kChainAudit, ErrorCode::GroundSetTooLargeForEnumeration, "filter audit");
    EnumerationRequest req;
    req.kind = FamilyKind::filter;
    req.k = k_;
    const auto filters = enumerate_families(sys_, req);
    r.instances = filters.size();
    for (const SetFamily& f : filters) {
      const Verdict v = check_family(sys_, complement_family(f), FamilyKind::tangle);
      if (!v.holds) {
        fail(r, v.witnesses, {f}, "complement family is not a tangle (violates " + v.violated_axiom.value_or("?") + ")");
        return;
      }
    }
    r.note = std::to_string(filters.size()) + " filters, every complement family is a tangle";
  }

  const ConnectivitySystem& sys_;
  Bound k_;
};

}  // namespace

std::string_view theorem_name(TheoremId id) {
  for (const auto& t : kTheorems) {
    if (t.id == id) return t.name;
  }
  return "unknown";
}

std::optional<TheoremId> parse_theorem(std::string_view name) {
  for (const auto& t : kTheorems) {
    if (t.name == name) return t.id;
  }
  return std::nullopt;
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> out;
    for (const auto& t : kTheorems) out.push_back(t.id);
    return out;
  }();
  return ids;
}

std::vector<TheoremId> theorem_selection(std::string_view spec) {
  using T = TheoremId;
  if (spec == "all") return all_theorems();
  if (spec == "duality") return {T::sequence_chain_no_ultrafilter, T::sequence_chain_decomposition};
  if (spec == "dilworth") return {T::antichain_meets_ultrafilter, T::sequence_chain_no_antichain};
  if (spec == "chains") return {T::chain_exactly_one, T::maximal_set_exclusion, T::no_chain_no_ultrafilter};
  if (spec == "families") return {T::nonprincipal_equivalences, T::filter_is_cotangle};
  std::vector<TheoremId> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = spec.find(',', start);
    const std::string_view part = spec.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    auto id = parse_theorem(part);
    if (!id) throw Error(ErrorCode::InvalidParameter, "unknown theorem selection '" + std::string(part) + "'");
    if (std::find(out.begin(), out.end(), *id) == out.end()) out.push_back(*id);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool selection_includes_duality(std::string_view spec) { return spec == "all" || spec == "duality"; }

std::string_view audit_status_name(AuditStatus s) {
  return s == AuditStatus::verified_at_scale ? "verified_at_scale" : "counterexample_found";
}

std::vector<std::vector<Subset>> maximal_antichains(const std::vector<Subset>& family) {
  const std::size_t m = family.size();
  if (m > 64) throw Error(ErrorCode::InvalidParameter, "maximal antichain enumeration supports at most 64 sets");
  std::vector<std::uint64_t> incomparable(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && !family[i].comparable(family[j])) incomparable[i] |= std::uint64_t{1} << j;
    }
  }
  // Bron-Kerbosch with pivoting over the incomparability graph.
  std::vector<std::uint64_t> cliques;
  std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)> bk = [&](std::uint64_t r, std::uint64_t p,
                                                                            std::uint64_t x) {
    if (p == 0 && x == 0) {
      cliques.push_back(r);
      return;
    }
    const std::uint64_t px = p | x;
    std::size_t pivot = static_cast<std::size_t>(__builtin_ctzll(px));
    int best = -1;
    for (std::uint64_t rest = px; rest != 0; rest &= rest - 1) {
      const auto u = static_cast<std::size_t>(__builtin_ctzll(rest));
      const int deg = __builtin_popcountll(p & incomparable[u]);
      if (deg > best) {
        best = deg;
        pivot = u;
      }
    }
    for (std::uint64_t cand = p & ~incomparable[pivot]; cand != 0; cand &= cand - 1) {
      const auto v = static_cast<std::size_t>(__builtin_ctzll(cand));
      const std::uint64_t bit = std::uint64_t{1} << v;
      bk(r | bit, p & incomparable[v], x & incomparable[v]);
      p &= ~bit;
      x |= bit;
    }
  };
  const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  if (m > 0) bk(0, all, 0);
  std::vector<std::vector<Subset>> out;
  for (std::uint64_t c : cliques) {
    std::vector<Subset> sets;
    for (std::uint64_t rest = c; rest != 0; rest &= rest - 1) sets.push_back(family[static_cast<std::size_t>(__builtin_ctzll(rest))]);
    std::sort(sets.begin(), sets.end());
    out.push_back(std::move(sets));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AuditReport> run_theorem_audit(const ConnectivitySystem& sys, Bound k,
                                           const std::vector<TheoremId>& theorems, const AuditOptions& opts) {
  std::vector<TheoremId> ids = theorems;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const Auditor auditor(sys, k);
  std::vector<std::optional<AuditReport>> reports(ids.size());
  std::vector<std::exception_ptr> errors(ids.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < ids.size(); i = cursor++) {
      try {
        reports[i] = auditor.run(ids[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (opts.workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < opts.workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  std::vector<AuditReport> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*reports[i]));
  }
  return out;
}

bool witness_reverifies(const ConnectivitySystem& sys, const AuditReport& r) {
  if (r.status != AuditStatus::counterexample_found) return false;
  const Bound k = r.k;
  const auto ultra = [&](const SetFamily& u, Bound b) {
    return u.bound() == b && check_family(sys, u, FamilyKind::ultrafilter).holds;
  };
  switch (r.theorem) {
    case TheoremId::antichain_meets_ultrafilter: {
      if (r.witness_families.size() != 1 || !ultra(r.witness_families[0], k)) return false;
      const auto family = nonempty_efficient(sys, k);
      for (Subset s : r.witness) {
        if (s.is_empty() || !sys.efficient(s, k)) return false;
      }
      if (!is_antichain(r.witness)) return false;
      for (Subset b : family) {
        if (std::find(r.witness.begin(), r.witness.end(), b) != r.witness.end()) continue;
        auto ext = r.witness;
        ext.push_back(b);
        if (is_antichain(ext)) return false;
      }
      return count_members(r.witness_families[0], r.witness) == 0;
    }
    case TheoremId::chain_exactly_one: {
      if (r.witness_families.size() != 1 || !ultra(r.witness_families[0], k)) return false;
      try {
        make_chain(sys, r.witness, k);
      } catch (const Error&) {
        return false;
      }
      return count_members(r.witness_families[0], r.witness) != 1;
    }
    case TheoremId::maximal_set_exclusion: {
      if (k.k == 0 || r.witness.size() != 1 || r.witness_families.size() != 1) return false;
      return ultra(r.witness_families[0], Bound{k.k - 1}) && sys.efficient(r.witness[0], k) &&
             r.witness_families[0].contains(r.witness[0]);
    }
    case TheoremId::no_chain_no_ultrafilter: return false;
    case TheoremId::sequence_chain_no_antichain:
      return find_sequence_chain(sys, k).has_value() && r.witness.size() == 2 && sys.efficient(r.witness[0], k) &&
             sys.efficient(r.witness[1], k) && !r.witness[0].comparable(r.witness[1]);
    case TheoremId::sequence_chain_no_ultrafilter:
      return is_valid_sequence_chain(sys, r.witness, k) && r.witness_families.size() == 1 &&
             ultra(r.witness_families[0], k) &&
             classify_family(sys, r.witness_families[0]).non_principal == TriState::yes;
    case TheoremId::sequence_chain_decomposition:
      return is_valid_sequence_chain(sys, r.witness, k) && branch_width(sys).width > k.k;
    case TheoremId::nonprincipal_equivalences:
      return r.witness_families.size() == 1 && ultra(r.witness_families[0], k) &&
             classify_family(sys, r.witness_families[0]).non_principal == TriState::yes &&
             first_failed_property(sys, r.witness_families[0]).has_value();
    case TheoremId::filter_is_cotangle:
      return r.witness_families.size() == 1 && r.witness_families[0].bound() == k &&
             check_family(sys, r.witness_families[0], FamilyKind::filter).holds &&
             !check_family(sys, complement_family(r.witness_families[0]), FamilyKind::tangle).holds;
  }
  return false;
}

DilworthResult dilworth_check(const ConnectivitySystem& sys, Bound k) {
  limits::require(sys.size(), limits::kAntichain, ErrorCode::GroundSetTooLargeForEnumeration, "Dilworth check");
  DilworthResult d;
  d.k = k;
  d.family = nonempty_efficient(sys, k);
  d.antichain = max_antichain_of(d.family);
  for (auto& c : min_chain_cover(sys, d.family, k)) d.cover.push_back(std::move(c.sets));
  if (d.family.size() <= 16) d.brute_force_cover = brute_force_cover_size(d.family);
  d.equal = d.antichain.size() == d.cover.size() &&
            (!d.brute_force_cover || *d.brute_force_cover == d.cover.size());
  return d;
}

}  // namespace connsys
