#include "connsys/construction.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <thread>

#include "connsys/error.hpp"
#include "connsys/limits.hpp"
#include "filter_builder.hpp"

namespace connsys {

namespace {

enum : std::uint8_t { kUnknown = 0, kIn = 1, kOut = 2, kIneligible = 3 };

struct Node {
  std::vector<std::uint8_t> state;
  std::vector<Subset> in;
};

// Backtracking over in/out decisions for k-efficient sets. Propagation only applies
// consequences forced by the axioms, so every complete assignment that survives is
// re-verified with check_family and no valid family is pruned.
class FamilySearch {
 public:
  FamilySearch(const ConnectivitySystem& sys, const EnumerationRequest& req)
      : sys_(sys), req_(req), n_(sys.size()), full_(sys.full()), k_(req.k) {
    switch (req.kind) {
      case FamilyKind::ultrafilter:
      case FamilyKind::filter:
        upward_ = true;
        intersections_ = true;
        break;
      case FamilyKind::single_ultrafilter:
        upward_ = true;
        single_ = true;
        break;
      case FamilyKind::tangle: tangle_ = true; break;
      default: throw Error(ErrorCode::InvalidParameter, "enumeration supports ultrafilter, tangle, single_ultrafilter and filter");
    }
    pairs_ = req.kind != FamilyKind::filter;
  }

  std::optional<Node> root() const {
    Node node;
    node.state.assign(std::size_t{1} << n_, kIneligible);
    for (std::uint32_t a = 0; a < node.state.size(); ++a) {
      if (eff(Subset{a})) node.state[a] = kUnknown;
    }
    std::deque<Subset> queue;
    bool ok = true;
    if (tangle_) {
      ok = ok && assign(node, full_, kOut, queue);
      for (std::size_t e = 0; e < n_ && ok; ++e) {
        const Subset co = full_.without(e);
        if (eff(co)) ok = assign(node, co, kOut, queue);
      }
    } else {
      ok = ok && assign(node, Subset::empty(), kOut, queue) && assign(node, full_, kIn, queue);
    }
    if (req_.principality == Principality::non_principal_only) {
      for (std::size_t e = 0; e < n_ && ok; ++e) {
        const Subset s = Subset::singleton(e);
        if (eff(s)) ok = assign(node, s, kOut, queue);
      }
    }
    for (Subset s : req_.seed) {
      if (!ok) break;
      if (!eff(s)) throw Error(ErrorCode::NotKEfficient, "seed set exceeds the bound", {s});
      ok = assign(node, s, kIn, queue);
    }
    if (!ok || !propagate(node, queue)) return std::nullopt;
    return node;
  }

  // Children of an undecided node in canonical order; empty when the node is complete.
  std::vector<Node> expand(const Node& node) const {
    std::vector<Node> out;
    const auto pick = next_decision(node);
    if (!pick) return out;
    const Subset a = *pick;
    if (pairs_) {
      const Subset c = a.complement(n_);
      try_child(node, {{a, kIn}, {c, kOut}}, out);
      try_child(node, {{a, kOut}, {c, kIn}}, out);
      if (single_) try_child(node, {{a, kIn}, {c, kIn}}, out);
    } else {
      try_child(node, {{a, kIn}}, out);
      try_child(node, {{a, kOut}}, out);
    }
    return out;
  }

  bool complete(const Node& node) const { return !next_decision(node).has_value(); }

  // Depth-first enumeration below node, appending verified families in order.
  void run(const Node& node, std::vector<SetFamily>& out, std::size_t cap) const {
    if (out.size() >= cap) return;
    if (complete(node)) {
      SetFamily fam(n_, k_, node.in);
      const FamilyKind check_kind = req_.kind;
      if (check_family(sys_, fam, check_kind, req_.mode).holds) out.push_back(std::move(fam));
      return;
    }
    for (const Node& child : expand(node)) {
      run(child, out, cap);
      if (out.size() >= cap) return;
    }
  }

 private:
  bool eff(Subset s) const { return sys_.efficient(s, k_); }
  bool single_rule(std::size_t e) const {
    return req_.mode == SingleMode::QSD1 || eff(Subset::singleton(e));
  }

  std::optional<Subset> next_decision(const Node& node) const {
    for (std::uint32_t a = 0; a < node.state.size(); ++a) {
      if (pairs_) {
        const std::uint32_t c = a ^ full_.bits;
        if (a > c) continue;
        if (node.state[a] == kUnknown || node.state[c] == kUnknown) return Subset{a};
      } else if (node.state[a] == kUnknown) {
        return Subset{a};
      }
    }
    return std::nullopt;
  }

  void try_child(const Node& node, std::initializer_list<std::pair<Subset, std::uint8_t>> moves,
                 std::vector<Node>& out) const {
    Node child = node;
    std::deque<Subset> queue;
    for (auto [s, v] : moves) {
      if (!assign(child, s, v, queue)) return;
    }
    if (propagate(child, queue)) out.push_back(std::move(child));
  }

  bool assign(Node& node, Subset s, std::uint8_t v, std::deque<Subset>& queue) const {
    std::uint8_t& cur = node.state[s.bits];
    if (cur == v) return true;
    if (cur == kIneligible) return v == kOut;
    if (cur != kUnknown) return false;
    cur = v;
    if (v == kIn) node.in.push_back(s);
    queue.push_back(s);
    return true;
  }

  bool propagate(Node& node, std::deque<Subset>& queue) const {
    while (!queue.empty()) {
      const Subset s = queue.front();
      queue.pop_front();
      if (node.state[s.bits] == kIn ? !on_in(node, s, queue) : !on_out(node, s, queue)) return false;
    }
    // Keep member lists sorted so that leaves produce identical families regardless of path.
    std::sort(node.in.begin(), node.in.end());
    return true;
  }

  bool on_in(Node& node, Subset s, std::deque<Subset>& queue) const {
    bool ok = true;
    if (upward_) {
      for_each_superset_of(s, n_, [&](Subset t) {
        if (ok && eff(t)) ok = assign(node, t, kIn, queue);
      });
    }
    if (!ok) return false;
    if (intersections_ || tangle_) {
      if (pairs_ && !assign(node, s.complement(n_), kOut, queue)) return false;
    }
    if (intersections_) {
      const std::vector<Subset> current = node.in;
      for (Subset m : current) {
        const Subset c = s & m;
        if (eff(c) && !assign(node, c, kIn, queue)) return false;
      }
    }
    if (single_) {
      for (std::size_t e : elements_of(s)) {
        const Subset r = s.without(e);
        if (single_rule(e) && eff(r) && !assign(node, r, kIn, queue)) return false;
      }
    }
    if (tangle_) {
      const std::vector<Subset> current = node.in;
      for (Subset m : current) {
        const Subset need = full_ - (s | m);
        for_each_superset_of(need, n_, [&](Subset c) {
          if (ok && eff(c)) ok = assign(node, c, kOut, queue);
        });
        if (!ok) return false;
      }
    }
    return true;
  }

  bool on_out(Node& node, Subset s, std::deque<Subset>& queue) const {
    if (pairs_ && !assign(node, s.complement(n_), kIn, queue)) return false;
    bool ok = true;
    if (upward_) {
      for_each_subset_of(s, [&](Subset t) {
        if (ok && eff(t)) ok = assign(node, t, kOut, queue);
      });
    }
    if (!ok) return false;
    if (single_) {
      for (std::size_t e = 0; e < n_; ++e) {
        if (s.contains(e)) continue;
        const Subset t = s.with(e);
        if (single_rule(e) && eff(t) && !assign(node, t, kOut, queue)) return false;
      }
    }
    return true;
  }

  const ConnectivitySystem& sys_;
  const EnumerationRequest& req_;
  std::size_t n_;
  Subset full_;
  Bound k_;
  bool upward_ = false;
  bool intersections_ = false;
  bool single_ = false;
  bool tangle_ = false;
  bool pairs_ = true;
};

std::vector<SetFamily> run_search(const ConnectivitySystem& sys, const EnumerationRequest& req) {
  limits::require(sys.size(), limits::kEnumeration, ErrorCode::GroundSetTooLargeForEnumeration, "family enumeration");
  if (req.limit && *req.limit == 0) throw Error(ErrorCode::InvalidParameter, "limit must be at least 1");
  const FamilySearch search(sys, req);
  std::vector<SetFamily> out;
  const std::size_t cap = req.limit.value_or(SIZE_MAX);
  auto root = search.root();
  if (!root) return out;
  if (req.workers <= 1) {
    search.run(*root, out, cap);
    return out;
  }

  // Expand breadth-first, keeping canonical order, until there is enough work to share.
  std::vector<Node> frontier{std::move(*root)};
  const std::size_t want = std::size_t{req.workers} * 4;
  for (int depth = 0; depth < 12 && frontier.size() < want; ++depth) {
    std::vector<Node> next;
    bool grew = false;
    for (Node& node : frontier) {
      if (search.complete(node)) {
        next.push_back(std::move(node));
        continue;
      }
      auto kids = search.expand(node);
      grew = true;
      for (Node& kid : kids) next.push_back(std::move(kid));
    }
    frontier = std::move(next);
    if (!grew) break;
  }

  std::vector<std::vector<SetFamily>> parts(frontier.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < frontier.size(); i = cursor++) search.run(frontier[i], parts[i], cap);
  };
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < req.workers; ++w) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  for (auto& part : parts) {
    for (auto& fam : part) {
      if (out.size() >= cap) break;
      out.push_back(std::move(fam));
    }
  }
  return out;
}

SetFamily require_filter(const ConnectivitySystem& sys, const SetFamily& f) {
  const Verdict v = check_family(sys, f, FamilyKind::filter);
  if (!v.holds) {
    throw Error(ErrorCode::NotAFilter, "input family is not a filter (violates " + *v.violated_axiom + ")", v.witnesses);
  }
  return f;
}

// Decides every undecided complement pair, preferring the larger side.
bool decide_pairs(const ConnectivitySystem& sys, Bound k, detail::FilterBuilder& builder) {
  const std::size_t n = sys.size();
  const std::uint32_t total = 1u << n;
  for (std::uint32_t bits = 0; bits < total; ++bits) {
    builder.count(1);
    const Subset a{bits};
    const Subset c = a.complement(n);
    if (!sys.efficient(a, k) || builder.contains(a) || builder.contains(c)) continue;
    const bool a_first = a.size() > c.size() || (a.size() == c.size() && a.bits < c.bits);
    const Subset first = a_first ? a : c;
    const Subset second = a_first ? c : a;
    if (!builder.try_add(first) && !builder.try_add(second)) return false;
  }
  return true;
}

}  // namespace

std::vector<SetFamily> enumerate_families(const ConnectivitySystem& sys, const EnumerationRequest& req) {
  return run_search(sys, req);
}

SetFamily extend_filter_to_ultrafilter(const ConnectivitySystem& sys, const SetFamily& f) {
  if (sys.size() != f.ground_size()) throw Error(ErrorCode::GroundSetMismatch, "family and system ground sizes differ");
  require_filter(sys, f);
  const Bound k = f.bound();
  detail::FilterBuilder builder(sys, k);
  bool ok = true;
  for (Subset s : f.members()) ok = ok && builder.try_add(s);
  if (ok && decide_pairs(sys, k, builder)) {
    SetFamily out(sys.size(), k, builder.members());
    if (check_family(sys, out, FamilyKind::ultrafilter).holds) return out;
  }
  // The greedy pass reached a state where neither side of some pair fits; fall back to search.
  EnumerationRequest req;
  req.kind = FamilyKind::ultrafilter;
  req.k = k;
  req.limit = 1;
  req.seed = f.members();
  auto found = enumerate_families(sys, req);
  if (found.empty()) throw Error(ErrorCode::ExtensionImpossible, "no ultrafilter of this order contains the filter");
  return found.front();
}

ConstructionResult construct_ultrafilter_counted(const ConnectivitySystem& sys, Bound k) {
  const std::size_t n = sys.size();
  const std::uint32_t total = 1u << n;
  detail::FilterBuilder builder(sys, k);

  // Step 1: candidate list.
  std::vector<Subset> candidates;
  for (std::uint32_t bits = 0; bits < total; ++bits) {
    builder.count(1);
    if (sys.efficient(Subset{bits}, k)) candidates.push_back(Subset{bits});
  }

  // Step 2: grow a filter from the first non-empty candidate.
  bool started = false;
  for (Subset a : candidates) {
    builder.count(1);
    if (a.is_empty()) continue;
    if (!started) {
      started = builder.try_add(a);
      continue;
    }
    if (builder.contains(a)) continue;
    bool pairwise = true;
    for (Subset b : builder.members()) {
      builder.count(1);
      if (!sys.efficient(a & b, k)) {
        pairwise = false;
        break;
      }
    }
    if (pairwise) builder.try_add(a);
  }

  // Step 3: decide every remaining pair.
  if (decide_pairs(sys, k, builder)) {
    SetFamily out(n, k, builder.members());
    if (check_family(sys, out, FamilyKind::ultrafilter).holds) return {std::move(out), builder.operations()};
  }
  EnumerationRequest req;
  req.kind = FamilyKind::ultrafilter;
  req.k = k;
  req.limit = 1;
  auto found = enumerate_families(sys, req);
  if (found.empty()) throw Error(ErrorCode::ExtensionImpossible, "no ultrafilter of this order exists");
  return {found.front(), builder.operations()};
}

SetFamily construct_ultrafilter(const ConnectivitySystem& sys, Bound k) {
  return construct_ultrafilter_counted(sys, k).family;
}

SetFamily up_closure(const ConnectivitySystem& sys, const std::vector<Subset>& sets, Bound k) {
  const std::size_t n = sys.size();
  std::vector<bool> in(std::size_t{1} << n, false);
  std::vector<Subset> out;
  for (Subset s : sets) {
    for_each_superset_of(s, n, [&](Subset t) {
      if (!in[t.bits] && sys.efficient(t, k)) {
        in[t.bits] = true;
        out.push_back(t);
      }
    });
  }
  return SetFamily(n, k, std::move(out));
}

SetFamily generate_from_subbase(const ConnectivitySystem& sys, const SetFamily& s) {
  if (sys.size() != s.ground_size()) throw Error(ErrorCode::GroundSetMismatch, "subbase and system ground sizes differ");
  const Verdict pre = check_family(sys, s, FamilyKind::filter_subbase);
  if (!pre.holds) {
    throw Error(ErrorCode::NotASubbase, "input is not a filter subbase (violates " + *pre.violated_axiom + ")",
                pre.witnesses);
  }
  const std::size_t n = s.ground_size();
  const Bound k = s.bound();
  std::vector<bool> seen(std::size_t{1} << n, false);
  std::vector<Subset> meets;
  for (Subset m : s.members()) {
    seen[m.bits] = true;
    meets.push_back(m);
  }
  for (std::size_t i = 0; i < meets.size(); ++i) {
    for (Subset m : s.members()) {
      const Subset c = meets[i] & m;
      if (seen[c.bits]) continue;
      if (c.is_empty()) {
        throw Error(ErrorCode::EmptyIntersection, "the subbase has two finite intersections that are disjoint",
                    {meets[i], m});
      }
      seen[c.bits] = true;
      meets.push_back(c);
    }
  }
  std::vector<Subset> efficient;
  for (Subset c : meets) {
    if (sys.efficient(c, k)) efficient.push_back(c);
  }
  SetFamily out = up_closure(sys, efficient, k);
  const Verdict q1 = check_family(sys, out, FamilyKind::pi_system);
  if (!q1.holds) {
    throw Error(ErrorCode::EfficiencyEscape,
                "the generated family is not closed under efficient intersections because an intermediate "
                "intersection exceeds the bound",
                q1.witnesses);
  }
  return out;
}

UltrafilterNumberResult ultrafilter_number(const ConnectivitySystem& sys, Bound k) {
  limits::require(sys.size(), limits::kUltrafilterNumber, ErrorCode::GroundSetTooLargeForEnumeration,
                  "ultrafilter number");
  EnumerationRequest req;
  req.kind = FamilyKind::ultrafilter;
  req.k = k;
  req.principality = Principality::non_principal_only;
  const auto ultrafilters = enumerate_families(sys, req);
  UltrafilterNumberResult result;
  result.candidates = ultrafilters.size();
  for (const SetFamily& u : ultrafilters) {
    // Any generating prefilter lies inside U and contains every inclusion-minimal member;
    // two distinct minimal members can never be joined below by a member, so the minimal
    // members themselves are the only candidate.
    std::vector<Subset> minimal;
    for (Subset a : u.members()) {
      const bool is_min = std::none_of(u.members().begin(), u.members().end(),
                                       [&](Subset b) { return b != a && b.subset_of(a); });
      if (is_min) minimal.push_back(a);
    }
    SetFamily p(sys.size(), k, minimal);
    if (!check_family(sys, p, FamilyKind::prefilter).holds) continue;
    if (!(up_closure(sys, minimal, k) == u)) continue;
    if (!result.u || p.size() < *result.u) {
      result.u = p.size();
      result.witness_prefilter = p;
      result.ultrafilter = u;
    }
  }
  return result;
}

}  // namespace connsys
