#include "connsys/order.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "connsys/error.hpp"
#include "connsys/limits.hpp"

namespace connsys {

namespace {

// Kuhn's augmenting paths on the strict-inclusion bipartite graph (left i -> right j when family[i] < family[j]).
struct Matching {
  std::vector<int> right_of;  // left -> right
  std::vector<int> left_of;   // right -> left
  std::size_t size = 0;
};

bool strictly_below(Subset a, Subset b) { return a != b && a.subset_of(b); }

Matching match(const std::vector<Subset>& family) {
  const std::size_t m = family.size();
  Matching mt;
  mt.right_of.assign(m, -1);
  mt.left_of.assign(m, -1);
  std::vector<char> visited;
  auto augment = [&](auto&& self, std::size_t u) -> bool {
    for (std::size_t v = 0; v < m; ++v) {
      if (!strictly_below(family[u], family[v]) || visited[v]) continue;
      visited[v] = 1;
      if (mt.left_of[v] < 0 || self(self, static_cast<std::size_t>(mt.left_of[v]))) {
        mt.left_of[v] = static_cast<int>(u);
        mt.right_of[u] = static_cast<int>(v);
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < m; ++u) {
    visited.assign(m, 0);
    if (augment(augment, u)) ++mt.size;
  }
  return mt;
}

void require_efficient(const ConnectivitySystem& sys, const std::vector<Subset>& sets, Bound k, ErrorCode code) {
  for (Subset s : sets) {
    if (!sys.efficient(s, k)) throw Error(code, "set exceeds the bound", {s});
  }
}

}  // namespace

Chain make_chain(const ConnectivitySystem& sys, std::vector<Subset> sets, Bound k) {
  for (std::size_t i = 1; i < sets.size(); ++i) {
    if (!strictly_below(sets[i - 1], sets[i])) {
      throw Error(ErrorCode::ChainOrderBroken, "chain is not strictly increasing at position " + std::to_string(i),
                  {sets[i - 1], sets[i]});
    }
  }
  require_efficient(sys, sets, k, ErrorCode::EfficiencyViolation);
  return Chain{std::move(sets), k};
}

bool is_antichain(const std::vector<Subset>& sets) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (sets[i].comparable(sets[j])) return false;
    }
  }
  return true;
}

std::vector<Subset> max_antichain_of(std::vector<Subset> family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  const std::size_t m = family.size();
  const Matching mt = match(family);
  // Konig: from unmatched left vertices, alternate along non-matching then matching edges.
  std::vector<char> left_seen(m, 0), right_seen(m, 0);
  std::deque<std::size_t> queue;
  for (std::size_t u = 0; u < m; ++u) {
    if (mt.right_of[u] < 0) {
      left_seen[u] = 1;
      queue.push_back(u);
    }
  }
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < m; ++v) {
      if (!strictly_below(family[u], family[v]) || right_seen[v]) continue;
      right_seen[v] = 1;
      const int w = mt.left_of[v];
      if (w >= 0 && !left_seen[static_cast<std::size_t>(w)]) {
        left_seen[static_cast<std::size_t>(w)] = 1;
        queue.push_back(static_cast<std::size_t>(w));
      }
    }
  }
  // Minimum vertex cover = (left not seen) + (right seen); the antichain is what it misses on both sides.
  std::vector<Subset> out;
  for (std::size_t x = 0; x < m; ++x) {
    if (left_seen[x] && !right_seen[x]) out.push_back(family[x]);
  }
  return out;
}

Antichain find_max_antichain(const ConnectivitySystem& sys, Bound k) {
  limits::require(sys.size(), limits::kAntichain, ErrorCode::GroundSetTooLargeForEnumeration, "antichain search");
  std::vector<Subset> family;
  for (Subset s : enumerate_k_efficient(sys, k)) {
    if (!s.is_empty()) family.push_back(s);
  }
  return Antichain{max_antichain_of(std::move(family)), k};
}

std::vector<Chain> min_chain_cover(const ConnectivitySystem& sys, std::vector<Subset> family, Bound k) {
  if (family.size() > 64) throw Error(ErrorCode::InvalidParameter, "chain cover supports at most 64 sets");
  require_efficient(sys, family, k, ErrorCode::NotKEfficient);
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  const Matching mt = match(family);
  std::vector<Chain> out;
  for (std::size_t start = 0; start < family.size(); ++start) {
    if (mt.left_of[start] >= 0) continue;  // has a predecessor
    Chain c{{}, k};
    for (int v = static_cast<int>(start); v >= 0; v = mt.right_of[static_cast<std::size_t>(v)]) {
      c.sets.push_back(family[static_cast<std::size_t>(v)]);
    }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Chain& a, const Chain& b) { return a.sets.front() < b.sets.front(); });
  return out;
}

std::size_t brute_force_cover_size(const std::vector<Subset>& family) {
  const std::size_t m = family.size();
  if (m > 16) throw Error(ErrorCode::InvalidParameter, "brute-force cover supports at most 16 sets");
  const std::uint32_t total = 1u << m;
  std::vector<char> is_chain(total, 1);
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    for (std::size_t i = 0; i < m && is_chain[mask]; ++i) {
      if (!((mask >> i) & 1u)) continue;
      for (std::size_t j = i + 1; j < m; ++j) {
        if (((mask >> j) & 1u) && !family[i].comparable(family[j])) {
          is_chain[mask] = 0;
          break;
        }
      }
    }
  }
  std::vector<std::size_t> best(total, std::numeric_limits<std::size_t>::max());
  best[0] = 0;
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t rest = mask ^ low;
    // The chain holding the lowest element: low plus any chain-compatible subset of rest.
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      if (is_chain[sub | low] && best[rest ^ sub] + 1 < best[mask]) best[mask] = best[rest ^ sub] + 1;
      if (sub == 0) break;
    }
  }
  return best[total - 1];
}

std::optional<Chain> find_sequence_chain(const ConnectivitySystem& sys, Bound k, bool single_element) {
  const std::size_t n = sys.size();
  const std::uint32_t full = sys.full().bits;
  if (!single_element) {
    // X and the empty set are always k-efficient, so the two-step chain always qualifies.
    return Chain{{Subset::empty(), sys.full()}, k};
  }
  std::vector<int> parent(std::size_t{1} << n, -2);
  std::deque<std::uint32_t> queue{0};
  parent[0] = -1;
  while (!queue.empty()) {
    const std::uint32_t s = queue.front();
    queue.pop_front();
    if (s == full) break;
    for (std::size_t e = 0; e < n; ++e) {
      const std::uint32_t t = s | (1u << e);
      if (t == s || parent[t] != -2 || !sys.efficient(Subset{t}, k)) continue;
      parent[t] = static_cast<int>(s);
      queue.push_back(t);
    }
  }
  if (parent[full] == -2) return std::nullopt;
  std::vector<Subset> sets;
  for (int v = static_cast<int>(full); v >= 0; v = parent[static_cast<std::size_t>(v)]) sets.push_back(Subset{static_cast<std::uint32_t>(v)});
  std::reverse(sets.begin(), sets.end());
  return Chain{std::move(sets), k};
}

Chain chain_extend_single(const ConnectivitySystem& sys, const Chain& chain, std::size_t e) {
  if (e >= sys.size()) throw Error(ErrorCode::InvalidParameter, "element index out of range");
  const Subset last = chain.sets.empty() ? Subset::empty() : chain.sets.back();
  if (last.contains(e)) throw Error(ErrorCode::ElementAlreadyPresent, "element already in the last set", {last});
  const Subset next = last.with(e);
  if (!sys.efficient(next, chain.k)) throw Error(ErrorCode::EfficiencyViolation, "extended set exceeds the bound", {next});
  Chain out = chain;
  out.sets.push_back(next);
  return out;
}

Chain chain_delete_single(const ConnectivitySystem& sys, const Chain& chain, std::size_t index, std::size_t e) {
  if (index >= chain.sets.size()) throw Error(ErrorCode::InvalidParameter, "chain position out of range");
  if (!chain.sets[index].contains(e)) {
    throw Error(ErrorCode::ElementAbsent, "element not in the chain set", {chain.sets[index]});
  }
  std::vector<Subset> sets = chain.sets;
  sets[index] = sets[index].without(e);
  return make_chain(sys, std::move(sets), chain.k);
}

}  // namespace connsys
