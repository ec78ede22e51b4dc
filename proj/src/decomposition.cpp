#include "connsys/decomposition.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <thread>

#include "connsys/construction.hpp"
#include "connsys/error.hpp"
#include "connsys/limits.hpp"

namespace connsys {

std::vector<Subset> subtree_sets(const BranchDecomposition& d, std::size_t n) {
  const std::size_t m = d.node_count();
  std::vector<Subset> sets(m);
  std::vector<int> depth(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    int steps = 0;
    for (int v = static_cast<int>(i); v != -1; v = d.parent[static_cast<std::size_t>(v)]) {
      if (++steps > static_cast<int>(m) + 1) throw Error(ErrorCode::MalformedTree, "parent array contains a cycle");
    }
    depth[i] = steps;
  }
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return depth[a] > depth[b]; });
  for (std::size_t v : order) {
    if (d.leaf[v]) {
      if (*d.leaf[v] >= n) throw Error(ErrorCode::MalformedTree, "leaf label out of range");
      sets[v] = sets[v].with(*d.leaf[v]);
    }
    if (d.parent[v] >= 0) {
      const auto p = static_cast<std::size_t>(d.parent[v]);
      sets[p] = sets[p] | sets[v];
    }
  }
  return sets;
}

namespace {

void validate_tree(const BranchDecomposition& d, std::size_t n) {
  const std::size_t m = d.node_count();
  if (d.leaf.size() != m) throw Error(ErrorCode::MalformedTree, "leaf map and parent array differ in length");
  if (m == 0) throw Error(ErrorCode::MalformedTree, "tree has no nodes");
  std::size_t roots = 0;
  std::vector<std::size_t> degree(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const int p = d.parent[i];
    if (p == -1) {
      ++roots;
      continue;
    }
    if (p < 0 || static_cast<std::size_t>(p) >= m || static_cast<std::size_t>(p) == i) {
      throw Error(ErrorCode::MalformedTree, "parent index out of range at node " + std::to_string(i));
    }
    ++degree[i];
    ++degree[static_cast<std::size_t>(p)];
  }
  if (roots != 1) throw Error(ErrorCode::MalformedTree, "tree must have exactly one root");
  std::vector<bool> used(n, false);
  std::size_t labelled = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (d.leaf[i]) {
      const std::size_t e = *d.leaf[i];
      if (e >= n) throw Error(ErrorCode::MalformedTree, "leaf label out of range");
      if (used[e]) throw Error(ErrorCode::MalformedTree, "element mapped to two leaves");
      used[e] = true;
      ++labelled;
      if (m > 1 && degree[i] != 1) throw Error(ErrorCode::MalformedTree, "labelled node is not a leaf");
    } else {
      if (degree[i] <= 1) throw Error(ErrorCode::MalformedTree, "unlabelled leaf at node " + std::to_string(i));
      if (degree[i] != 3) throw Error(ErrorCode::MalformedTree, "internal node without degree 3 at node " + std::to_string(i));
    }
  }
  if (labelled != n) throw Error(ErrorCode::MalformedTree, "leaves do not biject to the ground set");
  if (m != (n <= 2 ? n : 2 * n - 2)) throw Error(ErrorCode::MalformedTree, "node count does not match a ternary tree");
}

struct TreeBest {
  std::uint32_t width = std::numeric_limits<std::uint32_t>::max();
  std::vector<int> parent;
};

// Leaf-insertion enumeration of all ternary trees on leaves 0..n-1, rooted at leaf 0.
// Internal node for the insertion of leaf i is n + i - 2.
class TreeSearch {
 public:
  TreeSearch(const ConnectivitySystem& sys, std::uint32_t lower)
      : sys_(sys), n_(sys.size()), lower_(lower), parent_(2 * sys.size() - 2, -1), mask_(2 * sys.size() - 2) {
    for (std::size_t i = 0; i < n_; ++i) mask_[i] = Subset::singleton(i);
    const auto first = static_cast<int>(n_);
    parent_[n_] = 0;
    parent_[1] = first;
    parent_[2] = first;
    mask_[n_] = Subset::singleton(1) | Subset::singleton(2);
  }

  // Edges available before inserting leaf i, in canonical order.
  std::vector<std::size_t> edges_before(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 1; c < i; ++c) out.push_back(c);
    for (std::size_t w = n_; w < n_ + i - 2; ++w) out.push_back(w);
    return out;
  }

  void insert(std::size_t i, std::size_t c) {
    const std::size_t w = n_ + i - 2;
    const int p = parent_[c];
    parent_[w] = p;
    parent_[c] = static_cast<int>(w);
    parent_[i] = static_cast<int>(w);
    mask_[w] = mask_[c].with(i);
    for (int v = p; v > 0; v = parent_[static_cast<std::size_t>(v)]) {
      mask_[static_cast<std::size_t>(v)] = mask_[static_cast<std::size_t>(v)].with(i);
    }
  }

  void remove(std::size_t i, std::size_t c) {
    const std::size_t w = n_ + i - 2;
    const int p = parent_[w];
    parent_[c] = p;
    parent_[w] = -1;
    parent_[i] = -1;
    for (int v = p; v > 0; v = parent_[static_cast<std::size_t>(v)]) {
      mask_[static_cast<std::size_t>(v)] = mask_[static_cast<std::size_t>(v)].without(i);
    }
  }

  // Returns true when the lower bound was reached (search can stop).
  bool dfs(std::size_t i, TreeBest& best, const std::atomic<bool>* abort) {
    if (abort != nullptr && abort->load(std::memory_order_relaxed)) return true;
    if (i == n_) {
      std::uint32_t w = 0;
      for (std::size_t v = 1; v < parent_.size(); ++v) w = std::max(w, sys_.evaluate(mask_[v]));
      if (w < best.width) {
        best.width = w;
        best.parent = parent_;
      }
      return best.width <= lower_;
    }
    for (std::size_t c : edges_before(i)) {
      insert(i, c);
      const bool stop = dfs(i + 1, best, abort);
      remove(i, c);
      if (stop) return true;
    }
    return false;
  }

 private:
  const ConnectivitySystem& sys_;
  std::size_t n_;
  std::uint32_t lower_;
  std::vector<int> parent_;
  std::vector<Subset> mask_;
};

BranchDecomposition labelled_tree(std::vector<int> parent, std::size_t n) {
  BranchDecomposition d;
  d.parent = std::move(parent);
  d.leaf.assign(d.parent.size(), std::nullopt);
  for (std::size_t i = 0; i < n; ++i) d.leaf[i] = i;
  return d;
}

std::uint32_t max_singleton(const ConnectivitySystem& sys) {
  std::uint32_t s = 0;
  for (std::size_t e = 0; e < sys.size(); ++e) s = std::max(s, sys.evaluate(Subset::singleton(e)));
  return s;
}

}  // namespace

std::uint32_t decomposition_width(const ConnectivitySystem& sys, const BranchDecomposition& d) {
  const std::size_t n = sys.size();
  validate_tree(d, n);
  const auto sets = subtree_sets(d, n);
  std::uint32_t w = 0;
  for (std::size_t v = 0; v < d.node_count(); ++v) {
    if (d.parent[v] >= 0) w = std::max(w, sys.evaluate(sets[v]));
  }
  return w;
}

WidthResult branch_width(const ConnectivitySystem& sys, unsigned workers) {
  const std::size_t n = sys.size();
  limits::require(n, limits::kWidthSearch, ErrorCode::GroundSetTooLargeForExhaustiveSearch, "branch-width search");
  if (n == 1) return {0, BranchDecomposition{{-1}, {std::size_t{0}}}};
  if (n == 2) return {sys.evaluate(Subset::singleton(0)), BranchDecomposition{{-1, 0}, {std::size_t{0}, std::size_t{1}}}};

  const std::uint32_t lower = max_singleton(sys);
  // Top-level tasks: fixed insertion positions for the first few leaves.
  const std::size_t split = std::min<std::size_t>(2, n - 3);
  std::vector<std::vector<std::size_t>> tasks{{}};
  {
    TreeSearch probe(sys, lower);
    for (std::size_t level = 0; level < split; ++level) {
      const std::size_t leaf = 3 + level;
      std::vector<std::vector<std::size_t>> next;
      for (const auto& t : tasks) {
        for (std::size_t c : probe.edges_before(leaf)) {
          auto ext = t;
          ext.push_back(c);
          next.push_back(std::move(ext));
        }
      }
      tasks = std::move(next);
    }
  }

  std::vector<TreeBest> results(tasks.size());
  std::vector<std::atomic<bool>> aborts(tasks.size());
  std::atomic<std::size_t> cursor{0};
  std::mutex mu;
  std::size_t first_optimal = tasks.size();
  auto worker = [&] {
    for (std::size_t ti = cursor++; ti < tasks.size(); ti = cursor++) {
      {
        std::lock_guard lock(mu);
        if (ti > first_optimal) continue;
      }
      TreeSearch search(sys, lower);
      for (std::size_t level = 0; level < tasks[ti].size(); ++level) search.insert(3 + level, tasks[ti][level]);
      const bool hit = search.dfs(3 + tasks[ti].size(), results[ti], &aborts[ti]);
      if (hit && results[ti].width <= lower) {
        std::lock_guard lock(mu);
        if (ti < first_optimal) {
          first_optimal = ti;
          for (std::size_t j = ti + 1; j < tasks.size(); ++j) aborts[j] = true;
        }
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  std::size_t pick = tasks.size();
  for (std::size_t ti = 0; ti < tasks.size() && ti <= first_optimal; ++ti) {
    if (results[ti].parent.empty()) continue;
    if (pick == tasks.size() || results[ti].width < results[pick].width) pick = ti;
  }
  return {results[pick].width, labelled_tree(results[pick].parent, n)};
}

std::uint32_t ordering_width(const ConnectivitySystem& sys, const LinearOrdering& ord) {
  const std::size_t n = sys.size();
  if (ord.order.size() != n) throw Error(ErrorCode::NotAPermutation, "ordering length differs from the ground set");
  std::vector<bool> seen(n, false);
  for (std::size_t e : ord.order) {
    if (e >= n || seen[e]) throw Error(ErrorCode::NotAPermutation, "ordering repeats or omits an element");
    seen[e] = true;
  }
  std::uint32_t w = max_singleton(sys);
  Subset prefix;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    prefix = prefix.with(ord.order[i]);
    w = std::max(w, sys.evaluate(prefix));
  }
  return w;
}

WidthResult linear_width(const ConnectivitySystem& sys) {
  const std::size_t n = sys.size();
  limits::require(n, limits::kWidthSearch, ErrorCode::GroundSetTooLargeForExhaustiveSearch, "linear-width search");
  const std::uint32_t full = sys.full().bits;
  // rest[m]: least possible maximum of prefix values over all completions of prefix set m.
  std::vector<std::uint32_t> rest(std::size_t{1} << n, 0);
  for (std::uint32_t m = full; m-- > 0;) {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t e = 0; e < n; ++e) {
      if ((m >> e) & 1u) continue;
      const std::uint32_t next = m | (1u << e);
      best = std::min(best, std::max(sys.evaluate(Subset{next}), rest[next]));
    }
    rest[m] = best;
  }
  const std::uint32_t width = std::max(max_singleton(sys), rest[0]);
  LinearOrdering ord;
  std::uint32_t m = 0;
  while (m != full) {
    for (std::size_t e = 0; e < n; ++e) {
      if ((m >> e) & 1u) continue;
      const std::uint32_t next = m | (1u << e);
      if (std::max(sys.evaluate(Subset{next}), rest[next]) <= width) {
        ord.order.push_back(e);
        m = next;
        break;
      }
    }
  }
  return {width, ord};
}

BranchDecomposition caterpillar(const LinearOrdering& ord) {
  const std::size_t n = ord.order.size();
  BranchDecomposition d;
  if (n == 0) return d;
  if (n == 1) return {{-1}, {ord.order[0]}};
  if (n == 2) return {{-1, 0}, {ord.order[0], ord.order[1]}};
  d.parent.assign(2 * n - 2, -1);
  d.leaf.assign(2 * n - 2, std::nullopt);
  for (std::size_t p = 0; p < n; ++p) d.leaf[p] = ord.order[p];
  const auto spine = [n](std::size_t j) { return static_cast<int>(n + j); };
  d.parent[n] = 0;
  for (std::size_t j = 1; j + 2 < n; ++j) d.parent[n + j] = spine(j - 1);
  for (std::size_t p = 1; p + 1 < n; ++p) d.parent[p] = spine(p - 1);
  d.parent[n - 1] = spine(n - 3);
  return d;
}

std::string_view duality_kind_name(DualityKind kind) {
  switch (kind) {
    case DualityKind::ultrafilter: return "ultrafilter";
    case DualityKind::tangle: return "tangle";
    case DualityKind::single_ultrafilter: return "single_ultrafilter";
  }
  return "ultrafilter";
}

DualityVerdict duality_audit(const ConnectivitySystem& sys, Bound k, DualityKind kind, unsigned workers) {
  DualityVerdict v;
  v.kind = kind;
  v.k = k;
  WidthResult width = kind == DualityKind::single_ultrafilter ? linear_width(sys) : branch_width(sys, workers);
  v.width = width.width;
  v.width_side = width.width <= k.k;
  v.certificate = std::move(width);

  EnumerationRequest req;
  req.k = k;
  req.limit = 1;
  req.workers = workers;
  switch (kind) {
    case DualityKind::ultrafilter:
      req.kind = FamilyKind::ultrafilter;
      req.principality = Principality::non_principal_only;
      break;
    case DualityKind::tangle: req.kind = FamilyKind::tangle; break;
    case DualityKind::single_ultrafilter:
      req.kind = FamilyKind::single_ultrafilter;
      req.principality = Principality::non_principal_only;
      req.mode = SingleMode::QS1;
      break;
  }
  auto found = enumerate_families(sys, req);
  v.obstruction_side = found.empty();
  if (!found.empty()) v.obstruction = std::move(found.front());
  v.consistent = v.width_side == v.obstruction_side;
  return v;
}

WidthResult chain_to_decomposition(const ConnectivitySystem& sys, const std::vector<Subset>& chain,
                                   std::optional<Bound> declared) {
  if (chain.size() < 2 || !chain.front().is_empty() || chain.back() != sys.full()) {
    throw Error(ErrorCode::NotASequenceChain, "a sequence chain runs from the empty set to X");
  }
  LinearOrdering ord;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const Subset prev = chain[i - 1];
    const Subset cur = chain[i];
    if (!prev.subset_of(cur) || prev == cur) {
      throw Error(ErrorCode::NotASequenceChain, "chain is not strictly increasing at position " + std::to_string(i),
                  {prev, cur});
    }
    const Subset step = cur - prev;
    if (step.size() != 1) {
      throw Error(ErrorCode::NotSingleElement, "step " + std::to_string(i) + " adds more than one element", {prev, cur});
    }
    ord.order.push_back(elements_of(step).front());
  }
  if (declared) {
    for (Subset s : chain) {
      if (!sys.efficient(s, *declared)) {
        throw Error(ErrorCode::NotASequenceChain, "chain member exceeds the declared bound", {s});
      }
    }
  }
  const std::uint32_t w = ordering_width(sys, ord);
  return {w, ord};
}

}  // namespace connsys
