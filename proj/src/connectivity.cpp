#include "connsys/connectivity.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>

#include "connsys/error.hpp"
#include "connsys/limits.hpp"

namespace connsys {

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(ErrorCode::InvalidParameter, "ground set must not be empty");
  if (labels_.size() > kMaxGroundSize) {
    throw Error(ErrorCode::GroundSetTooLarge,
                "ground set has " + std::to_string(labels_.size()) + " elements; the limit is " +
                    std::to_string(kMaxGroundSize));
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw Error(ErrorCode::InvalidParameter, "element labels must be non-empty");
    if (l.find(',') != std::string::npos) {
      throw Error(ErrorCode::InvalidParameter, "element label '" + l + "' contains a comma");
    }
    if (!seen.insert(l).second) throw Error(ErrorCode::InvalidParameter, "duplicate element label '" + l + "'");
  }
}

GroundSet GroundSet::numbered(std::size_t n, const std::string& prefix, bool zero_based) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(zero_based ? i : i + 1));
  return GroundSet(std::move(labels));
}

std::optional<std::size_t> GroundSet::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::string GroundSet::encode(Subset s) const {
  std::string out;
  for (std::size_t i : elements_of(s)) {
    if (!out.empty()) out += ',';
    out += labels_.at(i);
  }
  return out;
}

Subset GroundSet::decode(const std::string& key) const {
  Subset s;
  if (key.empty()) return s;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = key.find(',', start);
    const std::string part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    auto idx = index_of(part);
    if (!idx) throw Error(ErrorCode::UnknownLabel, "unknown element label '" + part + "'");
    s = s.with(*idx);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return s;
}

Subset GroundSet::from_labels(const std::vector<std::string>& labels) const {
  Subset s;
  for (const auto& l : labels) {
    auto idx = index_of(l);
    if (!idx) throw Error(ErrorCode::UnknownLabel, "unknown element label '" + l + "'");
    s = s.with(*idx);
  }
  return s;
}

std::string_view spec_kind_name(const FunctionSpec& spec) {
  switch (spec.index()) {
    case 0: return "table";
    case 1: return "graph_edge_cut";
    default: return "graph_vertex_cut";
  }
}

namespace {

void check_simple(const SimpleGraph& g) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [u, v] : g.edges) {
    if (u >= g.vertices || v >= g.vertices) {
      throw Error(ErrorCode::InvalidParameter, "edge endpoint out of range");
    }
    if (u == v) throw Error(ErrorCode::InvalidParameter, "graph must be simple (loop at vertex " + std::to_string(u) + ")");
    if (!seen.insert(std::minmax(u, v)).second) {
      throw Error(ErrorCode::InvalidParameter, "graph must be simple (parallel edge " + std::to_string(u) + "-" +
                                                   std::to_string(v) + ")");
    }
  }
}

std::vector<std::uint32_t> edge_cut_values(const SimpleGraph& g) {
  const std::size_t m = g.edges.size();
  // incident[v] = mask of edges touching v
  std::vector<std::uint32_t> incident(g.vertices, 0);
  for (std::size_t i = 0; i < m; ++i) {
    incident[g.edges[i].first] |= 1u << i;
    incident[g.edges[i].second] |= 1u << i;
  }
  std::vector<std::uint32_t> values(std::size_t{1} << m, 0);
  for (std::uint32_t a = 0; a < values.size(); ++a) {
    std::uint32_t count = 0;
    for (std::uint32_t inc : incident) {
      if ((inc & a) != 0 && (inc & ~a) != 0) ++count;
    }
    values[a] = count;
  }
  return values;
}

std::vector<std::uint32_t> vertex_cut_values(const SimpleGraph& g) {
  std::vector<std::uint32_t> values(std::size_t{1} << g.vertices, 0);
  for (std::uint32_t a = 0; a < values.size(); ++a) {
    std::uint32_t count = 0;
    for (auto [u, v] : g.edges) {
      if (((a >> u) & 1u) != ((a >> v) & 1u)) ++count;
    }
    values[a] = count;
  }
  return values;
}

std::vector<std::uint32_t> table_values(const TableFunction& table, std::size_t n) {
  const std::size_t total = std::size_t{1} << n;
  const std::uint32_t full = Subset::full(n).bits;
  std::vector<std::optional<std::uint32_t>> given(total);
  for (auto [s, v] : table.values) {
    if ((s.bits & ~full) != 0) throw Error(ErrorCode::InvalidParameter, "table key outside the ground set");
    if (given[s.bits] && *given[s.bits] != v) {
      throw Error(ErrorCode::ParseError, "conflicting duplicate table entries", {s});
    }
    given[s.bits] = v;
  }
  std::vector<std::uint32_t> values(total, 0);
  for (std::uint32_t a = 0; a < total; ++a) {
    const std::uint32_t c = a ^ full;
    const auto& mine = given[a];
    const auto& theirs = given[c];
    if (mine && theirs && *mine != *theirs) {
      const Subset lo{std::min(a, c)};
      throw Error(ErrorCode::SymmetryViolation, "f(A) != f(X\\A)", {lo, Subset{lo.bits ^ full}});
    }
    if (!mine && !theirs) {
      throw Error(ErrorCode::IncompleteTable, "no value for a subset or its complement", {Subset{std::min(a, c)}});
    }
    values[a] = mine ? *mine : *theirs;
  }
  return values;
}

void check_symmetric(std::span<const std::uint32_t> values, std::size_t n) {
  const std::uint32_t full = Subset::full(n).bits;
  for (std::uint32_t a = 0; a < values.size(); ++a) {
    if (values[a] != values[a ^ full]) {
      throw Error(ErrorCode::SymmetryViolation, "f(A) != f(X\\A)", {Subset{a}, Subset{a ^ full}});
    }
  }
}

void report_submodular(std::uint32_t a, std::uint32_t b, std::span<const std::uint32_t> v) {
  throw Error(ErrorCode::SubmodularityViolation,
              "f(A) + f(B) = " + std::to_string(v[a] + v[b]) + " < f(A&B) + f(A|B) = " +
                  std::to_string(v[a & b] + v[a | b]),
              {Subset{a}, Subset{b}});
}

}  // namespace

ConnectivitySystem build_system(GroundSet ground, FunctionSpec spec, const ValidationOptions& opts) {
  const std::size_t n = ground.size();
  if (n == 0) throw Error(ErrorCode::InvalidParameter, "ground set must not be empty");
  if (n > kMaxGroundSize) throw Error(ErrorCode::GroundSetTooLarge, "at most 20 ground elements are supported");

  std::vector<std::uint32_t> values;
  if (auto* t = std::get_if<TableFunction>(&spec)) {
    values = table_values(*t, n);
  } else if (auto* e = std::get_if<EdgeCutGraph>(&spec)) {
    check_simple(e->graph);
    if (e->graph.edges.size() != n) {
      throw Error(ErrorCode::InvalidParameter, "edge-cut ground set must have one label per edge");
    }
    values = edge_cut_values(e->graph);
  } else {
    const auto& g = std::get<VertexCutGraph>(spec).graph;
    check_simple(g);
    if (g.vertices != n) throw Error(ErrorCode::InvalidParameter, "vertex-cut ground set must have one label per vertex");
    values = vertex_cut_values(g);
  }

  check_symmetric(values, n);
  if (values[0] != 0) {
    throw Error(ErrorCode::NormalizationViolation, "f(empty) = " + std::to_string(values[0]) + ", expected 0",
                {Subset::empty()});
  }

  ConnectivitySystem sys;
  const std::uint32_t total = static_cast<std::uint32_t>(values.size());
  if (n <= limits::kFullSubmodularCheck) {
    for (std::uint32_t a = 0; a < total; ++a) {
      for (std::uint32_t b = a + 1; b < total; ++b) {
        if (values[a] + values[b] < values[a & b] + values[a | b]) report_submodular(a, b, values);
      }
    }
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, total - 1);
    for (std::size_t i = 0; i < opts.samples; ++i) {
      std::uint32_t a = pick(rng), b = pick(rng);
      if (a > b) std::swap(a, b);
      if (values[a] + values[b] < values[a & b] + values[a | b]) report_submodular(a, b, values);
    }
    sys.validation_seed_ = opts.seed;
  }

  sys.max_value_ = *std::max_element(values.begin(), values.end());
  sys.ground_ = std::move(ground);
  sys.spec_ = std::move(spec);
  sys.values_ = std::move(values);
  return sys;
}

ConnectivitySystem edge_cut_system(const SimpleGraph& g) {
  return build_system(GroundSet::numbered(g.edges.size(), "e"), EdgeCutGraph{g});
}

ConnectivitySystem vertex_cut_system(const SimpleGraph& g) {
  return build_system(GroundSet::numbered(g.vertices, "v", true), VertexCutGraph{g});
}

ConnectivitySystem zero_system(GroundSet ground) {
  TableFunction t;
  t.values.emplace_back(Subset::empty(), 0);
  const std::size_t n = ground.size();
  for (std::uint32_t a = 1; a < (1u << n); ++a) t.values.emplace_back(Subset{a}, 0);
  return build_system(std::move(ground), std::move(t));
}

std::vector<Subset> enumerate_k_efficient(const ConnectivitySystem& sys, Bound k) {
  std::vector<Subset> out;
  const auto values = sys.values();
  for (std::uint32_t a = 0; a < values.size(); ++a) {
    if (values[a] <= k.k) out.push_back(Subset{a});
  }
  return out;
}

}  // namespace connsys
