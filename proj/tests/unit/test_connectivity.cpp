#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "../support/graphs.hpp"
#include "connsys/limits.hpp"
#include "helpers.hpp"

using namespace connsys;
using namespace connsys::testing;

namespace {

// Boundary vertices of an edge set, computed from incidence lists.
std::uint32_t boundary(const SimpleGraph& g, std::uint32_t a) {
  std::set<std::size_t> inside, outside;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    auto& side = ((a >> i) & 1u) ? inside : outside;
    side.insert(g.edges[i].first);
    side.insert(g.edges[i].second);
  }
  std::uint32_t count = 0;
  for (auto v : inside) count += outside.count(v) ? 1u : 0u;
  return count;
}

}  // namespace

TEST_CASE("ground set encoding") {
  GroundSet g({"x", "y", "z"});
  CHECK(g.encode(Subset{0b101}) == "x,z");
  CHECK(g.encode(Subset{}) == "");
  CHECK(g.decode("z,x") == Subset{0b101});
  CHECK(g.decode("") == Subset{});
  CHECK(code_of([&] { g.decode("w"); }) == ErrorCode::UnknownLabel);
  CHECK(code_of([] { GroundSet({"a", "a"}); }) == ErrorCode::InvalidParameter);
  std::vector<std::string> many;
  for (int i = 0; i < 21; ++i) many.push_back("x" + std::to_string(i));
  CHECK(code_of([&] { GroundSet{many}; }) == ErrorCode::GroundSetTooLarge);
}

TEST_CASE("C4 edge cut values") {
  const auto sys = c4_edges();
  CHECK(sys.evaluate(S(sys, "e1")) == 2);
  CHECK(sys.evaluate(S(sys, "e1,e2")) == 2);
  CHECK(sys.evaluate(S(sys, "e1,e3")) == 4);
  CHECK(sys.evaluate(sys.full()) == 0);
  CHECK(sys.max_value() == 4);
  // Everything except the two opposite-edge pairs is 2-efficient.
  CHECK(enumerate_k_efficient(sys, Bound{2}).size() == 14);
  CHECK(enumerate_k_efficient(sys, Bound{1}).size() == 2);
}

TEST_CASE("C4 vertex cut values") {
  const auto sys = vertex_cut_system(cycle_graph(4));
  CHECK(sys.ground().labels() == std::vector<std::string>{"v0", "v1", "v2", "v3"});
  CHECK(sys.evaluate(S(sys, "v1")) == 2);
  CHECK(sys.evaluate(S(sys, "v1,v3")) == 4);
  CHECK(sys.evaluate(S(sys, "v0,v1")) == 2);
}

TEST_CASE("edge cut values match incidence counting on every small graph") {
  for (const auto& g : connected_graphs(1, 7, 8)) {
    const auto sys = edge_cut_system(g);
    for (std::uint32_t a = 0; a < (1u << g.edges.size()); ++a) {
      REQUIRE(sys.evaluate(Subset{a}) == boundary(g, a));
    }
  }
}

TEST_CASE("graph systems are symmetric and submodular") {
  for (const auto& g : connected_graphs(1, 6, 6)) {
    for (const auto& sys : {edge_cut_system(g), vertex_cut_system(g)}) {
      const std::uint32_t n = static_cast<std::uint32_t>(sys.size());
      const std::uint32_t all = (1u << n) - 1;
      for (std::uint32_t a = 0; a <= all; ++a) {
        REQUIRE(sys.evaluate(Subset{a}) == sys.evaluate(Subset{all ^ a}));
        for (std::uint32_t b = 0; b <= all; ++b) {
          REQUIRE(sys.evaluate(Subset{a}) + sys.evaluate(Subset{b}) >=
                  sys.evaluate(Subset{a & b}) + sys.evaluate(Subset{a | b}));
        }
      }
    }
  }
}

TEST_CASE("table validation errors carry witnesses") {
  SUBCASE("asymmetric") {
    const auto e = error_of([] { table_system({"a", "b"}, {{"", 0}, {"a", 1}, {"b", 2}, {"a,b", 0}}); });
    CHECK(e.code() == ErrorCode::SymmetryViolation);
    REQUIRE(e.witnesses().size() == 2);
    CHECK(e.witnesses()[0] == Subset{0b01});
  }
  SUBCASE("not submodular") {
    const std::vector<std::pair<std::string, std::uint32_t>> values{
        {"", 0}, {"a", 0}, {"b", 5}, {"c", 0}, {"a,b", 0}, {"a,c", 5}, {"b,c", 0}, {"a,b,c", 0}};
    const auto e = error_of([&] { table_system({"a", "b", "c"}, values); });
    CHECK(e.code() == ErrorCode::SubmodularityViolation);
    REQUIRE(e.witnesses().size() == 2);
    // The reported pair must itself violate the inequality.
    std::map<std::uint32_t, std::uint32_t> f;
    GroundSet g({"a", "b", "c"});
    for (const auto& [k, v] : values) f[g.decode(k).bits] = v;
    const auto a = e.witnesses()[0].bits, b = e.witnesses()[1].bits;
    CHECK(f[a] + f[b] < f[a & b] + f[a | b]);
    // The pair ({a,b},{b,c}) is another violation of the same table.
    CHECK(f[0b011] + f[0b110] < f[0b010] + f[0b111]);
  }
  SUBCASE("not normalised") {
    const auto e = error_of([] { table_system({"a", "b"}, {{"", 1}, {"a", 1}, {"b", 1}, {"a,b", 1}}); });
    CHECK(e.code() == ErrorCode::NormalizationViolation);
  }
  SUBCASE("complement filled in") {
    const auto sys = table_system({"a", "b"}, {{"", 0}, {"a", 3}});
    CHECK(sys.evaluate(Subset{0b10}) == 3);
    CHECK(sys.evaluate(Subset{0b11}) == 0);
  }
  SUBCASE("missing pair") {
    CHECK(code_of([] { table_system({"a", "b", "c"}, {{"", 0}, {"a", 1}, {"b", 1}}); }) == ErrorCode::IncompleteTable);
  }
}

TEST_CASE("large systems use seeded sampling") {
  SimpleGraph path{14, {}};
  for (std::size_t i = 0; i + 1 < 14; ++i) path.edges.emplace_back(i, i + 1);
  const auto sys = build_system(GroundSet::numbered(13, "e"), EdgeCutGraph{path}, ValidationOptions{42, 20000});
  REQUIRE(sys.validation_seed().has_value());
  CHECK(*sys.validation_seed() == 42);
  const auto small = c4_edges();
  CHECK_FALSE(small.validation_seed().has_value());
}

TEST_CASE("enumerate_k_efficient is increasing and exact") {
  std::mt19937_64 rng(7);
  const auto graphs = connected_graphs(3, 6, 6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto& g = graphs[rng() % graphs.size()];
    const auto sys = edge_cut_system(g);
    const std::uint32_t k = static_cast<std::uint32_t>(rng() % (sys.max_value() + 1));
    const auto eff = enumerate_k_efficient(sys, Bound{k});
    CHECK(std::is_sorted(eff.begin(), eff.end()));
    std::size_t expected = 0;
    for (std::uint32_t a = 0; a < (1u << sys.size()); ++a) expected += boundary(g, a) <= k ? 1 : 0;
    CHECK(eff.size() == expected);
  }
}

TEST_CASE("size gates honour the override variable") {
  CHECK(limits::effective(limits::kEnumeration) >= 1);
  CHECK(code_of([] {
          limits::require(limits::effective(limits::kAntichain) + 1, limits::kAntichain,
                          ErrorCode::GroundSetTooLargeForEnumeration, "test");
        }) == ErrorCode::GroundSetTooLargeForEnumeration);
}

TEST_CASE("graph generator counts") {
  // Connected graphs up to isomorphism with m edges: 1, 1, 3, 5, 12, 30, 79 (m = 1..7).
  const std::vector<std::size_t> expected{1, 1, 3, 5, 12, 30, 79};
  const auto graphs = connected_graphs(1, 7, 8);
  for (std::size_t m = 1; m <= 7; ++m) {
    const auto count = std::count_if(graphs.begin(), graphs.end(), [&](const SimpleGraph& g) { return g.edges.size() == m; });
    CHECK(static_cast<std::size_t>(count) == expected[m - 1]);
  }
  // Connected graphs on at most 5 vertices: 1 + 1 + 2 + 6 + 21 with at least one edge.
  CHECK(connected_graphs(1, 10, 5).size() == 1 + 2 + 6 + 21);
}
