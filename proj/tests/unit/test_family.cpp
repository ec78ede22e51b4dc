#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "../support/graphs.hpp"
#include "../support/oracles.hpp"
#include "connsys/construction.hpp"
#include "helpers.hpp"

using namespace connsys;
using namespace connsys::testing;

TEST_CASE("kind names round-trip") {
  for (FamilyKind kind : all_kinds()) CHECK(parse_kind(kind_name(kind)) == kind);
  CHECK(parse_kind("pi-system") == FamilyKind::pi_system);
  CHECK_FALSE(parse_kind("ultra").has_value());
  CHECK(axiom_list(FamilyKind::filter) == std::vector<std::string>{"non-empty", "Q0", "Q1", "Q2", "Q3"});
  CHECK(axiom_list(FamilyKind::single_filter, SingleMode::QSD1).at(2) == "QSD1");
}

TEST_CASE("family members outside the ground set") {
  CHECK(code_of([] { SetFamily(2, Bound{0}, {Subset{0b100}}); }) == ErrorCode::GroundSetMismatch);
}

TEST_CASE("C4 at k=1: {X} is a non-principal ultrafilter") {
  const auto sys = c4_edges();
  const auto f = F(sys, 1, {"e1,e2,e3,e4"});
  const auto v = check_family(sys, f, FamilyKind::ultrafilter);
  CHECK(v.holds);
  CHECK(v.ft1 == true);
  const auto flags = classify_family(sys, f);
  CHECK(flags.principal == TriState::vacuous);
  CHECK(flags.non_principal == TriState::yes);
  CHECK(flags.uniform);
}

TEST_CASE("C4 at k=2: {X} is a filter but not an ultrafilter") {
  const auto sys = c4_edges();
  const auto f = F(sys, 2, {"e1,e2,e3,e4"});
  CHECK(check_family(sys, f, FamilyKind::filter).holds);
  const auto v = check_family(sys, f, FamilyKind::ultrafilter);
  CHECK_FALSE(v.holds);
  CHECK(v.violated_axiom == "Q4");
  REQUIRE(v.witnesses.size() == 1);
  CHECK(v.witnesses[0] == S(sys, "e1"));
}

TEST_CASE("tangle axioms on a two-element trivial system") {
  const auto sys = zero_on({"a", "b"});
  // Under the literal second axiom {a} must be decided, so {empty} is not a tangle.
  const auto v = check_family(sys, F(sys, 0, {""}), FamilyKind::tangle);
  CHECK_FALSE(v.holds);
  CHECK(v.violated_axiom == "T2");
  CHECK(v.witnesses == std::vector{S(sys, "a")});
  // Any family deciding {a} contains a co-singleton, so no tangle exists at all.
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    Members m;
    for (std::uint32_t a = 0; a < 4; ++a) {
      if ((mask >> a) & 1u) m.push_back(a);
    }
    CHECK_FALSE(check_family(sys, to_family(sys, 0, m), FamilyKind::tangle).holds);
  }
}

TEST_CASE("witness conventions") {
  const auto sys = zero_on({"a", "b", "c"});
  SUBCASE("Q1 reports the pair") {
    const auto v = check_family(sys, F(sys, 0, {"a,b", "b,c", "a,b,c"}), FamilyKind::filter);
    CHECK(v.violated_axiom == "Q1");
    CHECK(v.witnesses == std::vector{S(sys, "a,b"), S(sys, "b,c")});
  }
  SUBCASE("Q2 reports member and superset") {
    const auto v = check_family(sys, F(sys, 0, {"b"}), FamilyKind::filter);
    CHECK(v.violated_axiom == "Q2");
    CHECK(v.witnesses == std::vector{S(sys, "b"), S(sys, "a,b")});
  }
  SUBCASE("Q3 reports the empty set") {
    std::vector<std::string> all{"", "a", "b", "c", "a,b", "a,c", "b,c", "a,b,c"};
    const auto v = check_family(sys, F(sys, 0, all), FamilyKind::filter);
    CHECK(v.violated_axiom == "Q3");
    CHECK(v.witnesses == std::vector{Subset{}});
  }
  SUBCASE("empty family") {
    const auto v = check_family(sys, SetFamily(3, Bound{0}), FamilyKind::ultrafilter);
    CHECK(v.violated_axiom == "non-empty");
  }
  SUBCASE("Q0 reports the inefficient member") {
    const auto c4 = c4_edges();
    const auto v = check_family(c4, F(c4, 1, {"e1"}), FamilyKind::filter);
    CHECK(v.violated_axiom == "Q0");
    CHECK(v.witnesses == std::vector{S(c4, "e1")});
  }
}

TEST_CASE("auxiliary kinds") {
  const auto sys = zero_on({"a", "b", "c"});
  CHECK(check_family(sys, F(sys, 0, {"", "a", "a,b", "a,b,c"}), FamilyKind::closure_system).holds);
  CHECK(check_family(sys, F(sys, 0, {"", "a", "b", "a,b"}), FamilyKind::independence_system).holds);
  CHECK(check_family(sys, F(sys, 0, {"a", "b"}), FamilyKind::independence_system).violated_axiom == "IN1");
  CHECK(check_family(sys, F(sys, 0, {"", "a", "a,b,c"}), FamilyKind::union_closed_system).holds);
  CHECK(check_family(sys, F(sys, 0, {"b"}), FamilyKind::prefilter).holds);
  CHECK(check_family(sys, F(sys, 0, {"a", "b"}), FamilyKind::prefilter).violated_axiom == "P3");
  CHECK(check_family(sys, F(sys, 0, {"a,b", "b,c"}), FamilyKind::filter_subbase).holds);
  CHECK(check_family(sys, F(sys, 0, {"a", "a,b", "a,c", "a,b,c"}), FamilyKind::weak_filter).holds);
  CHECK(check_family(sys, F(sys, 0, {"a,b,c", ""}), FamilyKind::lambda_system).holds);
  CHECK(check_family(sys, F(sys, 0, {"a", "b,c"}), FamilyKind::majority_system).violated_axiom == "MA1");
  const auto sigma = F(sys, 0, {"a", "a,b", "a,c", "a,b,c"});
  CHECK(check_family(sys, sigma, FamilyKind::sigma_filter).holds);
  CHECK(check_family(sys, sigma, FamilyKind::single_filter, SingleMode::QSD1).violated_axiom == "QSD1");
}

TEST_CASE("check_family agrees with the literal re-quantifier on three elements") {
  const auto tables = all_small_tables(3, 2);
  REQUIRE(!tables.empty());
  const std::vector<FamilyKind> kinds{FamilyKind::filter, FamilyKind::ultrafilter, FamilyKind::tangle,
                                      FamilyKind::prefilter, FamilyKind::pi_system, FamilyKind::superfilter};
  std::size_t checked = 0;
  for (const auto& sys : tables) {
    for (std::uint32_t k = 0; k <= 2; k += 2) {
      for (std::uint32_t mask = 0; mask < 256; mask += 3) {
        Members m;
        for (std::uint32_t a = 0; a < 8; ++a) {
          if ((mask >> a) & 1u) m.push_back(a);
        }
        const auto fam = to_family(sys, k, m);
        for (FamilyKind kind : kinds) {
          const auto v = check_family(sys, fam, kind);
          const auto expected = literal_first_violation(sys, m, k, kind);
          REQUIRE(v.holds == !expected.has_value());
          REQUIRE(v.violated_axiom == expected);
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("properties of ultrafilters on small graphs") {
  for (const auto& g : connected_graphs(3, 4, 5)) {
    const auto sys = edge_cut_system(g);
    for (std::uint32_t k = 0; k <= sys.max_value(); ++k) {
      EnumerationRequest req;
      req.k = Bound{k};
      for (const auto& u : enumerate_families(sys, req)) {
        // Complements of ultrafilters are tangle-shaped: they decide every pair.
        const auto co = complement_family(u);
        CHECK(check_family(sys, co, FamilyKind::ultrafilter).violated_axiom != "Q4");
        // Truncation keeps the ultrafilter property.
        for (std::uint32_t j = 0; j <= k; ++j) {
          const auto t = truncate_order(sys, u, Bound{j});
          if (!t.empty()) CHECK(check_family(sys, t, FamilyKind::ultrafilter).holds);
        }
        // A member's complement always breaks the intersection property.
        for (Subset a : u.members()) CHECK_FALSE(fip_check(sys, u, a.complement(sys.size())).fip);
      }
    }
  }
}

TEST_CASE("intersection property") {
  const auto sys = zero_on({"a", "b"});
  const auto r = fip_check(sys, F(sys, 0, {"a,b"}), S(sys, "a"));
  CHECK(r.fip);
  CHECK(r.criterion_agrees);
  CHECK_FALSE(fip_check(sys, F(sys, 0, {"a", "a,b"}), S(sys, "b")).fip);
  CHECK(fip_check(sys, F(sys, 0, {"a", "a,b"}), sys.full()).fip);
  // Outside the efficient sets the biconditional can fail: the principal ultrafilter at e1
  // misses {e2,e4}, yet its complement {e1,e3} is too expensive to be a member.
  const auto c4 = c4_edges();
  const auto at_e1 = F(c4, 2, {"e1", "e1,e2", "e1,e4", "e1,e2,e3", "e1,e2,e4", "e1,e3,e4", "e1,e2,e3,e4"});
  REQUIRE(check_family(c4, at_e1, FamilyKind::ultrafilter).holds);
  const auto odd = fip_check(c4, at_e1, S(c4, "e2,e4"));
  CHECK_FALSE(odd.fip);
  CHECK_FALSE(odd.criterion_agrees);
}

TEST_CASE("truncate and fip errors") {
  const auto sys = c4_edges();
  CHECK(code_of([&] { truncate_order(sys, F(sys, 1, {"e1,e2,e3,e4"}), Bound{2}); }) == ErrorCode::BoundIncrease);
  CHECK(code_of([&] { fip_check(sys, F(sys, 2, {"e1"}), S(sys, "e2")); }) == ErrorCode::NotAFilter);
}

TEST_CASE("close_filter") {
  const auto sys = zero_on({"a", "b", "c"});
  const auto f = close_filter(sys, {S(sys, "a,b"), S(sys, "b,c")}, Bound{0});
  REQUIRE(f);
  CHECK(f->contains(S(sys, "b")));
  CHECK(check_family(sys, *f, FamilyKind::filter).holds);
  CHECK_FALSE(close_filter(sys, {S(sys, "a"), S(sys, "b")}, Bound{0}).has_value());
  const auto c4 = c4_edges();
  CHECK(code_of([&] { close_filter(c4, {S(c4, "e1,e3")}, Bound{2}); }) == ErrorCode::NotKEfficient);
}

TEST_CASE("random closed filters satisfy the filter axioms") {
  std::mt19937_64 rng(11);
  const auto graphs = connected_graphs(2, 5, 6);
  int found = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto sys = edge_cut_system(graphs[rng() % graphs.size()]);
    const std::uint32_t k = static_cast<std::uint32_t>(rng() % (sys.max_value() + 1));
    const auto m = random_filter(sys, k, rng);
    if (!m) continue;
    ++found;
    const auto fam = to_family(sys, k, *m);
    CHECK(check_family(sys, fam, FamilyKind::filter).holds);
    CHECK(is_filter_literal(sys, *m, k));
  }
  CHECK(found > 50);
}
