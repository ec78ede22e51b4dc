#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../support/graphs.hpp"
#include "../support/oracles.hpp"
#include "connsys/decomposition.hpp"
#include "connsys/order.hpp"
#include "helpers.hpp"

using namespace connsys;
using namespace connsys::testing;

TEST_CASE("width anchors") {
  const auto c4 = c4_edges();
  const auto w = branch_width(c4);
  CHECK(w.width == 2);
  CHECK(decomposition_width(c4, std::get<BranchDecomposition>(w.certificate)) == 2);
  const auto k4 = k4_edges();
  const auto wk = branch_width(k4);
  CHECK(wk.width == 3);
  CHECK(decomposition_width(k4, std::get<BranchDecomposition>(wk.certificate)) == 3);
  const auto minsize = table_system({"a", "b", "c", "d"}, {{"", 0}, {"a", 1}, {"b", 1}, {"c", 1}, {"d", 1},
                                                           {"a,b", 2}, {"a,c", 2}, {"a,d", 2}});
  CHECK(branch_width(minsize).width == 2);
  CHECK(branch_width(zero_on({"x"})).width == 0);
  CHECK(branch_width(zero_on({"x", "y"})).width == 0);
}

TEST_CASE("ordering widths") {
  const auto c4 = c4_edges();
  CHECK(ordering_width(c4, LinearOrdering{{0, 2, 1, 3}}) == 4);
  CHECK(ordering_width(c4, LinearOrdering{{0, 1, 2, 3}}) == 2);
  const auto lw = linear_width(c4);
  CHECK(lw.width == 2);
  CHECK(std::get<LinearOrdering>(lw.certificate).order == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(code_of([&] { ordering_width(c4, LinearOrdering{{0, 1, 1, 3}}); }) == ErrorCode::NotAPermutation);
  CHECK(code_of([&] { ordering_width(c4, LinearOrdering{{0, 1, 2}}); }) == ErrorCode::NotAPermutation);
}

TEST_CASE("malformed trees are rejected") {
  const auto c4 = c4_edges();
  BranchDecomposition d = std::get<BranchDecomposition>(branch_width(c4).certificate);
  SUBCASE("two roots") {
    d.parent[1] = -1;
    CHECK(code_of([&] { decomposition_width(c4, d); }) == ErrorCode::MalformedTree);
  }
  SUBCASE("missing element") {
    for (auto& l : d.leaf) {
      if (l == 3u) l = 2;
    }
    CHECK(code_of([&] { decomposition_width(c4, d); }) == ErrorCode::MalformedTree);
  }
  SUBCASE("cycle") {
    d.parent[4] = 5;
    d.parent[5] = 4;
    CHECK(code_of([&] { decomposition_width(c4, d); }) == ErrorCode::MalformedTree);
  }
  SUBCASE("wrong size") {
    d.parent.pop_back();
    d.leaf.pop_back();
    CHECK(code_of([&] { decomposition_width(c4, d); }) == ErrorCode::MalformedTree);
  }
}

TEST_CASE("branch width matches the split recursion on graphs up to 7 edges") {
  for (const auto& g : connected_graphs(1, 7, 8)) {
    const auto sys = edge_cut_system(g);
    const auto w = branch_width(sys);
    REQUIRE(w.width == branch_width_oracle(sys));
    REQUIRE(decomposition_width(sys, std::get<BranchDecomposition>(w.certificate)) == w.width);
  }
  for (const auto& g : connected_graphs(1, 8, 6)) {
    const auto sys = vertex_cut_system(g);
    REQUIRE(branch_width(sys).width == branch_width_oracle(sys));
  }
}

TEST_CASE("branch width on four-element tables") {
  for (const auto& sys : all_small_tables(4, 2)) {
    const auto w = branch_width(sys);
    REQUIRE(w.width == branch_width_oracle(sys));
  }
}

TEST_CASE("linear width matches permutation search") {
  for (const auto& g : connected_graphs(1, 7, 8)) {
    const auto sys = edge_cut_system(g);
    const auto w = linear_width(sys);
    REQUIRE(w.width == linear_width_oracle(sys));
    const auto& ord = std::get<LinearOrdering>(w.certificate);
    REQUIRE(ordering_width(sys, ord) == w.width);
    // The caterpillar never beats the branch width and never loses to the ordering.
    const auto cat = caterpillar(ord);
    CHECK(decomposition_width(sys, cat) <= w.width);
    CHECK(decomposition_width(sys, cat) >= branch_width(sys).width);
  }
}

TEST_CASE("parallel branch width is deterministic") {
  for (const auto& g : connected_graphs(6, 7, 8)) {
    const auto sys = edge_cut_system(g);
    const auto one = branch_width(sys, 1);
    const auto four = branch_width(sys, 4);
    CHECK(one.width == four.width);
    CHECK(std::get<BranchDecomposition>(one.certificate) == std::get<BranchDecomposition>(four.certificate));
  }
}

TEST_CASE("subtree sets cover the elements") {
  const auto sys = k4_edges();
  const auto d = std::get<BranchDecomposition>(branch_width(sys).certificate);
  const auto sets = subtree_sets(d, sys.size());
  REQUIRE(sets.size() == d.node_count());
  for (std::size_t v = 0; v < d.node_count(); ++v) {
    if (d.parent[v] < 0) {
      CHECK(sets[v] == sys.full());
    } else if (d.leaf[v]) {
      CHECK(sets[v] == Subset::singleton(*d.leaf[v]));
    }
  }
}

TEST_CASE("duality holds on small graphs") {
  for (const auto& g : connected_graphs(3, 5, 6)) {
    const auto sys = edge_cut_system(g);
    for (std::uint32_t k = 0; k <= sys.max_value(); ++k) {
      for (DualityKind kind : {DualityKind::ultrafilter, DualityKind::tangle, DualityKind::single_ultrafilter}) {
        const auto v = duality_audit(sys, Bound{k}, kind);
        if (kind == DualityKind::tangle && k == 0) continue;
        CHECK(v.consistent);
        CHECK(v.width_side == (v.width <= k));
        CHECK(v.obstruction_side == !v.obstruction.has_value());
      }
    }
  }
}

TEST_CASE("chain to decomposition") {
  const auto c4 = c4_edges();
  const auto chain = find_sequence_chain(c4, Bound{2});
  REQUIRE(chain);
  const auto w = chain_to_decomposition(c4, chain->sets, Bound{2});
  CHECK(w.width == 2);
  const auto& ord = std::get<LinearOrdering>(w.certificate);
  CHECK(ord.order == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(decomposition_width(c4, caterpillar(ord)) <= w.width);
  const auto trivial = zero_on({"x", "y"});
  CHECK(chain_to_decomposition(trivial, {Subset{}, Subset{0b01}, Subset{0b11}}).width == 0);
  const std::vector<Subset> skewed{Subset{}, S(c4, "e1"), S(c4, "e1,e3"), S(c4, "e1,e2,e3"), c4.full()};
  CHECK(chain_to_decomposition(c4, skewed).width == 4);
  CHECK(code_of([&] { chain_to_decomposition(c4, skewed, Bound{2}); }) == ErrorCode::NotASequenceChain);
  CHECK(code_of([&] { chain_to_decomposition(c4, {Subset{}, S(c4, "e1,e2"), c4.full()}); }) ==
        ErrorCode::NotSingleElement);
  CHECK(code_of([&] { chain_to_decomposition(c4, {S(c4, "e1"), c4.full()}); }) == ErrorCode::NotASequenceChain);
}
