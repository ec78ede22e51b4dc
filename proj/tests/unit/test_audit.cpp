#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../support/graphs.hpp"
#include "connsys/audit.hpp"
#include "connsys/json_io.hpp"
#include "helpers.hpp"

using namespace connsys;
using namespace connsys::testing;

namespace {

const AuditReport& find(const std::vector<AuditReport>& reports, TheoremId id) {
  for (const auto& r : reports) {
    if (r.theorem == id) return r;
  }
  FAIL("theorem missing");
  return reports.front();
}

std::string dump_all(const ConnectivitySystem& sys, const std::vector<AuditReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += io::audit_report_json(sys.ground(), r).dump() + "\n";
  return out;
}

}  // namespace

TEST_CASE("theorem selection") {
  CHECK(theorem_selection("all").size() == 9);
  CHECK(theorem_selection("dilworth") ==
        std::vector{TheoremId::antichain_meets_ultrafilter, TheoremId::sequence_chain_no_antichain});
  // Lists come back in canonical theorem order, without duplicates.
  CHECK(theorem_selection("co-tangle-filter,TSC-decomposition,co-tangle-filter") ==
        std::vector{TheoremId::sequence_chain_decomposition, TheoremId::filter_is_cotangle});
  CHECK(code_of([] { theorem_selection("nonsense"); }) == ErrorCode::InvalidParameter);
  CHECK(selection_includes_duality("duality"));
  CHECK_FALSE(selection_includes_duality("chains"));
  for (TheoremId id : all_theorems()) CHECK(parse_theorem(theorem_name(id)) == id);
}

TEST_CASE("fixed findings on the two-element trivial system") {
  const auto sys = zero_on({"x", "y"});
  const auto reports = run_theorem_audit(sys, Bound{0}, all_theorems());
  const auto& nonprincipal = find(reports, TheoremId::sequence_chain_no_ultrafilter);
  CHECK(nonprincipal.status == AuditStatus::verified_at_scale);
  const auto& anti = find(reports, TheoremId::sequence_chain_no_antichain);
  CHECK(anti.status == AuditStatus::counterexample_found);
  CHECK(anti.witness == std::vector{S(sys, "x"), S(sys, "y")});
  for (const auto& r : reports) {
    if (r.status == AuditStatus::counterexample_found) CHECK(witness_reverifies(sys, r));
  }
  // Byte-identical output across runs and worker counts.
  const auto again = run_theorem_audit(sys, Bound{0}, all_theorems(), AuditOptions{4});
  CHECK(dump_all(sys, reports) == dump_all(sys, again));
}

TEST_CASE("every reported counterexample re-verifies") {
  for (const auto& g : connected_graphs(3, 4, 5)) {
    const auto sys = edge_cut_system(g);
    for (std::uint32_t k = 0; k <= sys.max_value(); ++k) {
      for (const auto& r : run_theorem_audit(sys, Bound{k}, all_theorems())) {
        CHECK(r.k == Bound{k});
        CHECK(r.n == sys.size());
        if (r.status == AuditStatus::counterexample_found) {
          CHECK_FALSE(r.witness.empty());
          CHECK(witness_reverifies(sys, r));
        }
      }
    }
  }
}

TEST_CASE("maximal antichains") {
  const std::vector<Subset> fam{Subset{0b001}, Subset{0b010}, Subset{0b011}};
  const auto all = maximal_antichains(fam);
  CHECK(all.size() == 2);
}

TEST_CASE("Dilworth check") {
  const auto c4 = c4_edges();
  const auto d = dilworth_check(c4, Bound{2});
  CHECK(d.family.size() == 13);
  CHECK(d.antichain.size() == 4);
  CHECK(d.cover.size() == 4);
  CHECK(d.equal);
  const auto small = dilworth_check(c4, Bound{1});
  CHECK(small.family.size() == 1);
  CHECK(small.brute_force_cover == 1u);
  CHECK(small.equal);
}
