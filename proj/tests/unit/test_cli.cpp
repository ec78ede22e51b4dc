#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "connsys/cli.hpp"
#include "connsys/json_io.hpp"
#include "helpers.hpp"

using namespace connsys;
using namespace connsys::testing;
using io::Json;

namespace {

const std::string kData = CONNSYS_TEST_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run invoke(std::vector<std::string> args) {
  for (auto& a : args) {
    if (a.rfind("@", 0) == 0) a = kData + "/" + a.substr(1);
  }
  std::ostringstream out, err;
  const int code = connsys::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("connsys-test-" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("validate") {
  const auto ok = invoke({"validate", "@c4-edges.json"});
  REQUIRE(ok.code == 0);
  const auto j = ok.json();
  CHECK(j["result"]["valid"] == true);
  CHECK(j["result"]["max_value"] == 4);
  CHECK(j["command"]["verb"] == "validate");
  CHECK_FALSE(j.contains("timing"));

  const auto bad = invoke({"validate", "@asymmetric.json"});
  CHECK(bad.code == 2);
  CHECK(bad.out.empty());
  CHECK(bad.err.find("SymmetryViolation") != std::string::npos);
  CHECK(bad.err.find("{a}") != std::string::npos);

  CHECK(invoke({"validate", "@not-submodular.json"}).code == 2);
  CHECK(invoke({"validate", "@missing-file.json"}).code == 2);
  CHECK(invoke({"validate", temp_file("broken.json", "{ nope")}).code == 2);
}

TEST_CASE("argument errors and help") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"width", "sideways", "@c4-edges.json"}).code == 2);
  CHECK(invoke({"enumerate", "ultrafilters", "@c4-edges.json"}).code == 2);  // -k missing
  CHECK(invoke({"enumerate", "ultrafilters", "-k", "2", "--limit", "0", "@c4-edges.json"}).code == 2);
  const auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("audit") != std::string::npos);
  CHECK(invoke({"--version"}).out == std::string(connsys::cli::kVersion) + "\n");
}

TEST_CASE("width with certificate round trip") {
  const auto r = invoke({"width", "branch", "@k4-edges.json", "--certificate"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["result"]["width"] == 3);
  const auto cert = temp_file("k4-cert.json", j["result"].dump());
  const auto e = invoke({"width", "branch", "@k4-edges.json", "--eval", cert});
  REQUIRE(e.code == 0);
  CHECK(e.json()["result"]["width"] == 3);

  const auto lin = invoke({"width", "linear", "@c4-edges.json", "--certificate"});
  CHECK(lin.json()["result"]["certificate"]["order"] == Json::parse(R"(["e1","e2","e3","e4"])"));
  const auto ord = temp_file("c4-ord.json", R"({"type": "linear", "order": ["e1", "e3", "e2", "e4"]})");
  CHECK(invoke({"width", "linear", "@c4-edges.json", "--eval", ord}).json()["result"]["width"] == 4);
  const auto bad = temp_file("c4-bad.json", R"({"type": "linear", "order": ["e1", "e1", "e2", "e4"]})");
  CHECK(invoke({"width", "linear", "@c4-edges.json", "--eval", bad}).code == 2);
}

TEST_CASE("family check exit codes") {
  const auto yes = invoke({"family", "check", "--kind", "ultrafilter", "--family", "@c4-full-k1.json", "@c4-edges.json"});
  CHECK(yes.code == 0);
  CHECK(yes.json()["result"]["holds"] == true);
  CHECK(yes.json()["result"]["flags"]["principal"] == "vacuous");
  const auto no = invoke({"family", "check", "--kind", "ultrafilter", "--family", "@c4-full-k2.json", "@c4-edges.json"});
  CHECK(no.code == 1);
  CHECK(no.json()["result"]["violated_axiom"] == "Q4");
  CHECK(no.json()["result"]["witnesses"] == Json::parse(R"([["e1"]])"));
  // Explicit -k that disagrees with the file.
  CHECK(invoke({"family", "check", "--kind", "filter", "-k", "3", "--family", "@c4-full-k2.json", "@c4-edges.json"})
            .code == 2);
  CHECK(invoke({"family", "check", "--kind", "bogus", "--family", "@c4-full-k2.json", "@c4-edges.json"}).code == 2);
}

TEST_CASE("constructions through the CLI") {
  const auto c = invoke({"construct", "ultrafilter", "-k", "2", "@c4-edges.json"});
  REQUIRE(c.code == 0);
  CHECK(c.json()["result"]["verdict"]["holds"] == true);
  const auto e = invoke({"extend", "--family", "@c4-full-k2.json", "@c4-edges.json"});
  REQUIRE(e.code == 0);
  CHECK(e.json()["result"]["ultrafilter"]["size"] == 7);
  const auto g = invoke({"generate", "--subbase", "@pair-subbase.json", "@zero3.json"});
  REQUIRE(g.code == 0);
  CHECK(g.json()["result"]["filter"]["sets"] == Json::parse(R"([["b"],["a","b"],["b","c"],["a","b","c"]])"));
  const auto u = invoke({"ultrafilter-number", "-k", "2", "@c4-edges.json"});
  CHECK(u.json()["result"]["u"] == "none");
  CHECK(invoke({"ultrafilter-number", "-k", "1", "@c4-edges.json"}).json()["result"]["u"] == 1);
  const auto en = invoke({"enumerate", "ultrafilters", "-k", "2", "@c4-edges.json"});
  CHECK(en.json()["result"]["count"] == 4);
  const auto np = invoke({"enumerate", "ultrafilters", "-k", "2", "--non-principal", "@c4-edges.json"});
  CHECK(np.json()["result"]["count"] == 0);
}

TEST_CASE("audit reports") {
  const auto a = invoke({"audit", "--theorems", "dilworth", "-k", "0", "@two-trivial.json"});
  CHECK(a.code == 1);
  const auto reports = a.json()["result"]["runs"][0]["reports"];
  CHECK(reports[1]["theorem"] == "TSC-no-antichain");
  CHECK(reports[1]["witness"] == Json::parse(R"([["x"],["y"]])"));
  const auto d = invoke({"audit", "--theorems", "duality", "--k-range", "0..4", "@c4-edges.json"});
  CHECK(d.code == 0);
  CHECK(d.json()["result"]["runs"].size() == 5);
  CHECK(invoke({"audit", "--theorems", "duality", "--k-range", "3..1", "@c4-edges.json"}).code == 2);
  CHECK(invoke({"audit", "--theorems", "duality", "-k", "1", "--k-range", "0..1", "@c4-edges.json"}).code == 2);
}

TEST_CASE("reports are deterministic across runs and worker counts") {
  const std::vector<std::vector<std::string>> commands{
      {"audit", "--theorems", "all", "--k-range", "0..4", "@c4-edges.json"},
      {"enumerate", "tangles", "-k", "3", "@k4-edges.json"},
      {"width", "branch", "--certificate", "@k4-edges.json"},
      {"dilworth", "-k", "2", "@c4-edges.json"},
  };
  for (const auto& cmd : commands) {
    auto first = invoke(cmd);
    auto second = invoke(cmd);
    CHECK(first.out == second.out);
    auto par = cmd;
    par.insert(par.begin(), {"--parallel", "3"});
    auto third = Json::parse(invoke(par).out);
    auto base = first.json();
    third["command"].erase("parallel");
    base["command"].erase("parallel");
    CHECK(third.dump() == base.dump());
  }
}

TEST_CASE("timing only on request") {
  const auto r = invoke({"--timing", "validate", "@c4-edges.json"});
  CHECK(r.json().contains("timing"));
}
