#include "connsys/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <functional>

#include "connsys/error.hpp"
#include "connsys/json_io.hpp"

namespace connsys::cli {

namespace {

using io::Json;

struct Options {
  unsigned parallel = 1;
  std::uint64_t seed = ValidationOptions{}.seed;
  bool timing = false;

  std::string instance;
  std::string mode;         // width: branch|linear; enumerate: ultrafilters|tangles|single-ultrafilters; construct: ultrafilter
  std::string kind;         // family check
  std::string single_mode = "QS1";
  std::string family_path;  // family check, extend
  std::string subbase_path;
  std::string theorems = "all";
  std::string k_range;
  std::string eval_path;
  std::optional<std::uint32_t> k;
  std::optional<std::size_t> limit;
  bool certificate = false;
  bool non_principal = false;
};

// Outcome of a verb: the result payload and whether it reports a violation.
struct Outcome {
  Json result;
  bool violation = false;
};

Bound need_k(const Options& o) {
  if (!o.k) throw Error(ErrorCode::InvalidParameter, "this command needs -k");
  return Bound{*o.k};
}

SingleMode parse_single_mode(const std::string& s) {
  if (s == "QS1") return SingleMode::QS1;
  if (s == "QSD1") return SingleMode::QSD1;
  throw Error(ErrorCode::InvalidParameter, "--mode must be QS1 or QSD1");
}

std::pair<std::uint32_t, std::uint32_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw Error(ErrorCode::InvalidParameter, "--k-range must look like a..b");
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    const unsigned long lo = std::stoul(a, &used_a), hi = std::stoul(b, &used_b);
    if (used_a != a.size() || used_b != b.size() || lo > hi) throw std::invalid_argument("range");
    return {static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi)};
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidParameter, "--k-range must look like a..b with a <= b");
  }
}

Outcome do_validate(const ConnectivitySystem& sys, const Options&) {
  Json r;
  r["valid"] = true;
  r["n"] = sys.size();
  r["function_type"] = std::string(spec_kind_name(sys.spec()));
  r["max_value"] = sys.max_value();
  if (auto seed = sys.validation_seed()) {
    r["submodularity_check"] = "sampled";
    r["seed"] = *seed;
  } else {
    r["submodularity_check"] = "exhaustive";
  }
  return {r, false};
}

Outcome do_width(const ConnectivitySystem& sys, const Options& o) {
  const GroundSet& g = sys.ground();
  if (!o.eval_path.empty()) {
    const Certificate cert = io::parse_certificate(io::read_json_file(o.eval_path), g);
    Json r;
    if (const auto* d = std::get_if<BranchDecomposition>(&cert)) {
      r["type"] = "branch";
      r["width"] = decomposition_width(sys, *d);
    } else {
      r["type"] = "linear";
      r["width"] = ordering_width(sys, std::get<LinearOrdering>(cert));
    }
    return {r, false};
  }
  WidthResult w;
  if (o.mode == "branch") {
    w = branch_width(sys, o.parallel);
  } else if (o.mode == "linear") {
    w = linear_width(sys);
  } else {
    throw Error(ErrorCode::InvalidParameter, "width mode must be branch or linear");
  }
  Json r;
  r["type"] = o.mode;
  const Json body = io::width_json(g, w, o.certificate);
  for (const auto& [key, value] : body.items()) r[key] = value;
  return {r, false};
}

Outcome do_family_check(const ConnectivitySystem& sys, const Options& o) {
  const auto kind = parse_kind(o.kind);
  if (!kind) throw Error(ErrorCode::InvalidParameter, "unknown family kind '" + o.kind + "'");
  const SetFamily f = io::load_family(o.family_path, sys.ground(), o.k ? std::optional(Bound{*o.k}) : std::nullopt);
  const SingleMode mode = parse_single_mode(o.single_mode);
  const Verdict v = check_family(sys, f, *kind, mode);
  Json r;
  r["kind"] = std::string(kind_name(*kind));
  if (*kind == FamilyKind::single_filter || *kind == FamilyKind::single_ultrafilter) r["mode"] = o.single_mode;
  r["k"] = f.bound().k;
  const Json body = io::verdict_json(sys.ground(), v);
  for (const auto& [key, value] : body.items()) r[key] = value;
  r["flags"] = io::flags_json(classify_family(sys, f));
  return {r, !v.holds};
}

Outcome do_enumerate(const ConnectivitySystem& sys, const Options& o) {
  EnumerationRequest req;
  if (o.mode == "ultrafilters") {
    req.kind = FamilyKind::ultrafilter;
  } else if (o.mode == "tangles") {
    req.kind = FamilyKind::tangle;
  } else if (o.mode == "single-ultrafilters") {
    req.kind = FamilyKind::single_ultrafilter;
  } else {
    throw Error(ErrorCode::InvalidParameter, "enumerate target must be ultrafilters, tangles or single-ultrafilters");
  }
  req.k = need_k(o);
  req.principality = o.non_principal ? Principality::non_principal_only : Principality::any;
  req.limit = o.limit;
  req.mode = parse_single_mode(o.single_mode);
  req.workers = o.parallel;
  const auto fams = enumerate_families(sys, req);
  Json r;
  r["kind"] = std::string(kind_name(req.kind));
  r["k"] = req.k.k;
  r["non_principal_only"] = o.non_principal;
  r["count"] = fams.size();
  Json list = Json::array();
  for (const auto& f : fams) list.push_back(io::family_json(sys.ground(), f));
  r["families"] = list;
  return {r, false};
}

Outcome do_construct(const ConnectivitySystem& sys, const Options& o) {
  if (o.mode != "ultrafilter") throw Error(ErrorCode::InvalidParameter, "construct target must be ultrafilter");
  const auto res = construct_ultrafilter_counted(sys, need_k(o));
  Json r;
  r["family"] = io::family_json(sys.ground(), res.family);
  r["operations"] = res.operations;
  r["verdict"] = io::verdict_json(sys.ground(), check_family(sys, res.family, FamilyKind::ultrafilter));
  r["flags"] = io::flags_json(classify_family(sys, res.family));
  return {r, false};
}

Outcome do_extend(const ConnectivitySystem& sys, const Options& o) {
  const SetFamily f = io::load_family(o.family_path, sys.ground(), o.k ? std::optional(Bound{*o.k}) : std::nullopt);
  const SetFamily u = extend_filter_to_ultrafilter(sys, f);
  Json r;
  r["input"] = io::family_json(sys.ground(), f);
  r["ultrafilter"] = io::family_json(sys.ground(), u);
  r["flags"] = io::flags_json(classify_family(sys, u));
  return {r, false};
}

Outcome do_generate(const ConnectivitySystem& sys, const Options& o) {
  const SetFamily s = io::load_family(o.subbase_path, sys.ground(), o.k ? std::optional(Bound{*o.k}) : std::nullopt);
  const SetFamily f = generate_from_subbase(sys, s);
  Json r;
  r["subbase"] = io::family_json(sys.ground(), s);
  r["filter"] = io::family_json(sys.ground(), f);
  r["ultrafilter_subbase"] = check_family(sys, s, FamilyKind::ultrafilter_subbase).holds;
  r["is_ultrafilter"] = check_family(sys, f, FamilyKind::ultrafilter).holds;
  return {r, false};
}

Outcome do_audit(const ConnectivitySystem& sys, const Options& o) {
  std::uint32_t lo = 0, hi = 0;
  if (!o.k_range.empty()) {
    if (o.k) throw Error(ErrorCode::InvalidParameter, "give either -k or --k-range, not both");
    std::tie(lo, hi) = parse_range(o.k_range);
  } else {
    lo = hi = need_k(o).k;
  }
  const auto ids = theorem_selection(o.theorems);
  const bool duality = selection_includes_duality(o.theorems);
  Json runs = Json::array();
  bool violation = false;
  std::size_t counterexamples = 0;
  for (std::uint32_t k = lo; k <= hi; ++k) {
    Json run;
    run["k"] = k;
    Json reports = Json::array();
    for (const auto& rep : run_theorem_audit(sys, Bound{k}, ids, AuditOptions{o.parallel})) {
      if (rep.status == AuditStatus::counterexample_found) {
        violation = true;
        ++counterexamples;
      }
      reports.push_back(io::audit_report_json(sys.ground(), rep));
    }
    run["reports"] = reports;
    if (duality) {
      Json verdicts = Json::array();
      for (DualityKind kind : {DualityKind::ultrafilter, DualityKind::tangle, DualityKind::single_ultrafilter}) {
        const DualityVerdict v = duality_audit(sys, Bound{k}, kind, o.parallel);
        // Order-1 tangles are degenerate; they are reported but not counted as findings.
        if (!v.consistent && !(kind == DualityKind::tangle && k == 0)) violation = true;
        verdicts.push_back(io::duality_json(sys.ground(), v));
      }
      run["duality"] = verdicts;
    }
    runs.push_back(run);
  }
  Json r;
  r["theorems"] = o.theorems;
  r["counterexamples"] = counterexamples;
  r["runs"] = runs;
  return {r, violation};
}

Outcome do_dilworth(const ConnectivitySystem& sys, const Options& o) {
  const DilworthResult d = dilworth_check(sys, need_k(o));
  return {io::dilworth_json(sys.ground(), d), !d.equal};
}

Outcome do_ultrafilter_number(const ConnectivitySystem& sys, const Options& o) {
  const Bound k = need_k(o);
  const auto res = ultrafilter_number(sys, k);
  Json r;
  r["k"] = k.k;
  r["u"] = res.u ? Json(*res.u) : Json("none");
  r["witness_prefilter"] = res.witness_prefilter ? io::family_json(sys.ground(), *res.witness_prefilter) : Json(nullptr);
  r["ultrafilter"] = res.ultrafilter ? io::family_json(sys.ground(), *res.ultrafilter) : Json(nullptr);
  r["non_principal_ultrafilters"] = res.candidates;
  return {r, false};
}

Json command_echo(const std::string& verb, const Options& o) {
  Json c;
  c["verb"] = verb;
  if (!o.mode.empty()) c["target"] = o.mode;
  c["instance"] = o.instance;
  if (!o.kind.empty()) c["kind"] = o.kind;
  if (o.k) c["k"] = *o.k;
  if (!o.k_range.empty()) c["k_range"] = o.k_range;
  if (!o.family_path.empty()) c["family"] = o.family_path;
  if (!o.subbase_path.empty()) c["subbase"] = o.subbase_path;
  if (verb == "audit") c["theorems"] = o.theorems;
  if (o.limit) c["limit"] = *o.limit;
  if (o.non_principal) c["non_principal"] = true;
  if (o.certificate) c["certificate"] = true;
  if (!o.eval_path.empty()) c["eval"] = o.eval_path;
  c["parallel"] = o.parallel;
  c["seed"] = o.seed;
  return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Connectivity systems: families, widths and theorem audits", "connsys"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.add_option("--parallel", o.parallel, "worker threads for searches")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", o.seed, "seed for sampled validation of large systems");
  app.add_flag("--timing", o.timing, "include wall-clock timing in the report");

  std::string verb;
  std::function<Outcome(const ConnectivitySystem&, const Options&)> action;
  auto verb_cmd = [&](const std::string& name, const std::string& help,
                      std::function<Outcome(const ConnectivitySystem&, const Options&)> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&, name, fn] {
      verb = name;
      action = fn;
    });
    return sub;
  };
  auto add_instance = [&](CLI::App* sub) { sub->add_option("instance", o.instance, "instance JSON file")->required(); };
  auto add_k = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("-k", o.k, "efficiency bound (members satisfy f(A) <= k)");
    if (required) opt->required();
  };

  auto* validate = verb_cmd("validate", "validate an instance", do_validate);
  add_instance(validate);

  auto* width = verb_cmd("width", "exact branch or linear width", do_width);
  width->add_option("mode", o.mode, "branch or linear")->required()->check(CLI::IsMember({"branch", "linear"}));
  add_instance(width);
  width->add_flag("--certificate", o.certificate, "include an optimal certificate");
  width->add_option("--eval", o.eval_path, "evaluate a certificate file instead of searching");

  auto* family = app.add_subcommand("family", "family operations");
  family->require_subcommand(1);
  auto* check = family->add_subcommand("check", "check a family against a kind's axioms");
  check->callback([&] {
    verb = "family check";
    action = do_family_check;
  });
  check->add_option("--kind", o.kind, "family kind")->required();
  add_k(check, false);
  check->add_option("--family", o.family_path, "family JSON file")->required();
  check->add_option("--mode", o.single_mode, "single-filter deletion rule (QS1 or QSD1)");
  add_instance(check);

  auto* enumerate = verb_cmd("enumerate", "enumerate ultrafilters, tangles or single-ultrafilters", do_enumerate);
  enumerate->add_option("target", o.mode, "ultrafilters, tangles or single-ultrafilters")->required();
  add_k(enumerate, true);
  enumerate->add_flag("--non-principal", o.non_principal, "only families without singleton members");
  enumerate->add_option("--limit", o.limit, "stop after N families")->check(CLI::PositiveNumber);
  enumerate->add_option("--mode", o.single_mode, "single-ultrafilter deletion rule (QS1 or QSD1)");
  add_instance(enumerate);

  auto* construct = verb_cmd("construct", "construct an ultrafilter", do_construct);
  construct->add_option("target", o.mode, "ultrafilter")->required();
  add_k(construct, true);
  add_instance(construct);

  auto* extend = verb_cmd("extend", "extend a filter to an ultrafilter", do_extend);
  extend->add_option("--family", o.family_path, "filter JSON file")->required();
  add_k(extend, false);
  add_instance(extend);

  auto* generate = verb_cmd("generate", "generate a filter from a subbase", do_generate);
  generate->add_option("--subbase", o.subbase_path, "subbase JSON file")->required();
  add_k(generate, false);
  add_instance(generate);

  auto* audit = verb_cmd("audit", "run theorem audits", do_audit);
  audit->add_option("--theorems", o.theorems, "all|duality|dilworth|chains|families or theorem names");
  add_k(audit, false);
  audit->add_option("--k-range", o.k_range, "inclusive range a..b");
  add_instance(audit);

  auto* dilworth = verb_cmd("dilworth", "maximum antichain and minimum chain cover", do_dilworth);
  add_k(dilworth, true);
  add_instance(dilworth);

  auto* unum = verb_cmd("ultrafilter-number", "smallest prefilter generating a non-principal ultrafilter",
                        do_ultrafilter_number);
  add_k(unum, true);
  add_instance(unum);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "connsys: " << e.what() << "\n";
    return 2;
  }
  if (!action) {
    err << "connsys: no command given\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  std::optional<GroundSet> ground;
  try {
    const Json doc = io::read_json_file(o.instance);
    if (doc.is_object() && doc.contains("ground_set") && doc["ground_set"].is_array()) {
      try {
        ground = GroundSet(doc["ground_set"].get<std::vector<std::string>>());
      } catch (const std::exception&) {
      }
    }
    const ConnectivitySystem sys = io::parse_instance(doc, ValidationOptions{o.seed});
    ground = sys.ground();
    Outcome res = action(sys, o);
    Json report;
    report["command"] = command_echo(verb, o);
    report["version"] = kVersion;
    report["result"] = std::move(res.result);
    if (o.timing) {
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      report["timing"] = {{"elapsed_ms", ms}};
    }
    out << report.dump(2) << "\n";
    return res.violation ? 1 : 0;
  } catch (const Error& e) {
    err << "connsys: " << e.what() << "\n";
    if (!e.witnesses().empty()) {
      err << "connsys: witnesses:";
      for (Subset s : e.witnesses()) err << " {" << (ground ? ground->encode(s) : std::to_string(s.bits)) << "}";
      err << "\n";
    }
    return 2;
  } catch (const std::exception& e) {
    err << "connsys: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace connsys::cli
