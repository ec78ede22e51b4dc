#include "connsys/json_io.hpp"

#include <fstream>
#include <sstream>

#include "connsys/error.hpp"

namespace connsys::io {

namespace {

std::uint64_t as_natural(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    throw Error(ErrorCode::ParseError, what + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

SimpleGraph parse_graph(const Json& fn) {
  if (!fn.contains("vertices") || !fn.contains("edges")) {
    throw Error(ErrorCode::ParseError, "graph function needs \"vertices\" and \"edges\"");
  }
  SimpleGraph g;
  g.vertices = as_natural(fn.at("vertices"), "vertices");
  if (!fn.at("edges").is_array()) throw Error(ErrorCode::ParseError, "\"edges\" must be an array");
  for (const auto& e : fn.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::ParseError, "each edge must be a pair of vertex indices");
    g.edges.emplace_back(as_natural(e[0], "edge endpoint"), as_natural(e[1], "edge endpoint"));
  }
  return g;
}

std::vector<std::string> label_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, what + " must be an array of labels");
  std::vector<std::string> out;
  for (const auto& l : j) {
    if (!l.is_string()) throw Error(ErrorCode::ParseError, what + " must contain strings");
    out.push_back(l.get<std::string>());
  }
  return out;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

ConnectivitySystem parse_instance(const Json& j, const ValidationOptions& opts) {
  if (!j.is_object() || !j.contains("function") || !j.at("function").is_object()) {
    throw Error(ErrorCode::ParseError, "instance must be an object with a \"function\" object");
  }
  const Json& fn = j.at("function");
  if (!fn.contains("type") || !fn.at("type").is_string()) throw Error(ErrorCode::ParseError, "function needs a \"type\"");
  const std::string type = fn.at("type").get<std::string>();
  std::optional<GroundSet> ground;
  if (j.contains("ground_set")) {
    auto labels = label_list(j.at("ground_set"), "ground_set");
    if (labels.size() > kMaxGroundSize) {
      throw Error(ErrorCode::GroundSetTooLarge, "ground set has " + std::to_string(labels.size()) +
                                                    " elements; the limit is " + std::to_string(kMaxGroundSize));
    }
    ground = GroundSet(std::move(labels));
  }

  if (type == "table") {
    if (!ground) throw Error(ErrorCode::ParseError, "table instances need a \"ground_set\"");
    if (!fn.contains("values") || !fn.at("values").is_object()) {
      throw Error(ErrorCode::ParseError, "table function needs a \"values\" object");
    }
    TableFunction t;
    for (const auto& [key, value] : fn.at("values").items()) {
      const std::uint64_t v = as_natural(value, "table value for \"" + key + "\"");
      if (v > UINT32_MAX) throw Error(ErrorCode::ParseError, "table value too large");
      t.values.emplace_back(ground->decode(key), static_cast<std::uint32_t>(v));
    }
    return build_system(std::move(*ground), std::move(t), opts);
  }
  if (type == "graph_edge_cut" || type == "graph_vertex_cut") {
    SimpleGraph g = parse_graph(fn);
    const bool edges = type == "graph_edge_cut";
    const std::size_t n = edges ? g.edges.size() : g.vertices;
    if (n > kMaxGroundSize) {
      throw Error(ErrorCode::GroundSetTooLarge,
                  "ground set has " + std::to_string(n) + " elements; the limit is " + std::to_string(kMaxGroundSize));
    }
    if (!ground) ground = edges ? GroundSet::numbered(n, "e") : GroundSet::numbered(n, "v", true);
    if (ground->size() != n) {
      throw Error(ErrorCode::GroundSetMismatch, "ground_set has " + std::to_string(ground->size()) +
                                                    " labels but the graph has " + std::to_string(n) +
                                                    (edges ? " edges" : " vertices"));
    }
    if (edges) return build_system(std::move(*ground), EdgeCutGraph{std::move(g)}, opts);
    return build_system(std::move(*ground), VertexCutGraph{std::move(g)}, opts);
  }
  throw Error(ErrorCode::ParseError, "unknown function type \"" + type + "\"");
}

ConnectivitySystem load_instance(const std::filesystem::path& path, const ValidationOptions& opts) {
  return parse_instance(read_json_file(path), opts);
}

SetFamily parse_family(const Json& j, const GroundSet& ground, std::optional<Bound> k) {
  if (!j.is_object() || !j.contains("sets") || !j.at("sets").is_array()) {
    throw Error(ErrorCode::ParseError, "family must be an object with a \"sets\" array");
  }
  std::optional<Bound> file_k;
  if (j.contains("k")) file_k = Bound{static_cast<std::uint32_t>(as_natural(j.at("k"), "k"))};
  if (k && file_k && *k != *file_k) {
    throw Error(ErrorCode::InvalidParameter, "family file declares k=" + std::to_string(file_k->k) +
                                                 " but k=" + std::to_string(k->k) + " was requested");
  }
  const auto bound = k ? k : file_k;
  if (!bound) throw Error(ErrorCode::InvalidParameter, "no bound k given for the family");
  std::vector<Subset> sets;
  for (const auto& s : j.at("sets")) sets.push_back(ground.from_labels(label_list(s, "family member")));
  return SetFamily(ground.size(), *bound, std::move(sets));
}

SetFamily load_family(const std::filesystem::path& path, const GroundSet& ground, std::optional<Bound> k) {
  return parse_family(read_json_file(path), ground, k);
}

Json instance_json(const ConnectivitySystem& sys) {
  Json j;
  j["ground_set"] = sys.ground().labels();
  Json fn;
  fn["type"] = std::string(spec_kind_name(sys.spec()));
  if (std::holds_alternative<TableFunction>(sys.spec())) {
    Json values = Json::object();
    const auto v = sys.values();
    for (std::uint32_t a = 0; a < v.size(); ++a) values[sys.ground().encode(Subset{a})] = v[a];
    fn["values"] = values;
  } else {
    const SimpleGraph& g = std::holds_alternative<EdgeCutGraph>(sys.spec())
                               ? std::get<EdgeCutGraph>(sys.spec()).graph
                               : std::get<VertexCutGraph>(sys.spec()).graph;
    fn["vertices"] = g.vertices;
    Json edges = Json::array();
    for (auto [u, v] : g.edges) edges.push_back({u, v});
    fn["edges"] = edges;
  }
  j["function"] = fn;
  return j;
}

Json subset_json(const GroundSet& ground, Subset s) {
  Json out = Json::array();
  for (std::size_t i : elements_of(s)) out.push_back(ground.label(i));
  return out;
}

Json subsets_json(const GroundSet& ground, const std::vector<Subset>& sets) {
  Json out = Json::array();
  for (Subset s : sets) out.push_back(subset_json(ground, s));
  return out;
}

Json family_json(const GroundSet& ground, const SetFamily& f) {
  Json j;
  j["k"] = f.bound().k;
  j["order"] = f.bound().order();
  j["size"] = f.size();
  j["sets"] = subsets_json(ground, f.members());
  return j;
}

Json verdict_json(const GroundSet& ground, const Verdict& v) {
  Json j;
  j["holds"] = v.holds;
  j["violated_axiom"] = v.violated_axiom ? Json(*v.violated_axiom) : Json(nullptr);
  j["witnesses"] = subsets_json(ground, v.witnesses);
  if (v.ft1) j["ft1"] = *v.ft1;
  return j;
}

Json flags_json(const FamilyFlags& flags) {
  Json j;
  j["principal"] = std::string(tri_state_name(flags.principal));
  j["non_principal"] = std::string(tri_state_name(flags.non_principal));
  j["uniform"] = flags.uniform;
  return j;
}

Json certificate_json(const GroundSet& ground, const Certificate& c) {
  Json j;
  if (const auto* d = std::get_if<BranchDecomposition>(&c)) {
    j["type"] = "branch";
    j["parent"] = d->parent;
    Json labels = Json::array();
    for (const auto& l : d->leaf) labels.push_back(l ? Json(ground.label(*l)) : Json(nullptr));
    j["labels"] = labels;
  } else {
    const auto& ord = std::get<LinearOrdering>(c);
    j["type"] = "linear";
    Json order = Json::array();
    for (std::size_t e : ord.order) order.push_back(ground.label(e));
    j["order"] = order;
  }
  return j;
}

Certificate parse_certificate(const Json& in, const GroundSet& ground) {
  // Accept either a bare certificate or a width report that carries one.
  const Json& j = in.contains("certificate") ? in.at("certificate") : in;
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw Error(ErrorCode::ParseError, "certificate needs a \"type\" of \"branch\" or \"linear\"");
  }
  const std::string type = j.at("type").get<std::string>();
  auto resolve = [&](const Json& l) {
    if (!l.is_string()) throw Error(ErrorCode::ParseError, "certificate labels must be strings");
    auto idx = ground.index_of(l.get<std::string>());
    if (!idx) throw Error(ErrorCode::UnknownLabel, "unknown element label '" + l.get<std::string>() + "'");
    return *idx;
  };
  if (type == "linear") {
    if (!j.contains("order") || !j.at("order").is_array()) throw Error(ErrorCode::ParseError, "linear certificate needs \"order\"");
    LinearOrdering ord;
    for (const auto& l : j.at("order")) ord.order.push_back(resolve(l));
    return ord;
  }
  if (type == "branch") {
    if (!j.contains("parent") || !j.contains("labels") || !j.at("parent").is_array() || !j.at("labels").is_array()) {
      throw Error(ErrorCode::ParseError, "branch certificate needs \"parent\" and \"labels\" arrays");
    }
    BranchDecomposition d;
    for (const auto& p : j.at("parent")) {
      if (!p.is_number_integer()) throw Error(ErrorCode::ParseError, "parent entries must be integers");
      d.parent.push_back(p.get<int>());
    }
    for (const auto& l : j.at("labels")) d.leaf.push_back(l.is_null() ? std::nullopt : std::optional(resolve(l)));
    return d;
  }
  throw Error(ErrorCode::ParseError, "unknown certificate type \"" + type + "\"");
}

Json width_json(const GroundSet& ground, const WidthResult& w, bool with_certificate) {
  Json j;
  j["width"] = w.width;
  if (with_certificate) j["certificate"] = certificate_json(ground, w.certificate);
  return j;
}

Json duality_json(const GroundSet& ground, const DualityVerdict& v) {
  Json j;
  j["kind"] = std::string(duality_kind_name(v.kind));
  j["k"] = v.k.k;
  j["width"] = v.width;
  j["width_side"] = v.width_side;
  j["obstruction_side"] = v.obstruction_side;
  j["consistent"] = v.consistent;
  j["obstruction"] = v.obstruction ? family_json(ground, *v.obstruction) : Json(nullptr);
  if (v.certificate) j["certificate"] = certificate_json(ground, v.certificate->certificate);
  return j;
}

Json audit_report_json(const GroundSet& ground, const AuditReport& r) {
  Json j;
  j["theorem"] = std::string(theorem_name(r.theorem));
  j["status"] = std::string(audit_status_name(r.status));
  j["k"] = r.k.k;
  j["n"] = r.n;
  j["witness"] = subsets_json(ground, r.witness);
  Json fams = Json::array();
  for (const auto& f : r.witness_families) fams.push_back(family_json(ground, f));
  j["witness_families"] = fams;
  j["instances"] = r.instances;
  j["vacuous"] = r.vacuous;
  j["note"] = r.note;
  return j;
}

Json chain_json(const GroundSet& ground, const Chain& c) {
  Json j;
  j["k"] = c.k.k;
  j["sets"] = subsets_json(ground, c.sets);
  return j;
}

Json dilworth_json(const GroundSet& ground, const DilworthResult& d) {
  Json j;
  j["k"] = d.k.k;
  j["family_size"] = d.family.size();
  j["max_antichain"] = subsets_json(ground, d.antichain);
  j["antichain_size"] = d.antichain.size();
  Json cover = Json::array();
  for (const auto& c : d.cover) cover.push_back(subsets_json(ground, c));
  j["chain_cover"] = cover;
  j["cover_size"] = d.cover.size();
  j["brute_force_cover_size"] = d.brute_force_cover ? Json(*d.brute_force_cover) : Json(nullptr);
  j["equal"] = d.equal;
  return j;
}

Json error_json(const Error& e, const GroundSet* ground) {
  Json j;
  j["code"] = std::string(code_name(e.code()));
  j["message"] = e.what();
  if (ground != nullptr && !e.witnesses().empty()) j["witnesses"] = subsets_json(*ground, e.witnesses());
  return j;
}

}  // namespace connsys::io
