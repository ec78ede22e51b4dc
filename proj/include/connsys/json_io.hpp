#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "connsys/audit.hpp"
#include "connsys/connectivity.hpp"
#include "connsys/construction.hpp"
#include "connsys/decomposition.hpp"
#include "connsys/error.hpp"
#include "connsys/family.hpp"
#include "connsys/order.hpp"

namespace connsys::io {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file. Throws ParseError (with the path) on I/O or syntax errors.
Json read_json_file(const std::filesystem::path& path);

/// Instance JSON: {"ground_set": [...], "function": {"type": "table"|"graph_edge_cut"|"graph_vertex_cut", ...}}.
/// The ground set may be omitted for graph kinds (labels e1.. for edges, v0.. for vertices).
ConnectivitySystem parse_instance(const Json& j, const ValidationOptions& opts = {});
ConnectivitySystem load_instance(const std::filesystem::path& path, const ValidationOptions& opts = {});

/// Family JSON: {"k": 2, "sets": [["e1"], ["e1","e2"]]}. `k` overrides the file's bound when given;
/// a file bound that disagrees with an explicit k is an InvalidParameter.
SetFamily parse_family(const Json& j, const GroundSet& ground, std::optional<Bound> k = std::nullopt);
SetFamily load_family(const std::filesystem::path& path, const GroundSet& ground, std::optional<Bound> k = std::nullopt);

Json instance_json(const ConnectivitySystem& sys);
Json subset_json(const GroundSet& ground, Subset s);
Json subsets_json(const GroundSet& ground, const std::vector<Subset>& sets);
Json family_json(const GroundSet& ground, const SetFamily& f);
Json verdict_json(const GroundSet& ground, const Verdict& v);
Json flags_json(const FamilyFlags& flags);
Json certificate_json(const GroundSet& ground, const Certificate& c);
Certificate parse_certificate(const Json& j, const GroundSet& ground);
Json width_json(const GroundSet& ground, const WidthResult& w, bool with_certificate);
Json duality_json(const GroundSet& ground, const DualityVerdict& v);
Json audit_report_json(const GroundSet& ground, const AuditReport& r);
Json chain_json(const GroundSet& ground, const Chain& c);
Json dilworth_json(const GroundSet& ground, const DilworthResult& d);
Json error_json(const Error& e, const GroundSet* ground);

}  // namespace connsys::io
