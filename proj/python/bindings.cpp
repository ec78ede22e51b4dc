#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "connsys/audit.hpp"
#include "connsys/construction.hpp"
#include "connsys/decomposition.hpp"
#include "connsys/json_io.hpp"
#include "connsys/order.hpp"

namespace py = pybind11;
using namespace connsys;
using io::Json;

namespace {

using Sets = std::vector<std::vector<std::string>>;

FamilyKind kind_from(const std::string& name) {
  const auto kind = parse_kind(name);
  if (!kind) throw Error(ErrorCode::InvalidParameter, "unknown family kind '" + name + "'");
  return *kind;
}

SingleMode mode_from(const std::string& name) {
  if (name == "QS1") return SingleMode::QS1;
  if (name == "QSD1") return SingleMode::QSD1;
  throw Error(ErrorCode::InvalidParameter, "mode must be QS1 or QSD1");
}

SetFamily family_from(const ConnectivitySystem& sys, const Sets& sets, std::uint32_t k) {
  std::vector<Subset> members;
  for (const auto& s : sets) members.push_back(sys.ground().from_labels(s));
  return SetFamily(sys.size(), Bound{k}, std::move(members));
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Connectivity systems: set families, widths and theorem audits (JSON-returning core)";

  // Held for the life of the process; the translator may run after module teardown starts.
  static PyObject* error_type = py::exception<Error>(m, "ConnsysError", PyExc_RuntimeError).inc_ref().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type)(e.what());
      exc.attr("code") = std::string(code_name(e.code()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def("version", [] { return std::string("1.0.0"); });

  py::class_<ConnectivitySystem>(m, "System")
      .def_static(
          "from_json", [](const std::string& text, std::uint64_t seed) {
            return io::parse_instance(Json::parse(text), ValidationOptions{seed});
          },
          py::arg("text"), py::arg("seed") = ValidationOptions{}.seed)
      .def_static(
          "edge_cut",
          [](std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
            return edge_cut_system(SimpleGraph{vertices, edges});
          },
          py::arg("vertices"), py::arg("edges"))
      .def_static(
          "vertex_cut",
          [](std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
            return vertex_cut_system(SimpleGraph{vertices, edges});
          },
          py::arg("vertices"), py::arg("edges"))
      .def_property_readonly("size", &ConnectivitySystem::size)
      .def_property_readonly("labels", [](const ConnectivitySystem& s) { return s.ground().labels(); })
      .def_property_readonly("max_value", &ConnectivitySystem::max_value)
      .def("evaluate",
           [](const ConnectivitySystem& s, const std::vector<std::string>& labels) {
             return s.evaluate(s.ground().from_labels(labels));
           })
      .def("to_json", [](const ConnectivitySystem& s) { return dump(io::instance_json(s)); })
      .def(
          "width",
          [](const ConnectivitySystem& s, const std::string& type, unsigned workers) {
            if (type == "branch") return dump(io::width_json(s.ground(), branch_width(s, workers), true));
            if (type == "linear") return dump(io::width_json(s.ground(), linear_width(s), true));
            throw Error(ErrorCode::InvalidParameter, "width type must be branch or linear");
          },
          py::arg("type") = "branch", py::arg("workers") = 1)
      .def("certificate_width",
           [](const ConnectivitySystem& s, const std::string& text) {
             const Certificate c = io::parse_certificate(Json::parse(text), s.ground());
             if (const auto* d = std::get_if<BranchDecomposition>(&c)) return decomposition_width(s, *d);
             return ordering_width(s, std::get<LinearOrdering>(c));
           })
      .def(
          "check_family",
          [](const ConnectivitySystem& s, const std::string& kind, const Sets& sets, std::uint32_t k,
             const std::string& mode) {
            const auto f = family_from(s, sets, k);
            Json j = io::verdict_json(s.ground(), check_family(s, f, kind_from(kind), mode_from(mode)));
            j["flags"] = io::flags_json(classify_family(s, f));
            return dump(j);
          },
          py::arg("kind"), py::arg("sets"), py::arg("k"), py::arg("mode") = "QS1")
      .def(
          "enumerate",
          [](const ConnectivitySystem& s, const std::string& kind, std::uint32_t k, bool non_principal,
             std::optional<std::size_t> limit, unsigned workers) {
            EnumerationRequest req;
            req.kind = kind_from(kind);
            req.k = Bound{k};
            req.principality = non_principal ? Principality::non_principal_only : Principality::any;
            req.limit = limit;
            req.workers = workers;
            Json out = Json::array();
            for (const auto& f : enumerate_families(s, req)) out.push_back(io::family_json(s.ground(), f));
            return dump(out);
          },
          py::arg("kind"), py::arg("k"), py::arg("non_principal") = false, py::arg("limit") = py::none(),
          py::arg("workers") = 1)
      .def("construct_ultrafilter",
           [](const ConnectivitySystem& s, std::uint32_t k) {
             const auto r = construct_ultrafilter_counted(s, Bound{k});
             Json j = io::family_json(s.ground(), r.family);
             j["operations"] = r.operations;
             return dump(j);
           })
      .def("extend_filter",
           [](const ConnectivitySystem& s, const Sets& sets, std::uint32_t k) {
             return dump(io::family_json(s.ground(), extend_filter_to_ultrafilter(s, family_from(s, sets, k))));
           })
      .def("generate",
           [](const ConnectivitySystem& s, const Sets& sets, std::uint32_t k) {
             return dump(io::family_json(s.ground(), generate_from_subbase(s, family_from(s, sets, k))));
           })
      .def("ultrafilter_number",
           [](const ConnectivitySystem& s, std::uint32_t k) {
             const auto r = ultrafilter_number(s, Bound{k});
             Json j;
             j["u"] = r.u ? Json(*r.u) : Json(nullptr);
             j["witness_prefilter"] = r.witness_prefilter ? io::family_json(s.ground(), *r.witness_prefilter) : Json(nullptr);
             return dump(j);
           })
      .def("duality",
           [](const ConnectivitySystem& s, const std::string& kind, std::uint32_t k) {
             DualityKind d;
             if (kind == "ultrafilter") d = DualityKind::ultrafilter;
             else if (kind == "tangle") d = DualityKind::tangle;
             else if (kind == "single_ultrafilter") d = DualityKind::single_ultrafilter;
             else throw Error(ErrorCode::InvalidParameter, "duality kind must be ultrafilter, tangle or single_ultrafilter");
             return dump(io::duality_json(s.ground(), duality_audit(s, Bound{k}, d)));
           })
      .def(
          "audit",
          [](const ConnectivitySystem& s, const std::string& theorems, std::uint32_t k, unsigned workers) {
            Json out = Json::array();
            for (const auto& r : run_theorem_audit(s, Bound{k}, theorem_selection(theorems), AuditOptions{workers})) {
              out.push_back(io::audit_report_json(s.ground(), r));
            }
            return dump(out);
          },
          py::arg("theorems") = "all", py::arg("k") = 0, py::arg("workers") = 1)
      .def("dilworth", [](const ConnectivitySystem& s, std::uint32_t k) {
        return dump(io::dilworth_json(s.ground(), dilworth_check(s, Bound{k})));
      });
}
