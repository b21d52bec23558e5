#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "auglab/cli.hpp"
#include "auglab/error.hpp"
#include "auglab/json_io.hpp"

namespace py = pybind11;
using namespace auglab;

namespace {

using PairList = std::vector<std::pair<std::size_t, std::size_t>>;

std::string check(const std::string& pd) { return report_to_json(check_hypotheses(parse_pd(pd))).dump(); }

std::string faces(const std::string& pd) {
  auto d = parse_pd(pd);
  return faces_to_json(d, build_faces(d)).dump();
}

// Runs the gate first, like the CLI; a failing diagram raises HypothesisFailure.
std::string augment(const std::string& pd, const PairList& pairs, std::size_t cap, bool maximal) {
  if (cap < 1) throw Error(ErrorKind::InvalidRequest, "cap must be at least 1");
  auto d = parse_pd(pd);
  auto report = check_hypotheses(d);
  if (!report.passes) throw Error(ErrorKind::HypothesisFailure, report_to_json(report).dump());
  auto f = build_faces(d);
  auto r = maximal ? find_maximal_system(d, f, pairs, cap) : realize_disjoint_system(d, f, pairs, cap);
  return realization_to_json(d, r, report).dump();
}

std::string volume(const std::string& expression, const Bindings& extra, bool opaque_borromean,
                   bool require_numeric) {
  Json j;
  try {
    j = Json::parse(expression);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidRequest, std::string("invalid JSON: ") + e.what());
  }
  auto tree = parse_volume_expression(j, ExpressionOptions{opaque_borromean});
  auto expr = evaluate(*tree);
  auto bindings = leaf_bindings(*tree);
  for (const auto& [k, v] : extra) bindings[k] = v;
  std::optional<double> value;
  try {
    value = numeric(expr, bindings);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnboundSymbol || require_numeric) throw;
  }
  return volume_to_json(expr, value).dump();
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Alternating link augmentation workbench";

  static py::exception<Error> error(m, "AuglabError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error.ptr())(py::str(std::string(to_string(e.kind()))), py::str(e.what()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.attr("OCT_VOLUME") = kOctahedronVolume;
  m.attr("DEFAULT_CAP") = kDefaultRouteCap;

  m.def("canonical_pd", [](const std::string& pd) { return serialize_pd(canonicalize(parse_pd(pd))); },
        py::arg("pd"));
  m.def("check", &check, py::arg("pd"), "Hypothesis report as JSON text.");
  m.def("faces", &faces, py::arg("pd"), "Face census as JSON text.");
  m.def("augment", &augment, py::arg("pd"), py::arg("pairs"), py::arg("cap") = kDefaultRouteCap,
        py::arg("maximal") = false);
  m.def("volume", &volume, py::arg("expression"), py::arg("bindings") = Bindings{},
        py::arg("opaque_borromean") = false, py::arg("require_numeric") = false);
  m.def("run_cli", &cli, py::arg("args"), "Returns (exit code, stdout, stderr).");
}
