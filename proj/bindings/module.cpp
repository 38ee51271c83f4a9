// Python bindings: the document parser plus every CLI pipeline, returning
// reports as JSON strings so callers can use the standard json module.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "grla/report.hpp"

namespace py = pybind11;

namespace {

std::pair<std::string, int> run_text(const std::string& cmd, const std::string& text, int window,
                                     int string_cap) {
  grla::InputDocument doc = grla::parse_input(text);
  grla::Report rep = grla::run_command(cmd, doc, window, string_cap);
  return {rep.data.dump(2), rep.exit_code};
}

std::pair<std::string, int> run_file(const std::string& cmd, const std::string& path, int window,
                                     int string_cap) {
  grla::InputDocument doc = grla::load_input(path);
  grla::Report rep = grla::run_command(cmd, doc, window, string_cap);
  return {rep.data.dump(2), rep.exit_code};
}

std::string canonical_text(const std::string& text) {
  return grla::serialize_input(grla::parse_input(text));
}

std::string kind_of(const std::string& text) {
  return grla::kind_name(grla::parse_input(text).kind);
}

std::string render(const std::string& report_json) {
  return grla::render_text(grla::Json::parse(report_json));
}

}  // namespace

PYBIND11_MODULE(_grla, m) {
  m.doc() = "Exact verification and decomposition of root-graded Lie algebras";

  py::register_exception<grla::ParseError>(m, "ParseError");
  py::register_exception<grla::SchemaError>(m, "SchemaError");
  py::register_exception<grla::BadScalar>(m, "BadScalarError");

  m.def("run", &run_text, py::arg("command"), py::arg("text"), py::arg("window") = 0,
        py::arg("string_cap") = 8,
        "Run a pipeline (check-grrs, decompose-grrs, isolated, check-lie, decompose-lie, "
        "affinize, fixed-points, lie-torus) over a document given as text; returns "
        "(report_json, exit_code).");
  m.def("run_file", &run_file, py::arg("command"), py::arg("path"), py::arg("window") = 0,
        py::arg("string_cap") = 8, "Like run(), reading the document from a file.");
  m.def("canonicalize", &canonical_text, py::arg("text"),
        "Parse a document and return its canonical serialized form.");
  m.def("kind_of", &kind_of, py::arg("text"), "Kind of a document: grrs, liealg, affinize or "
        "fixedpoint.");
  m.def("render_text", &render, py::arg("report_json"),
        "Human-readable rendering of a report produced by run().");
}
