#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pseudospace/amalgam.hpp"
#include "pseudospace/ample.hpp"
#include "pseudospace/building.hpp"
#include "pseudospace/cli.hpp"
#include "pseudospace/closure.hpp"
#include "pseudospace/coxeter.hpp"
#include "pseudospace/io.hpp"

namespace py = pybind11;
using namespace pseudospace;

namespace {

// Graphs cross the boundary as JSON text.
LevelGraph load(const std::string& text) { return graph_from_json(parse_json(text)); }

ClassVariant class_variant(const std::string& s) {
  if (s == "kn") return ClassVariant::Kn;
  if (s == "knprime") return ClassVariant::KnPrime;
  if (s == "kn-single-band") return ClassVariant::KnSingleBand;
  if (s == "kn-band-paths") return ClassVariant::KnBandPaths;
  throw std::invalid_argument("unknown class variant: " + s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Level graphs, closure and Coxeter words";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "generate",
      [](int n, int budget, std::uint64_t seed, const std::string& variant) {
        auto gen = generate(n, budget, seed, parse_build_variant(variant));
        return py::make_tuple(dump(to_json(gen.graph)), dump(to_json(gen.recipe)));
      },
      py::arg("n"), py::arg("budget"), py::arg("seed") = 0, py::arg("variant") = "saturated");

  m.def(
      "replay", [](const std::string& recipe) { return dump(to_json(replay(recipe_from_json(parse_json(recipe))))); },
      py::arg("recipe"));

  m.def(
      "check", [](const std::string& graph, const std::string& variant) {
        return dump(to_json(check_class(load(graph), class_variant(variant))));
      },
      py::arg("graph"), py::arg("variant") = "kn");

  m.def(
      "acl", [](const std::string& graph, const VertexSet& a) { return acl(load(graph), a); }, py::arg("graph"),
      py::arg("set"));

  m.def(
      "independent",
      [](const std::string& graph, const VertexSet& a, const VertexSet& b, const VertexSet& c) {
        return independent(load(graph), a, b, c);
      },
      py::arg("graph"), py::arg("a"), py::arg("b"), py::arg("c"));

  m.def(
      "normal_form", [](int n, std::vector<int> gens) { return normal_form(make_word(n, std::move(gens))).gens; },
      py::arg("n"), py::arg("word"));

  m.def(
      "verify_building",
      [](const std::string& graph, int word_bound) { return dump(to_json(verify_building(load(graph), word_bound))); },
      py::arg("graph"), py::arg("word_bound") = 4);

  m.def(
      "verify_ample",
      [](const std::string& graph, const std::string& instance) {
        return dump(to_json(verify_witness(load(graph), instance_from_json(parse_json(instance)))));
      },
      py::arg("graph"), py::arg("instance"));

  m.def(
      "to_dot", [](const std::string& graph) { return to_dot(load(graph)); }, py::arg("graph"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
