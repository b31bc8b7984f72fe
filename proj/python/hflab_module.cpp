#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hflab/category.hpp"
#include "hflab/error.hpp"
#include "hflab/hierarchy.hpp"
#include "hflab/io.hpp"
#include "hflab/model.hpp"
#include "hflab/version.hpp"

namespace py = pybind11;
using namespace hflab;

namespace {

// Reports cross the boundary as plain dicts, through the same JSON the CLI
// prints.
py::object to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Structure structure_arg(const py::object& s) {
  if (py::isinstance<py::str>(s)) return load_structure(s.cast<std::string>());
  std::vector<HfSet> universe;
  for (const auto& item : s) universe.push_back(parse_hfset(item.cast<std::string>()));
  return Structure(std::move(universe));
}

Assignment assignment_arg(const std::map<std::string, std::string>& a) {
  Assignment out;
  for (const auto& [k, v] : a) out[k] = parse_hfset(v);
  return out;
}

}  // namespace

PYBIND11_MODULE(hflab, m) {
  m.doc() = "Finite-model lab for set theory over hereditarily finite sets";
  m.attr("__version__") = kVersion;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<EvalError>(m, "EvalError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<BoundExceeded>(m, "BoundExceeded", PyExc_RuntimeError);
  py::register_exception<NotAFunction>(m, "NotAFunction", PyExc_ValueError);

  py::class_<HfSet>(m, "HfSet")
      .def(py::init([](const std::string& text) { return parse_hfset(text); }), py::arg("text") = "{}")
      .def_static("decode", &decode)
      .def_property_readonly("code", &HfSet::code)
      .def_property_readonly("rank", &HfSet::rank)
      .def_property_readonly("members", [](const HfSet& x) {
        return std::vector<HfSet>(x.members().begin(), x.members().end());
      })
      .def("__len__", &HfSet::size)
      .def("__contains__", &HfSet::contains)
      .def("__str__", &HfSet::str)
      .def("__repr__", [](const HfSet& x) { return "HfSet('" + x.str() + "')"; })
      .def("__hash__", &HfSet::hash)
      .def(py::self == py::self)
      .def(py::self < py::self);

  m.def("powerset", [](const HfSet& x) { return powerset(x); });
  m.def("ordered_pair", &ordered_pair);
  m.def("successor", &successor);
  m.def("von_neumann", &von_neumann);
  m.def("classify", [](const HfSet& x) {
    const Classification c = classify(x);
    return py::dict(py::arg("transitive") = c.transitive, py::arg("complete") = c.complete,
                    py::arg("ordinal") = c.ordinal, py::arg("function") = c.function);
  });

  m.def("parse_formula", [](const std::string& text) { return render(parse_formula(text)); },
        "Parses and re-renders a formula.");
  m.def("quantifier_depth",
        [](const std::string& text) { return quantifier_depth(parse_formula(text)); });

  m.def("stage_size", [](std::size_t k) { return build_stage(k).carrier.size(); });
  m.def("stage", [](std::size_t k) {
    std::vector<std::string> out;
    for (const HfSet& x : build_stage(k).carrier.universe()) out.push_back(x.str());
    return out;
  });

  m.def(
      "satisfies",
      [](const py::object& structure, const std::string& formula,
         const std::map<std::string, std::string>& assign) {
        return satisfies(structure_arg(structure), parse_formula(formula), assignment_arg(assign));
      },
      py::arg("structure"), py::arg("formula"), py::arg("assign") = std::map<std::string, std::string>{});

  m.def(
      "audit",
      [](const py::object& structure, bool literal_foundation) {
        AuditOptions opt;
        opt.literal_foundation = literal_foundation;
        return to_py(to_json(axiom_audit(structure_arg(structure), default_battery(), opt)));
      },
      py::arg("structure"), py::arg("literal_foundation") = false);

  m.def(
      "elementary",
      [](const py::object& left, const py::object& right, std::size_t depth, std::size_t params) {
        return to_py(to_json(elementary_d(structure_arg(left), structure_arg(right), depth, params)));
      },
      py::arg("left"), py::arg("right"), py::arg("depth"), py::arg("params") = 1);

  m.def("universe_lemma", [](const std::string& config) {
    return to_py(to_json(universe_lemma_check(TierConfig::parse(config))));
  });
  m.def("check_A5", [](const std::string& config, std::size_t n) {
    return to_py(to_json(check_A5(TierConfig::parse(config), n)));
  });

  m.def("coll", [](std::size_t k) { return to_py(category_to_json(build_coll(k))); });
  m.def("topos_audit", [](std::size_t k) { return to_py(to_json(topos_audit(build_coll(k)))); });
  m.def("cantor", [](std::size_t n) { return to_py(to_json(cantor_check(von_neumann(n)))); });
  m.def("freyd_enumerate", [](std::size_t objects, std::size_t arrows) {
    return to_py(to_json(freyd_enumerate(objects, arrows)));
  });
}
