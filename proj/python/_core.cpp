// Copyright 2026 The balfi-lab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "balfi/balfi.hpp"
#include "balfi/hilbert.hpp"
#include "balfi/io.hpp"
#include "balfi/modal.hpp"
#include "balfi/modelfind.hpp"
#include "balfi/syntax.hpp"

namespace py = pybind11;
using namespace balfi;

namespace {

SignatureId signature(const std::string& name) {
  auto id = signature_from_name(name);
  if (!id) throw Error("unknown signature '" + name + "'");
  return *id;
}

std::vector<AxiomTag> tags(const std::vector<std::string>& names) {
  std::vector<AxiomTag> out;
  for (const auto& n : names) {
    auto t = axiom_tag_from_name(n);
    if (!t) throw Error("unknown axiom tag '" + n + "'");
    out.push_back(*t);
  }
  return out;
}

std::vector<std::uint32_t> bits(std::span<const Element> table) {
  std::vector<std::uint32_t> out;
  for (Element e : table) out.push_back(e.bits);
  return out;
}

std::vector<Element> elements(const std::vector<std::uint32_t>& raw) {
  std::vector<Element> out;
  for (auto x : raw) out.push_back(Element{x});
  return out;
}

Valuation valuation(const std::map<std::string, std::uint32_t>& raw) {
  Valuation v;
  for (const auto& [k, x] : raw) v[k] = Element{x};
  return v;
}

SearchSpec make_spec(int n_atoms, const std::vector<std::string>& require,
                     const std::vector<std::string>& forbid, bool paraconsistent, bool lfi,
                     std::optional<std::size_t> limit, std::size_t random, std::uint64_t seed,
                     unsigned jobs) {
  SearchSpec s;
  s.n_atoms = n_atoms;
  s.require_tags = tags(require);
  s.forbid_tags = tags(forbid);
  s.require_paraconsistent = paraconsistent;
  s.require_lfi = lfi;
  s.limit = limit;
  if (random > 0) {
    s.mode = SearchMode::Random;
    s.random_count = random;
    s.seed = seed;
  }
  s.jobs = jobs;
  return s;
}

std::vector<Formula> parse_all(const std::vector<std::string>& texts) {
  std::vector<Formula> out;
  for (const auto& t : texts) out.push_back(parse(t, SignatureId::SigmaE));
  return out;
}

ConsequenceMode consequence_mode(const std::string& mode) {
  if (mode == "local") return ConsequenceMode::Local;
  if (mode == "global") return ConsequenceMode::Global;
  throw Error("mode must be 'local' or 'global'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "BALFI semantics, model search and proof checking for logics of formal inconsistency";
  py::register_exception<Error>(m, "BalfiError", PyExc_ValueError);

  py::class_<Formula>(m, "Formula")
      .def("__str__", [](const Formula& f) { return render(f); })
      .def("__repr__", [](const Formula& f) { return "Formula('" + render(f) + "')"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__hash__", [](const Formula& f) { return f.hash(); })
      .def_property_readonly("depth", [](const Formula& f) { return depth(f); })
      .def_property_readonly("variables", [](const Formula& f) { return variables(f); });

  m.def("parse", [](const std::string& text, const std::string& sig) { return parse(text, signature(sig)); },
        py::arg("text"), py::arg("signature") = "Sigma");

  py::class_<Balfi>(m, "Balfi")
      .def_property_readonly("atoms", [](const Balfi& b) { return b.algebra().atoms(); })
      .def_property_readonly("neg_table", [](const Balfi& b) { return bits(b.neg_table()); })
      .def_property_readonly("circ_table", [](const Balfi& b) { return bits(b.circ_table()); })
      .def("neg", [](const Balfi& b, std::uint32_t x) { return b.neg(Element{x}).bits; })
      .def("circ", [](const Balfi& b, std::uint32_t x) { return b.circ(Element{x}).bits; })
      .def("is_paraconsistent", &is_paraconsistent)
      .def("is_lfi", &is_lfi)
      .def("satisfies", [](const Balfi& b, const std::string& tag) { return satisfies_equation(b, tags({tag})[0]); })
      .def("models_schema", [](const Balfi& b, const std::string& text) { return models_schema(b, Schema{parse(text)}); })
      .def("evaluate",
           [](const Balfi& b, const std::string& text, const std::map<std::string, std::uint32_t>& v) {
             return evaluate(b, valuation(v), parse(text, SignatureId::SigmaE)).bits;
           })
      .def("to_json", [](const Balfi& b) { return balfi_to_json(b).dump(); })
      .def_static("from_json", [](const std::string& text) { return balfi_from_json(Json::parse(text)); })
      .def("__eq__", [](const Balfi& a, const Balfi& b) { return a == b; })
      .def("__repr__", [](const Balfi& b) { return "Balfi(" + balfi_to_json(b).dump() + ")"; });

  m.def("check_balfi",
        [](int n_atoms, const std::vector<std::uint32_t>& neg, const std::vector<std::uint32_t>& circ) {
          return check_balfi(PowersetAlgebra(n_atoms), elements(neg), elements(circ));
        },
        py::arg("n_atoms"), py::arg("neg"), py::arg("circ"));

  m.def("enumerate",
        [](int n_atoms, const std::vector<std::string>& require, const std::vector<std::string>& forbid,
           bool paraconsistent, bool lfi, std::optional<std::size_t> limit, std::size_t random,
           std::uint64_t seed, unsigned jobs) {
          SearchSpec s = make_spec(n_atoms, require, forbid, paraconsistent, lfi, limit, random, seed, jobs);
          py::gil_scoped_release release;
          return enumerate_balfis(s);
        },
        py::arg("n_atoms") = 2, py::arg("require") = std::vector<std::string>{},
        py::arg("forbid") = std::vector<std::string>{}, py::arg("paraconsistent") = false,
        py::arg("lfi") = false, py::arg("limit") = py::none(), py::arg("random") = 0, py::arg("seed") = 0,
        py::arg("jobs") = 1);

  m.def("find_countermodel",
        [](const std::vector<std::string>& premises, const std::string& goal, int n_atoms,
           const std::vector<std::string>& require, const std::string& mode)
            -> std::optional<std::pair<Balfi, std::map<std::string, std::uint32_t>>> {
          SearchSpec s = make_spec(n_atoms, require, {}, false, false, std::nullopt, 0, 0, 1);
          const auto gamma = parse_all(premises);
          auto cm = find_countermodel(s, gamma, parse(goal, SignatureId::SigmaE), consequence_mode(mode));
          if (!cm) return std::nullopt;
          std::map<std::string, std::uint32_t> v;
          for (const auto& [k, e] : cm->valuation) v[k] = e.bits;
          return std::make_pair(cm->model, v);
        },
        py::arg("premises"), py::arg("goal"), py::arg("n_atoms") = 2,
        py::arg("require") = std::vector<std::string>{}, py::arg("mode") = "local");

  m.def("example", [](const std::string& name) {
    auto e = example_from_name(name);
    if (!e) throw Error("unknown example '" + name + "'");
    return reconstruct_example(*e);
  });
  m.def("example_names", [] {
    std::vector<std::string> out;
    for (ExampleName e : all_examples()) out.emplace_back(balfi::name(e));
    return out;
  });

  m.def("translate", [](const std::string& text) { return render(translate(parse(text))); });

  m.def("frame_condition", [](const std::string& frame_json, const std::string& tag) {
    return frame_condition(frame_from_json(Json::parse(frame_json)), tags({tag})[0]);
  });
  m.def("frame_valid", [](const std::string& frame_json, const std::string& tag) {
    return frame_valid_schema(frame_from_json(Json::parse(frame_json)), schema_of(tags({tag})[0]));
  });

  m.def("check_script",
        [](const std::string& text, const std::string& mode) {
          Script s = parse_script(text);
          const CalculusSpec calc = calculus_by_name(s.calculus);
          const Formula goal = s.goal.value_or(Formula::top());
          Verdict v = mode == "local" ? check_local_derivation(calc, s.proof.premises, goal, s.proof)
                                      : check_global_derivation(calc, s.proof.premises, goal, s.proof);
          py::dict out;
          out["accepted"] = v.accepted;
          out["calculus"] = calc.name;
          if (v.error) {
            out["error"] = std::string(balfi::name(v.error->kind()));
            out["step"] = v.error->step();
            out["message"] = std::string(v.error->what());
          }
          return out;
        },
        py::arg("text"), py::arg("mode") = "global");

  m.def("library_scripts", [] {
    py::dict out;
    for (const auto& e : theorem_library()) out[py::str(e.file)] = render_script(e.calculus, e.proof, e.goal, {}, e.title);
    return out;
  });
}
