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

#include "balfi/io.hpp"

namespace balfi {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw Error(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<Element> table_from_json(const Json& j, int n_atoms, const char* key) {
  const Json& arr = field(j, key);
  if (!arr.is_array()) throw Error(std::string("field '") + key + "' must be an array");
  std::vector<Element> out;
  for (const auto& e : arr) out.push_back(element_from_json(e, n_atoms));
  return out;
}

Json table_to_json(std::span<const Element> t) {
  Json out = Json::array();
  for (Element e : t) out.push_back(element_to_json(e));
  return out;
}

bool is_element(const Json& j) { return j.is_array() && (j.empty() || j.front().is_number()); }

void flatten_preds(const Json& j, int universe, int depth, std::vector<Element>& out, int& arity,
                   int n_atoms) {
  if (is_element(j)) {
    if (arity < 0) arity = depth;
    if (arity != depth) throw Error("predicate table is ragged");
    out.push_back(element_from_json(j, n_atoms));
    return;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != universe) {
    throw Error("predicate table rows must have one entry per universe element");
  }
  for (const auto& row : j) flatten_preds(row, universe, depth + 1, out, arity, n_atoms);
}

void flatten_funcs(const Json& j, int universe, int depth, std::vector<int>& out, int& arity) {
  if (j.is_number_integer()) {
    if (arity < 0) arity = depth;
    if (arity != depth) throw Error("function table is ragged");
    out.push_back(j.get<int>());
    return;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != universe) {
    throw Error("function table rows must have one entry per universe element");
  }
  for (const auto& row : j) flatten_funcs(row, universe, depth + 1, out, arity);
}

template <typename T, typename Leaf>
Json nest(const std::vector<T>& flat, int universe, int arity, std::size_t& pos, Leaf leaf) {
  if (arity == 0) return leaf(flat[pos++]);
  Json out = Json::array();
  for (int i = 0; i < universe; ++i) out.push_back(nest(flat, universe, arity - 1, pos, leaf));
  return out;
}

std::vector<std::uint64_t> neighbourhoods_from_json(const Json& j, int worlds) {
  if (!j.is_array() || static_cast<int>(j.size()) != worlds) {
    throw Error("neighbourhood lists must have one entry per world");
  }
  std::vector<std::uint64_t> out;
  for (const auto& sets : j) {
    std::uint64_t bits = 0;
    for (const auto& s : sets) bits |= std::uint64_t{1} << element_from_json(s, worlds).bits;
    out.push_back(bits);
  }
  return out;
}

Json neighbourhoods_to_json(const std::vector<std::uint64_t>& nb, int worlds) {
  Json out = Json::array();
  const std::uint32_t subsets = 1u << worlds;
  for (std::uint64_t bits : nb) {
    Json sets = Json::array();
    for (std::uint32_t x = 0; x < subsets; ++x) {
      if ((bits >> x) & 1u) sets.push_back(element_to_json(Element{x}));
    }
    out.push_back(sets);
  }
  return out;
}

}  // namespace

Json element_to_json(Element e) { return Json(atom_indices(e)); }

Element element_from_json(const Json& j, int n_atoms) {
  if (!j.is_array()) throw Error("an element must be an array of atom indices");
  std::vector<int> atoms;
  for (const auto& a : j) {
    if (!a.is_number_integer()) throw Error("atom indices must be integers");
    const int i = a.get<int>();
    if (i < 0 || i >= n_atoms) throw Error("atom index " + std::to_string(i) + " out of range");
    atoms.push_back(i);
  }
  return from_atom_indices(atoms);
}

Json balfi_to_json(const Balfi& b) {
  return Json{{"atoms", b.algebra().atoms()},
              {"neg", table_to_json(b.neg_table())},
              {"circ", table_to_json(b.circ_table())}};
}

Balfi balfi_from_json(const Json& j) {
  const int n = int_field(j, "atoms");
  PowersetAlgebra alg(n);
  return check_balfi(alg, table_from_json(j, n, "neg"), table_from_json(j, n, "circ"));
}

Json valuation_to_json(const Valuation& v) {
  Json out = Json::object();
  for (const auto& [x, e] : v) out[x] = element_to_json(e);
  return out;
}

Json frame_to_json(const NeighborhoodFrame& fr) {
  return Json{{"worlds", fr.worlds},
              {"s_neg", table_to_json(fr.s_neg)},
              {"s_circ", table_to_json(fr.s_circ)}};
}

NeighborhoodFrame frame_from_json(const Json& j) {
  NeighborhoodFrame fr;
  fr.worlds = int_field(j, "worlds");
  if (fr.worlds < 1 || fr.worlds > NeighborhoodFrame::kMaxWorlds) throw Error("worlds out of range");
  fr.s_neg = table_from_json(j, fr.worlds, "s_neg");
  fr.s_circ = table_from_json(j, fr.worlds, "s_circ");
  fr.validate();
  return fr;
}

Json minimal_model_to_json(const MinimalModel& n) {
  Json d = Json::object();
  for (const auto& [x, e] : n.d) d[x] = element_to_json(e);
  return Json{{"worlds", n.worlds},
              {"n1", neighbourhoods_to_json(n.n1, n.worlds)},
              {"n2", neighbourhoods_to_json(n.n2, n.worlds)},
              {"d", d}};
}

MinimalModel minimal_model_from_json(const Json& j) {
  MinimalModel n;
  n.worlds = int_field(j, "worlds");
  if (n.worlds < 1 || n.worlds > NeighborhoodFrame::kMaxWorlds) throw Error("worlds out of range");
  n.n1 = neighbourhoods_from_json(field(j, "n1"), n.worlds);
  n.n2 = neighbourhoods_from_json(field(j, "n2"), n.worlds);
  if (j.contains("d")) n.d = denotation_from_json(j.at("d"), n.worlds);
  n.validate();
  return n;
}

Denotation denotation_from_json(const Json& j, int worlds) {
  if (!j.is_object()) throw Error("a denotation must be an object");
  Denotation d;
  for (const auto& [x, e] : j.items()) d[x] = element_from_json(e, worlds);
  return d;
}

Json structure_to_json(const FOStructure& s) {
  Json funcs = Json::object(), preds = Json::object();
  for (const auto& [name, t] : s.funcs) {
    std::size_t pos = 0;
    funcs[name] = nest(t.values, s.universe, t.arity, pos, [](int v) { return Json(v); });
  }
  for (const auto& [name, t] : s.preds) {
    std::size_t pos = 0;
    preds[name] = nest(t.values, s.universe, t.arity, pos, [](Element e) { return element_to_json(e); });
  }
  return Json{{"universe", s.universe},
              {"balfi", balfi_to_json(s.balfi)},
              {"consts", Json(s.consts)},
              {"funcs", funcs},
              {"preds", preds}};
}

FOStructure structure_from_json(const Json& j) {
  FOStructure s{int_field(j, "universe"), balfi_from_json(field(j, "balfi")), {}, {}, {}};
  const int n_atoms = s.balfi.algebra().atoms();
  if (j.contains("consts")) {
    for (const auto& [c, v] : j.at("consts").items()) s.consts[c] = v.get<int>();
  }
  if (j.contains("funcs")) {
    for (const auto& [f, table] : j.at("funcs").items()) {
      FunctionTable t{-1, {}};
      flatten_funcs(table, s.universe, 0, t.values, t.arity);
      s.funcs[f] = std::move(t);
    }
  }
  for (const auto& [p, table] : field(j, "preds").items()) {
    PredicateTable t{-1, {}};
    flatten_preds(table, s.universe, 0, t.values, t.arity, n_atoms);
    s.preds[p] = std::move(t);
  }
  s.validate();
  return s;
}

}  // namespace balfi
