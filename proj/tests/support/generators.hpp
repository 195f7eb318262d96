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

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "balfi/balfi.hpp"
#include "balfi/firstorder.hpp"
#include "balfi/modal.hpp"
#include "balfi/modelfind.hpp"

namespace balfi::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Random formula over Sigma with the given variables.
inline Formula random_formula(Rng& rng, int depth, const std::vector<std::string>& vars) {
  if (depth <= 0 || pick(rng, 4) == 0) return var(vars[pick(rng, vars.size())]);
  switch (pick(rng, 5)) {
    case 0: return neg(random_formula(rng, depth - 1, vars));
    case 1: return circ(random_formula(rng, depth - 1, vars));
    case 2: return conj(random_formula(rng, depth - 1, vars), random_formula(rng, depth - 1, vars));
    case 3: return disj(random_formula(rng, depth - 1, vars), random_formula(rng, depth - 1, vars));
    default: return imp(random_formula(rng, depth - 1, vars), random_formula(rng, depth - 1, vars));
  }
}

// Every Sigma formula over vars up to the given depth.
inline std::vector<Formula> all_formulas(int depth, const std::vector<std::string>& vars) {
  std::vector<Formula> out;
  for (const auto& v : vars) out.push_back(var(v));
  for (int d = 1; d <= depth; ++d) {
    const std::vector<Formula> prev = out;
    out.clear();
    for (const auto& v : vars) out.push_back(var(v));
    for (const auto& f : prev) {
      out.push_back(neg(f));
      out.push_back(circ(f));
    }
    for (const auto& f : prev) {
      for (const auto& g : prev) {
        out.push_back(conj(f, g));
        out.push_back(disj(f, g));
        out.push_back(imp(f, g));
      }
    }
  }
  return out;
}

// Naive BALFI filter over raw tables, independent of the search code.
inline bool naive_balfi(std::uint32_t mask, const std::vector<std::uint32_t>& neg,
                        const std::vector<std::uint32_t>& circ) {
  for (std::uint32_t a = 0; a <= mask; ++a) {
    if ((a | neg[a]) != mask) return false;
    if ((a & neg[a] & circ[a]) != 0) return false;
  }
  return true;
}

inline std::vector<Balfi> all_a4() {
  SearchSpec spec;
  spec.n_atoms = 2;
  return enumerate_balfis(spec);
}

inline std::vector<Balfi> random_balfis(int n_atoms, std::size_t count, std::uint64_t seed) {
  SearchSpec spec;
  spec.n_atoms = n_atoms;
  spec.mode = SearchMode::Random;
  spec.random_count = count;
  spec.seed = seed;
  return enumerate_balfis(spec);
}

inline NeighborhoodFrame random_frame(Rng& rng, int worlds) {
  NeighborhoodFrame fr;
  fr.worlds = worlds;
  const std::uint32_t subsets = 1u << worlds;
  for (std::uint32_t i = 0; i < subsets; ++i) {
    fr.s_neg.push_back(Element{static_cast<std::uint32_t>(pick(rng, subsets))});
    fr.s_circ.push_back(Element{static_cast<std::uint32_t>(pick(rng, subsets))});
  }
  return fr;
}

// First-order vocabulary shared by the random generators below:
// constant c, unary function f, unary predicate P, binary predicate R.
inline Term random_term(Rng& rng, int depth, const std::vector<std::string>& vars) {
  if (depth <= 0 || pick(rng, 3) != 0) {
    if (pick(rng, 4) == 0) return Term::constant("c");
    return Term::variable(vars[pick(rng, vars.size())]);
  }
  return Term::apply("f", {random_term(rng, depth - 1, vars)});
}

inline Formula random_fo_formula(Rng& rng, int depth, const std::vector<std::string>& vars) {
  if (depth <= 0 || pick(rng, 5) == 0) {
    if (pick(rng, 2) == 0) return Formula::pred("P", {random_term(rng, 2, vars)});
    return Formula::pred("R", {random_term(rng, 1, vars), random_term(rng, 1, vars)});
  }
  switch (pick(rng, 7)) {
    case 0: return neg(random_fo_formula(rng, depth - 1, vars));
    case 1: return circ(random_fo_formula(rng, depth - 1, vars));
    case 2: return conj(random_fo_formula(rng, depth - 1, vars), random_fo_formula(rng, depth - 1, vars));
    case 3: return disj(random_fo_formula(rng, depth - 1, vars), random_fo_formula(rng, depth - 1, vars));
    case 4: return imp(random_fo_formula(rng, depth - 1, vars), random_fo_formula(rng, depth - 1, vars));
    case 5:
      return Formula::quant(Connective::Forall, vars[pick(rng, vars.size())],
                            random_fo_formula(rng, depth - 1, vars));
    default:
      return Formula::quant(Connective::Exists, vars[pick(rng, vars.size())],
                            random_fo_formula(rng, depth - 1, vars));
  }
}

inline FOStructure random_structure(Rng& rng, const std::vector<Balfi>& pool) {
  const int u = 1 + static_cast<int>(pick(rng, 3));
  FOStructure s{u, pool[pick(rng, pool.size())], {}, {}, {}};
  const std::size_t carrier = s.balfi.algebra().size();
  s.consts["c"] = static_cast<int>(pick(rng, u));
  FunctionTable f{1, {}};
  for (int i = 0; i < u; ++i) f.values.push_back(static_cast<int>(pick(rng, u)));
  s.funcs["f"] = f;
  PredicateTable p{1, {}}, r{2, {}};
  for (int i = 0; i < u; ++i) p.values.push_back(Element{static_cast<std::uint32_t>(pick(rng, carrier))});
  for (int i = 0; i < u * u; ++i) r.values.push_back(Element{static_cast<std::uint32_t>(pick(rng, carrier))});
  s.preds["P"] = p;
  s.preds["R"] = r;
  return s;
}

}  // namespace balfi::testing
