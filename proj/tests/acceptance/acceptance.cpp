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

// Acceptance suite: one PASS/FAIL line per criterion, with wall-clock limits.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "balfi/balfi.hpp"
#include "balfi/firstorder.hpp"
#include "balfi/hilbert.hpp"
#include "balfi/modal.hpp"
#include "balfi/modelfind.hpp"
#include "balfi/syntax.hpp"
#include "../support/generators.hpp"

#ifndef BALFI_PROOFS_DIR
#define BALFI_PROOFS_DIR "proofs"
#endif

using namespace balfi;
using namespace balfi::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

const Element kZero{0}, kA{1}, kB{2}, kOne{3};

unsigned jobs() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

std::uint64_t table_key(const Balfi& b) {
  std::uint64_t key = 0;
  for (Element e : b.neg_table()) key = key * 16 + e.bits;
  for (Element e : b.circ_table()) key = key * 16 + e.bits;
  return key;
}

std::set<std::uint64_t> keys(const std::vector<Balfi>& models) {
  std::set<std::uint64_t> out;
  for (const auto& b : models) out.insert(table_key(b));
  return out;
}

const std::vector<Balfi>& a4() {
  static const std::vector<Balfi> models = all_a4();
  return models;
}

// 1. Census of A4.
Outcome census() {
  Outcome o;
  std::set<std::uint64_t> naive;
  std::vector<std::uint32_t> neg(4), circ(4);
  for (std::uint32_t nt = 0; nt < 256; ++nt) {
    for (int i = 0; i < 4; ++i) neg[i] = (nt >> (2 * i)) & 3;
    for (std::uint32_t ct = 0; ct < 256; ++ct) {
      for (int i = 0; i < 4; ++i) circ[i] = (ct >> (2 * i)) & 3;
      if (!naive_balfi(3, neg, circ)) continue;
      std::uint64_t key = 0;
      for (auto x : neg) key = key * 16 + x;
      for (auto x : circ) key = key * 16 + x;
      naive.insert(key);
    }
  }
  o.require(naive.size() == 1296, "naive oracle count " + std::to_string(naive.size()));
  o.require(a4().size() == 1296, "enumeration count " + std::to_string(a4().size()));
  o.require(keys(a4()) == naive, "enumerated set differs from the naive set");

  // Row structure: neg z ranges over supersets of ~z, circ z over subsets of ~(z & neg z).
  for (std::uint32_t z = 0; z < 4; ++z) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen, expected;
    for (const auto& b : a4()) seen.insert({b.neg(Element{z}).bits, b.circ(Element{z}).bits});
    for (std::uint32_t n = 0; n < 4; ++n) {
      if ((n | z) != 3) continue;
      for (std::uint32_t c = 0; c < 4; ++c) {
        if ((c & z & n) == 0) expected.insert({n, c});
      }
    }
    o.require(seen == expected, "row options differ at rank " + std::to_string(z));
  }
  for (const auto& b : a4()) {
    if (b.neg(kOne) == kB) o.require(b.circ(kOne) == kZero || b.circ(kOne) == kA, "neg 1 = b admits circ 1 outside {0,a}");
  }
  o.detail = o.pass ? "1296 models, naive 4^4 x 4^4 oracle agrees, row options match" : o.detail;
  return o;
}

// 2. Replacement fails in RmbC.
Outcome replacement() {
  Outcome o;
  const Formula f_neg = parse("(p <-> q) -> (!p <-> !q)");
  const Formula f_circ = parse("(p <-> q) -> (@p <-> @q)");
  SearchSpec spec;
  for (const Formula& f : {f_neg, f_circ}) {
    auto cm = find_countermodel(spec, {}, f, ConsequenceMode::Local);
    o.require(cm.has_value(), "no countermodel for " + render(f));
    if (cm) o.require(evaluate(cm->model, cm->valuation, f) != cm->model.algebra().one(), "countermodel does not refute");
  }
  const Balfi m = check_balfi(PowersetAlgebra(2), {kOne, kB, kA, kOne}, {kZero, kA, kZero, kZero});
  o.require(reconstruct_example(ExampleName::BRemark) == m, "B_remark reconstruction differs from the expected tables");
  const Valuation v{{"p", kA}, {"q", kOne}};
  o.require(evaluate(m, v, parse("!p")) == kB && evaluate(m, v, parse("!q")) == kOne, "v(!p), v(!q)");
  o.require(evaluate(m, v, parse("@p")) == kA && evaluate(m, v, parse("@q")) == kZero, "v(@p), v(@q)");
  o.require(evaluate(m, v, parse("p <-> q")) == kA, "v(p <-> q) != a");
  o.require(evaluate(m, v, parse("!p <-> !q")) == kB, "v(!p <-> !q) != b");
  o.require(evaluate(m, v, parse("@p <-> @q")) == kB, "v(@p <-> @q) != b");
  o.require(evaluate(m, v, f_neg) == kB && evaluate(m, v, f_circ) == kB, "final value != b");
  if (o.pass) o.detail = "countermodels found; v(p<->q)=a, final value b for both";
  return o;
}

// 3. Schema validity agrees with the equations.
Outcome models_axioms() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& b : a4()) {
    for (AxiomTag t : equational_tags()) {
      ++checked;
      o.require(models_schema(b, schema_of(t)) == satisfies_equation(b, t),
                std::string("discrepancy on ") + name(t));
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " (model, tag) pairs, zero discrepancies";
  return o;
}

// 4. Collapse of {ci,cf}, {cl,cf}, {ci,cl,cf}.
Outcome collapse() {
  Outcome o;
  auto cls = [](std::vector<AxiomTag> tags, int n = 2) {
    SearchSpec s;
    s.n_atoms = n;
    s.require_tags = std::move(tags);
    return keys(enumerate_balfis(s));
  };
  auto filtered = [](std::vector<AxiomTag> tags) {
    std::set<std::uint64_t> out;
    for (const auto& b : a4()) {
      if (std::all_of(tags.begin(), tags.end(), [&](AxiomTag t) { return satisfies_equation(b, t); })) {
        out.insert(table_key(b));
      }
    }
    return out;
  };
  using T = AxiomTag;
  const auto s1 = cls({T::ci, T::cf}), s2 = cls({T::cl, T::cf}), s3 = cls({T::ci, T::cl, T::cf});
  o.require(s1 == filtered({T::ci, T::cf}) && s2 == filtered({T::cl, T::cf}) &&
                s3 == filtered({T::ci, T::cl, T::cf}),
            "search disagrees with the filtered census");
  o.require(s1 == s2 && s2 == s3, "the three classes differ");
  o.require(!s1.empty(), "classes are empty");
  const auto e1 = cls({T::ci, T::cf}, 3), e2 = cls({T::cl, T::cf}, 3), e3 = cls({T::ci, T::cl, T::cf}, 3);
  o.require(e1 == e2 && e2 == e3, "the three classes differ over A8");
  if (o.pass) {
    o.detail = "all three classes equal: " + std::to_string(s1.size()) + " model(s) over A4, " +
               std::to_string(e1.size()) + " over A8";
  }
  return o;
}

// 5. Open-problem witnesses.
Outcome witnesses() {
  Outcome o;
  const Balfi bc = reconstruct_example(ExampleName::BPrime);
  o.require(models_schema(bc, schema_of(AxiomTag::cf)), "B' fails cf");
  o.require(is_paraconsistent(bc), "B' not paraconsistent");
  o.require(is_lfi(bc), "B' not an LFI");
  const Balfi ci = reconstruct_example(ExampleName::BRci16a);
  o.require(ci.algebra().size() == 16, "witness is not over A16");
  o.require(satisfies_equation(ci, AxiomTag::ci) && satisfies_equation(ci, AxiomTag::cf), "A16 witness fails ci or cf");
  o.require(is_paraconsistent(ci), "A16 witness not paraconsistent");
  if (o.pass) o.detail = "RbC witness over A4 and RCi witness over A16 found";
  return o;
}

// 6. Limit theorems.
Outcome limits() {
  Outcome o;
  std::size_t premise_class = 0;
  for (const auto& b : a4()) {
    if (!satisfies_equation(b, AxiomTag::ci) || !satisfies_equation(b, AxiomTag::cf)) continue;
    if (!models_schema(b, schema_of(AxiomTag::negSelfContradiction))) continue;
    ++premise_class;
    for (Element e : b.circ_table()) o.require(e == kOne, "circ is not constantly 1");
    o.require(!is_paraconsistent(b), "3-valued class has a paraconsistent model");
  }
  o.require(premise_class > 0, "no model in the premise class");
  const AxiomTag cila[] = {AxiomTag::ci, AxiomTag::cl, AxiomTag::cf, AxiomTag::caAnd, AxiomTag::caOr, AxiomTag::caImp};
  std::size_t cila_models = 0;
  for (const auto& b : a4()) {
    if (!std::all_of(std::begin(cila), std::end(cila), [&](AxiomTag t) { return satisfies_equation(b, t); })) continue;
    ++cila_models;
    o.require(!is_paraconsistent(b), "RCila model is paraconsistent");
  }
  SearchSpec a8;
  a8.n_atoms = 3;
  a8.require_tags.assign(std::begin(cila), std::end(cila));
  a8.require_paraconsistent = true;
  o.require(enumerate_balfis(a8).empty(), "paraconsistent RCila model over A8");
  if (o.pass) {
    o.detail = std::to_string(premise_class) + " models with circ = 1, " + std::to_string(cila_models) +
               " RCila models, none paraconsistent (A8 too)";
  }
  return o;
}

// 7. Soundness of RmbC and global explosion under cf.
Outcome soundness() {
  Outcome o;
  std::vector<Schema> schemas;
  for (const auto& ax : calculus_rmbc().axioms) schemas.push_back(ax.schema);
  for (const char* text : {"@a -> ~(a & !a)", "a & !a -> !@a", "@a -> !(a & !a)"}) {
    schemas.push_back(Schema{parse(text)});
  }
  for (const auto& b : a4()) {
    for (const auto& s : schemas) o.require(models_schema(b, s), "RmbC schema fails in A4: " + render(s.body));
  }
  const auto sample = random_balfis(3, 10000, 7);
  o.require(sample.size() == 10000, "random A8 sample is short");
  for (const auto& b : sample) {
    for (const auto& s : schemas) o.require(models_schema(b, s), "RmbC schema fails in A8: " + render(s.body));
  }
  const std::vector<Formula> gamma{var("p"), neg(var("p"))};
  SearchSpec cf;
  cf.require_tags = {AxiomTag::cf};
  o.require(!find_countermodel(cf, gamma, var("q"), ConsequenceMode::Global), "global explosion refuted under cf");
  std::vector<Balfi> cf_models;
  for (const auto& b : a4()) {
    if (satisfies_equation(b, AxiomTag::cf)) cf_models.push_back(b);
  }
  o.require(global_consequence(cf_models, gamma, var("q")), "direct check over the cf class fails");
  SearchSpec top;
  top.fixed_neg = {{3, kOne}};
  auto cm = find_countermodel(top, gamma, var("q"), ConsequenceMode::Global);
  o.require(cm.has_value(), "no global countermodel with neg 1 = 1");
  if (o.pass) {
    o.detail = std::to_string(schemas.size()) + " schemas valid in 1296 A4 and 10000 random A8 models; global explosion holds under cf only";
  }
  return o;
}

// 8. Frame conditions.
Outcome frames() {
  Outcome o;
  const AxiomTag tags[] = {AxiomTag::ciw, AxiomTag::ci, AxiomTag::cl, AxiomTag::cf, AxiomTag::ce};
  std::atomic<std::size_t> visited{0};
  const std::size_t bad = sweep_frames(2, jobs(), [&](const NeighborhoodFrame& fr) {
    ++visited;
    for (AxiomTag t : tags) {
      if (frame_condition(fr, t) != frame_valid_schema(fr, schema_of(t))) return false;
    }
    return true;
  });
  o.require(visited == 65536, "visited " + std::to_string(visited.load()) + " frames");
  o.require(bad == 0, std::to_string(bad) + " frames disagree");
  if (o.pass) o.detail = "65536 frames x 5 tags, zero discrepancies";
  return o;
}

// 9. Modal translation.
Outcome translation() {
  Outcome o;
  const std::vector<Formula> small = all_formulas(2, {"p", "q"});
  std::size_t cases = 0;
  for (std::uint32_t code = 0; code < 16; ++code) {
    NeighborhoodFrame fr{1, {Element{code & 1}, Element{(code >> 1) & 1}},
                         {Element{(code >> 2) & 1}, Element{(code >> 3) & 1}}};
    MinimalModel n = n_from_s(fr);
    for (std::uint32_t dp = 0; dp < 2; ++dp) {
      for (std::uint32_t dq = 0; dq < 2; ++dq) {
        NeighborhoodModel m{fr, {{"p", Element{dp}}, {"q", Element{dq}}}};
        n.d = m.d;
        for (const auto& f : small) {
          ++cases;
          o.require(denote(m, f) == denote_bimodal(n, translate(f)), "|W|=1 mismatch on " + render(f));
        }
      }
    }
  }
  Rng rng(11);
  for (int i = 0; i < 5000; ++i) {
    const int worlds = 1 + static_cast<int>(pick(rng, 4));
    NeighborhoodModel m{random_frame(rng, worlds), {}};
    for (const char* x : {"p", "q", "r"}) m.d[x] = Element{static_cast<std::uint32_t>(pick(rng, 1u << worlds))};
    MinimalModel n = n_from_s(m.frame);
    n.d = m.d;
    const Formula f = random_formula(rng, 6, {"p", "q", "r"});
    o.require(denote(m, f) == denote_bimodal(n, translate(f)), "random mismatch on " + render(f));
    o.require(s_from_n(n) == m.frame, "s_from_n does not invert n_from_s");
  }
  for (const auto& b : a4()) o.require(balfi_from_frame(frame_from_balfi(b)) == b, "frame round trip changes a BALFI");
  if (o.pass) o.detail = std::to_string(cases) + " exhaustive |W|=1 cases, 5000 random, 1296 round trips";
  return o;
}

// 10. First-order semantics.
Outcome first_order() {
  Outcome o;
  Rng rng(23);
  std::vector<Balfi> pool = a4();
  pool.push_back(classical_balfi(1));
  const std::vector<std::string> vars{"x", "y", "z"};
  auto full_assignment = [&](const FOStructure& s) {
    Assignment mu;
    for (const auto& v : vars) mu[v] = static_cast<int>(pick(rng, s.universe));
    return mu;
  };
  auto free_instance = [&](const Formula& phi, const std::string& x, Term& t) -> std::optional<Formula> {
    for (int tries = 0; tries < 50; ++tries) {
      t = random_term(rng, 2, vars);
      try {
        return fo_substitute(phi, x, t);
      } catch (const NotFreeFor&) {
      }
    }
    return std::nullopt;
  };

  std::size_t lemma = 0, captured = 0;
  while (lemma < 1000) {
    const FOStructure s = random_structure(rng, pool);
    const Formula phi = random_fo_formula(rng, 5, vars);
    const std::string x = vars[pick(rng, vars.size())];
    const Term t = random_term(rng, 2, vars);
    Formula inst = phi;
    try {
      inst = fo_substitute(phi, x, t);
    } catch (const NotFreeFor&) {
      ++captured;
      continue;
    }
    Assignment mu = full_assignment(s);
    Assignment shifted = mu;
    shifted[x] = term_denote(s, mu, t);
    o.require(fo_evaluate(s, mu, inst) == fo_evaluate(s, shifted, phi), "substitution lemma fails on " + render(phi));
    ++lemma;
  }

  std::size_t exists_premise = 0, forall_premise = 0;
  for (int i = 0; i < 1000; ++i) {
    const FOStructure s = random_structure(rng, pool);
    const Formula phi = random_fo_formula(rng, 4, vars);
    const std::string x = vars[pick(rng, vars.size())];
    Term t = Term::constant("c");
    if (auto inst = free_instance(phi, x, t)) {
      o.require(fo_valid_in(s, imp(Formula::quant(Connective::Forall, x, phi), *inst)), "Ax-forall instance fails");
      o.require(fo_valid_in(s, imp(*inst, Formula::quant(Connective::Exists, x, phi))), "Ax-exists instance fails");
    }
    Formula psi = random_fo_formula(rng, 3, vars);
    for (int tries = 0; occurs_free(x, psi) && tries < 50; ++tries) psi = random_fo_formula(rng, 3, vars);
    if (occurs_free(x, psi) || pick(rng, 2) == 0) psi = Formula::quant(Connective::Exists, x, phi);
    if (fo_valid_in(s, imp(phi, psi))) {
      ++exists_premise;
      o.require(fo_valid_in(s, imp(Formula::quant(Connective::Exists, x, phi), psi)), "exists-in is unsound");
    }
    if (psi.op() == Connective::Exists && psi.child() == phi) psi = Formula::quant(Connective::Forall, x, phi);
    if (fo_valid_in(s, imp(psi, phi))) {
      ++forall_premise;
      o.require(fo_valid_in(s, imp(psi, Formula::quant(Connective::Forall, x, phi))), "forall-in is unsound");
    }
  }
  o.require(exists_premise > 0 && forall_premise > 0, "rule premises never held");

  for (int i = 0; i < 500; ++i) {
    const FOStructure s = random_structure(rng, pool);
    const Formula phi = random_fo_formula(rng, 4, vars);
    o.require(fo_valid_in(s, phi) == fo_valid_in(s, universal_closure(phi)), "closure changes validity of " + render(phi));
  }
  if (o.pass) {
    o.detail = "1000 lemma instances (" + std::to_string(captured) + " captures skipped), rule premises held " +
               std::to_string(exists_premise) + "/" + std::to_string(forall_premise) + " times, 500 closures";
  }
  return o;
}

// 11. Proof checker.
std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<ProofError::Kind> check_text(const std::string& text) {
  Script s = parse_script(text);
  const CalculusSpec calc = calculus_by_name(s.calculus);
  const Formula goal = s.goal.value_or(Formula::top());
  Verdict v = check_global_derivation(calc, s.proof.premises, goal, s.proof);
  if (v) return std::nullopt;
  return v.error->kind();
}

struct Mutation {
  ProofError::Kind expected;
  std::function<std::optional<std::string>(const std::string&)> apply;
};

// Rewrites the first line matching re; nullopt if none matches.
std::optional<std::string> rewrite_line(const std::string& text, const std::regex& re,
                                        const std::function<std::string(const std::smatch&)>& fn) {
  std::istringstream in(text);
  std::string line, out;
  bool done = false;
  while (std::getline(in, line)) {
    std::smatch m;
    if (!done && std::regex_match(line, m, re)) {
      line = fn(m);
      done = true;
    }
    out += line + "\n";
  }
  if (!done) return std::nullopt;
  return out;
}

Outcome proof_checker() {
  Outcome o;
  const std::vector<Mutation> mutations{
      {ProofError::Kind::BadAxiomInstance,
       [](const std::string& t) {
         return rewrite_line(t, std::regex(R"((\d+\. axiom .*) : (.*))"),
                             [](const std::smatch& m) { return m[1].str() + " : (" + m[2].str() + ") & p"; });
       }},
      {ProofError::Kind::BadRuleApplication,
       [](const std::string& t) {
         return rewrite_line(t, std::regex(R"((\d+)\. mp (\d+) (\d+)( : .*)?)"), [](const std::smatch& m) {
           return m[1].str() + ". mp " + m[3].str() + " " + m[2].str() + m[4].str();
         });
       }},
      {ProofError::Kind::ForwardReference,
       [](const std::string& t) {
         return rewrite_line(t, std::regex(R"((\d+)\. (mp|rneg|rcirc|rbox1|rbox2|existsin|forallin) (\d+)(.*))"),
                             [](const std::smatch& m) {
                               return m[1].str() + ". " + m[2].str() + " " + m[1].str() + m[4].str();
                             });
       }},
  };
  std::size_t green = 0, mutants = 0;
  for (const auto& entry : std::filesystem::directory_iterator(BALFI_PROOFS_DIR)) {
    if (entry.path().extension() != ".prf") continue;
    const std::string file = entry.path().filename().string();
    const std::string text = read_text(entry.path());
    auto verdict = check_text(text);
    o.require(!verdict, file + " is rejected");
    if (!verdict) ++green;
    std::size_t applied = 0;
    for (const auto& mu : mutations) {
      auto mutated = mu.apply(text);
      if (!mutated) continue;
      ++applied;
      ++mutants;
      std::optional<ProofError::Kind> got;
      try {
        got = check_text(*mutated);
      } catch (const std::exception& e) {
        o.require(false, file + " mutant throws outside the checker: " + e.what());
        continue;
      }
      o.require(got.has_value(), file + " mutant accepted");
      if (got) o.require(*got == mu.expected, file + ": expected " + name(mu.expected) + ", got " + name(*got));
    }
    o.require(applied > 0, file + " admits no mutation");
  }
  o.require(green >= 6, "only " + std::to_string(green) + " shipped scripts");

  Script rneg = parse_script(read_text(std::filesystem::path(BALFI_PROOFS_DIR) / "rneg_on_premise.prf"));
  const CalculusSpec calc = calculus_by_name(rneg.calculus);
  o.require(static_cast<bool>(check_global_derivation(calc, rneg.proof.premises, *rneg.goal, rneg.proof)),
            "RNeg script rejected globally");
  Verdict local = check_local_derivation(calc, rneg.proof.premises, *rneg.goal, rneg.proof);
  o.require(!local && local.error->kind() == ProofError::Kind::BadRuleApplication, "RNeg script accepted locally");
  if (o.pass) {
    o.detail = std::to_string(green) + " scripts green, " + std::to_string(mutants) +
               " mutants rejected with the expected class, RNeg-on-premise global only";
  }
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "A4 census", 1.0, census},
      {2, "replacement failure witness", 1.0, replacement},
      {3, "schema validity matches equations", 10.0, models_axioms},
      {4, "collapse of ci/cl with cf", 10.0, collapse},
      {5, "open-problem witnesses", 60.0, witnesses},
      {6, "limit theorems", 10.0, limits},
      {7, "soundness and global explosion", 30.0, soundness},
      {8, "frame-condition equivalence", 120.0, frames},
      {9, "modal translation", 60.0, translation},
      {10, "first-order semantics", 60.0, first_order},
      {11, "proof checker", 60.0, proof_checker},
  };
  (void)a4();
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.limit_s) {
      o.pass = false;
      o.detail = "over the time limit: " + o.detail;
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %-36s %7.3f s / %5.0f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                c.limit_s, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
