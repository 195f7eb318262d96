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

#include <doctest.h>

#include "balfi/hilbert.hpp"
#include "balfi/modelfind.hpp"
#include "balfi/syntax.hpp"

using namespace balfi;

namespace {

ProofError::Kind rejection(const CalculusSpec& calc, const Proof& proof, Regime regime) {
  try {
    check_steps(calc, proof, regime);
  } catch (const ProofError& e) {
    return e.kind();
  }
  FAIL("proof was accepted");
  return ProofError::Kind::BadWitness;
}

}  // namespace

TEST_SUITE("hilbert") {

TEST_CASE("calculus lookup") {
  for (const auto& n : calculus_names()) CHECK_NOTHROW(calculus_by_name(n));
  CHECK(calculus_by_name("RmbC(ci,cf)").name == "RmbC(ci,cf)");
  CHECK(calculus_by_name("RCi").find_axiom("ci") != nullptr);
  CHECK(calculus_by_name("RmbC").is_global_only(RuleId::RNeg));
  CHECK_FALSE(calculus_by_name("mbC").has_rule(RuleId::RNeg));
  CHECK(calculus_by_name("EplusE").has_rule(RuleId::RBox2));
  CHECK_THROWS(calculus_by_name("nonsense"));
}

TEST_CASE("identity and modus ponens order") {
  const CalculusSpec calc = calculus_cpl_plus();
  ProofBuilder pb(calc);
  const std::size_t id = pb.identity(var("p"));
  CHECK(pb.formula(id) == imp(var("p"), var("p")));
  CHECK(check_theorem(calc, pb.proof()) == imp(var("p"), var("p")));
  ProofBuilder swapped(calc);
  const std::size_t a = swapped.axiom("Ax1", {{"a", var("p")}, {"b", var("q")}});
  const std::size_t b = swapped.axiom("Ax1", {{"a", imp(var("p"), imp(var("q"), var("p")))}, {"b", var("r")}});
  CHECK_THROWS_AS(swapped.mp(b, a), ProofError);
  CHECK_NOTHROW(swapped.mp(a, b));
}

TEST_CASE("error classes") {
  const CalculusSpec calc = calculus_rmbc();
  Proof bad_axiom;
  bad_axiom.steps.push_back(Step{AxiomStep{"Ax1", {{"a", var("p")}, {"b", var("q")}}, {}, {}}, parse("p -> q")});
  CHECK(rejection(calc, bad_axiom, Regime::Theorem) == ProofError::Kind::BadAxiomInstance);

  Proof unknown;
  unknown.steps.push_back(Step{AxiomStep{"cf", {{"a", var("p")}}, {}, {}}, std::nullopt});
  CHECK(rejection(calc, unknown, Regime::Theorem) == ProofError::Kind::BadAxiomInstance);

  Proof forward;
  forward.steps.push_back(Step{RuleStep{RuleId::MP, {1, 2}, {}}, std::nullopt});
  CHECK(rejection(calc, forward, Regime::Theorem) == ProofError::Kind::ForwardReference);

  Proof premise;
  premise.steps.push_back(Step{PremiseStep{1}, std::nullopt});
  CHECK(rejection(calc, premise, Regime::Global) == ProofError::Kind::BadPremise);

  Proof local;
  local.premises = {iff(var("p"), var("q"))};
  local.steps.push_back(Step{PremiseStep{1}, std::nullopt});
  local.steps.push_back(Step{RuleStep{RuleId::RNeg, {1}, {}}, std::nullopt});
  CHECK_NOTHROW(check_steps(calc, local, Regime::Global));
  CHECK(rejection(calc, local, Regime::Local) == ProofError::Kind::BadRuleApplication);
  CHECK(rejection(calculus_mbc(), local, Regime::Global) == ProofError::Kind::BadRuleApplication);
}

TEST_CASE("global and local verdicts") {
  const CalculusSpec calc = calculus_rmbc();
  const std::vector<Formula> gamma{var("p"), imp(var("p"), var("q"))};
  ProofBuilder pb(calc, gamma);
  pb.mp(pb.premise(1), pb.premise(2));
  CHECK(check_global_derivation(calc, gamma, var("q"), pb.proof()).accepted);
  CHECK(check_local_derivation(calc, gamma, var("q"), pb.proof()).accepted);
  Verdict wrong = check_global_derivation(calc, gamma, var("p"), pb.proof());
  REQUIRE_FALSE(wrong.accepted);
  CHECK(wrong.error->kind() == ProofError::Kind::ConclusionMismatch);

  ProofBuilder thm(calc);
  thm.identity(var("q"));
  CHECK(check_local_derivation(calc, gamma, imp(var("q"), var("q")), LocalWitness{{}, thm.proof()}).accepted);
  Verdict range = check_local_derivation(calc, gamma, var("q"), LocalWitness{{3}, thm.proof()});
  REQUIRE_FALSE(range.accepted);
  CHECK(range.error->kind() == ProofError::Kind::BadWitness);
}

TEST_CASE("discharge yields the deduction theorem") {
  const CalculusSpec calc = calculus_rmbc();
  const Formula p = var("p"), q = var("q");
  ProofBuilder pb(calc, {p, q});
  const std::size_t both = pb.and_intro(pb.premise(1), pb.premise(2));
  const std::size_t done = pb.discharge(both);
  CHECK(pb.formula(done) == imp(q, conj(p, q)));
  const Proof sub = pb.proof_of(done);
  CHECK(sub.premises == std::vector<Formula>{p});
  CHECK(check_global_derivation(calc, sub.premises, imp(q, conj(p, q)), sub).accepted);

  ProofBuilder blocked(calc, {iff(p, q)});
  const std::size_t r = blocked.rule(RuleId::RNeg, blocked.premise(1));
  CHECK_THROWS(blocked.discharge(r));
}

TEST_CASE("exporting a hypothesis") {
  const CalculusSpec calc = calculus_rmbc();
  const Formula p = var("p"), q = var("q");
  ProofBuilder w(calc);
  w.identity(conj(p, q));
  const std::vector<Formula> gamma{p};
  const Proof out = export_hypothesis(calc, w.proof(), gamma, q, conj(p, q));
  CHECK(check_theorem(calc, out) == imp(p, imp(q, conj(p, q))));
}

TEST_CASE("library theorems round trip and are semantically valid") {
  const auto lib = theorem_library();
  CHECK(lib.size() >= 6);
  for (const auto& e : lib) {
    CAPTURE(e.file);
    const Script s = parse_script(render_script(e.calculus, e.proof, e.goal, {}, e.title));
    CHECK(s.calculus == e.calculus.name);
    REQUIRE(s.goal.has_value());
    CHECK(*s.goal == e.goal);
    CHECK(check_global_derivation(e.calculus, s.proof.premises, e.goal, s.proof).accepted);
    if (e.calculus.sig != SignatureId::Sigma || e.calculus.first_order || e.global) continue;
    SearchSpec spec;
    for (const auto& ax : e.calculus.axioms) {
      if (auto t = axiom_tag_from_name(ax.id)) spec.require_tags.push_back(*t);
    }
    CHECK_FALSE(find_countermodel(spec, {}, e.goal, ConsequenceMode::Local).has_value());
  }
}

TEST_CASE("script syntax errors") {
  CHECK_THROWS(parse_script("calculus: RmbC\n1. frobnicate 2\n"));
  CHECK_THROWS(parse_script("calculus: Nope\n"));
  CHECK_THROWS(parse_script("calculus: RmbC\n1. axiom Ax1 {a: p\n"));
}

}
