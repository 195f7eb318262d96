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

#include "balfi/hilbert.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <sstream>

#include "balfi/firstorder.hpp"

namespace balfi {

namespace {

constexpr std::array<std::pair<RuleId, const char*>, 7> kRules{{
    {RuleId::MP, "mp"},
    {RuleId::RNeg, "rneg"},
    {RuleId::RCirc, "rcirc"},
    {RuleId::RBox1, "rbox1"},
    {RuleId::RBox2, "rbox2"},
    {RuleId::ExistsIn, "existsin"},
    {RuleId::ForallIn, "forallin"},
}};

constexpr std::array<std::pair<const char*, const char*>, 9> kPositiveAxioms{{
    {"Ax1", "a -> (b -> a)"},
    {"Ax2", "(a -> (b -> c)) -> ((a -> b) -> (a -> c))"},
    {"Ax3", "a -> (b -> a & b)"},
    {"Ax4", "a & b -> a"},
    {"Ax5", "a & b -> b"},
    {"Ax6", "a -> a | b"},
    {"Ax7", "b -> a | b"},
    {"Ax8", "(a -> c) -> ((b -> c) -> (a | b -> c))"},
    {"Ax9", "(a -> b) | a"},
}};

AxiomEntry schema_axiom(const std::string& id, std::string_view body, SignatureId sig) {
  return AxiomEntry{id, Schema{parse(body, sig)}, AxiomKind::Schema};
}

void add_positive(CalculusSpec& calc) {
  for (const auto& [id, body] : kPositiveAxioms) calc.axioms.push_back(schema_axiom(id, body, calc.sig));
}

std::string tagged_name(const std::string& base, std::span<const AxiomTag> extra) {
  if (extra.empty()) return base;
  std::string out = base + "(";
  for (std::size_t i = 0; i < extra.size(); ++i) {
    if (i) out += ",";
    out += name(extra[i]);
  }
  return out + ")";
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Formula unary_of(RuleId r, const Formula& f) {
  switch (r) {
    case RuleId::RNeg: return neg(f);
    case RuleId::RCirc: return circ(f);
    case RuleId::RBox1: return box1(f);
    default: return box2(f);
  }
}

[[noreturn]] void fail(ProofError::Kind kind, std::size_t step, const std::string& message) {
  throw ProofError(kind, step, message);
}

// Checks one step against the lines already accepted and appends it.
void check_one(const CalculusSpec& calc, const Proof& proof, Regime regime, std::size_t k,
               CheckedProof& out) {
  using Kind = ProofError::Kind;
  const Step& step = proof.steps[k - 1];
  Formula result = Formula::top();
  bool uses = false;

  if (const auto* ax = std::get_if<AxiomStep>(&step.body)) {
    const AxiomEntry* entry = calc.find_axiom(ax->axiom);
    if (!entry) fail(Kind::BadAxiomInstance, k, "unknown axiom '" + ax->axiom + "' in " + calc.name);
    if (entry->kind == AxiomKind::Schema) {
      if (!ax->binding.empty()) {
        try {
          result = substitute(entry->schema, ax->binding);
        } catch (const UnboundError& e) {
          fail(Kind::BadAxiomInstance, k, e.what());
        }
        if (step.formula && *step.formula != result) {
          fail(Kind::BadAxiomInstance, k, "asserted formula is not the instance of " + entry->id);
        }
      } else if (step.formula) {
        if (!match_schema(entry->schema, *step.formula)) {
          fail(Kind::BadAxiomInstance, k, render(*step.formula) + " is not an instance of " + entry->id);
        }
        result = *step.formula;
      } else {
        fail(Kind::BadAxiomInstance, k, "axiom step without binding or formula");
      }
    } else {
      const bool exists = entry->kind == AxiomKind::ExistsIntro;
      auto body_it = ax->binding.find("a");
      const bool explicit_binding = body_it != ax->binding.end() || ax->variable || ax->term;
      if (explicit_binding) {
        if (body_it == ax->binding.end() || !ax->variable || !ax->term) {
          fail(Kind::BadAxiomInstance, k, entry->id + " needs the bindings a, x and t");
        }
        const Formula& body = body_it->second;
        Formula inst = Formula::top();
        try {
          inst = fo_substitute(body, *ax->variable, *ax->term);
        } catch (const NotFreeFor& e) {
          fail(Kind::BadAxiomInstance, k, e.what());
        }
        Formula quant = Formula::quant(exists ? Connective::Exists : Connective::Forall,
                                       *ax->variable, body);
        result = exists ? imp(inst, quant) : imp(quant, inst);
        if (step.formula && *step.formula != result) {
          fail(Kind::BadAxiomInstance, k, "asserted formula is not the instance of " + entry->id);
        }
      } else if (step.formula) {
        const Formula& f = *step.formula;
        bool ok = false;
        if (f.op() == Connective::Imp) {
          const Formula& quant = exists ? f.right() : f.left();
          const Formula& inst = exists ? f.left() : f.right();
          const Connective q = exists ? Connective::Exists : Connective::Forall;
          ok = quant.op() == q && match_substitution(quant.child(), quant.name(), inst).has_value();
        }
        if (!ok) fail(Kind::BadAxiomInstance, k, render(f) + " is not an instance of " + entry->id);
        result = f;
      } else {
        fail(Kind::BadAxiomInstance, k, "axiom step without binding or formula");
      }
    }
    try {
      validate(result, calc.sig, calc.first_order);
    } catch (const SignatureError& e) {
      fail(Kind::BadAxiomInstance, k, e.what());
    }
  } else if (const auto* pr = std::get_if<PremiseStep>(&step.body)) {
    if (regime == Regime::Theorem) fail(Kind::BadPremise, k, "premise step in a theorem proof");
    if (pr->index < 1 || pr->index > proof.premises.size()) {
      fail(Kind::BadPremise, k, "no premise number " + std::to_string(pr->index));
    }
    result = proof.premises[pr->index - 1];
    if (step.formula && *step.formula != result) {
      fail(Kind::BadPremise, k, "asserted formula differs from premise " + std::to_string(pr->index));
    }
    uses = true;
  } else {
    const auto& rs = std::get<RuleStep>(step.body);
    const std::string rname = name(rs.rule);
    if (!calc.has_rule(rs.rule)) fail(Kind::BadRuleApplication, k, rname + " is not a rule of " + calc.name);
    const std::size_t arity = rs.rule == RuleId::MP ? 2 : 1;
    if (rs.cites.size() != arity) {
      fail(Kind::BadRuleApplication, k, rname + " cites " + std::to_string(arity) + " line(s)");
    }
    for (std::size_t c : rs.cites) {
      if (c >= k) fail(Kind::ForwardReference, k, "cites line " + std::to_string(c) + " at or after itself");
      if (c == 0) fail(Kind::BadRuleApplication, k, "line numbers start at 1");
      uses = uses || out.uses_premises[c - 1];
    }
    if (regime == Regime::Local && calc.is_global_only(rs.rule) && uses) {
      fail(Kind::BadRuleApplication, k, rname + " is global and its antecedent depends on premises");
    }
    const Formula& first = out.lines[rs.cites[0] - 1];
    switch (rs.rule) {
      case RuleId::MP: {
        const Formula& major = out.lines[rs.cites[1] - 1];
        if (major.op() != Connective::Imp || major.left() != first) {
          fail(Kind::BadRuleApplication, k,
               "line " + std::to_string(rs.cites[1]) + " is not an implication from line " +
                   std::to_string(rs.cites[0]));
        }
        result = major.right();
        break;
      }
      case RuleId::RNeg:
      case RuleId::RCirc:
      case RuleId::RBox1:
      case RuleId::RBox2: {
        Formula a = first, b = first;
        if (!split_iff(first, a, b)) fail(Kind::BadRuleApplication, k, rname + " needs a biconditional");
        result = iff(unary_of(rs.rule, a), unary_of(rs.rule, b));
        break;
      }
      case RuleId::ExistsIn:
      case RuleId::ForallIn: {
        if (!rs.variable) fail(Kind::BadRuleApplication, k, rname + " needs a variable");
        if (first.op() != Connective::Imp) fail(Kind::BadRuleApplication, k, rname + " needs an implication");
        const std::string& x = *rs.variable;
        if (rs.rule == RuleId::ExistsIn) {
          if (occurs_free(x, first.right())) {
            fail(Kind::BadRuleApplication, k, x + " occurs free in the consequent");
          }
          result = imp(Formula::quant(Connective::Exists, x, first.left()), first.right());
        } else {
          if (occurs_free(x, first.left())) {
            fail(Kind::BadRuleApplication, k, x + " occurs free in the antecedent");
          }
          result = imp(first.left(), Formula::quant(Connective::Forall, x, first.right()));
        }
        break;
      }
    }
    if (step.formula && *step.formula != result) {
      fail(Kind::BadRuleApplication, k, "asserted formula differs from the result of " + rname);
    }
  }
  out.lines.push_back(result);
  out.uses_premises.push_back(uses);
}

// Lines reachable from `line` through citations, as a sorted 1-based list.
std::vector<std::size_t> support_of(const Proof& proof, std::size_t line) {
  std::vector<bool> needed(line + 1, false);
  needed[line] = true;
  for (std::size_t k = line; k >= 1; --k) {
    if (!needed[k]) continue;
    if (const auto* rs = std::get_if<RuleStep>(&proof.steps[k - 1].body)) {
      for (std::size_t c : rs->cites) needed[c] = true;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k <= line; ++k) {
    if (needed[k]) out.push_back(k);
  }
  return out;
}

}  // namespace

const char* name(RuleId rule) noexcept { return kRules[static_cast<std::size_t>(rule)].second; }

std::optional<RuleId> rule_from_name(std::string_view text) {
  for (const auto& [r, n] : kRules) {
    if (text == n) return r;
  }
  return std::nullopt;
}

const AxiomEntry* CalculusSpec::find_axiom(std::string_view id) const {
  for (const auto& a : axioms) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

CalculusSpec calculus_cpl_plus() {
  CalculusSpec calc{"CPLplus", SignatureId::SigmaPlus, false, {}, {RuleId::MP}, {RuleId::MP}};
  add_positive(calc);
  return calc;
}

CalculusSpec calculus_mbc(std::span<const AxiomTag> extra) {
  CalculusSpec calc{tagged_name("mbC", extra), SignatureId::Sigma, false, {}, {RuleId::MP}, {RuleId::MP}};
  add_positive(calc);
  calc.axioms.push_back(schema_axiom("Ax10", "a | !a", calc.sig));
  calc.axioms.push_back(schema_axiom("bc1", "@a -> (a -> (!a -> b))", calc.sig));
  for (AxiomTag t : extra) calc.axioms.push_back({name(t), schema_of(t), AxiomKind::Schema});
  return calc;
}

CalculusSpec calculus_rmbc(std::span<const AxiomTag> extra) {
  CalculusSpec calc = calculus_mbc(extra);
  calc.name = tagged_name("RmbC", extra);
  calc.global_rules = {RuleId::MP, RuleId::RNeg, RuleId::RCirc};
  return calc;
}

CalculusSpec calculus_e() {
  CalculusSpec calc{"E", SignatureId::SigmaM, false, {}, {RuleId::MP}, {RuleId::MP, RuleId::RBox1}};
  add_positive(calc);
  calc.axioms.push_back(schema_axiom("PEM", "a | ~a", calc.sig));
  calc.axioms.push_back(schema_axiom("exp", "a -> (~a -> b)", calc.sig));
  calc.axioms.push_back(schema_axiom("AxMod1", "<1>a <-> ~[1]~a", calc.sig));
  return calc;
}

CalculusSpec calculus_e_plus_e() {
  CalculusSpec calc = calculus_e();
  calc.name = "EplusE";
  calc.sig = SignatureId::SigmaBM;
  for (auto& a : calc.axioms) a.schema = Schema{parse(render(a.schema.body), calc.sig)};
  calc.axioms.push_back(schema_axiom("AxMod2", "<2>a <-> ~[2]~a", calc.sig));
  calc.global_rules.insert(RuleId::RBox2);
  return calc;
}

CalculusSpec calculus_rqmbc() {
  CalculusSpec calc = calculus_rmbc();
  calc.name = "RQmbC";
  calc.first_order = true;
  calc.axioms.push_back({"AxExists", Schema{var("a")}, AxiomKind::ExistsIntro});
  calc.axioms.push_back({"AxForall", Schema{var("a")}, AxiomKind::ForallElim});
  calc.global_rules.insert(RuleId::ExistsIn);
  calc.global_rules.insert(RuleId::ForallIn);
  return calc;
}

CalculusSpec calculus_by_name(std::string_view text) {
  const std::string n = trim(text);
  if (n == "CPLplus" || n == "CPL+") return calculus_cpl_plus();
  if (n == "E") return calculus_e();
  if (n == "EplusE" || n == "E+E") return calculus_e_plus_e();
  if (n == "RQmbC") return calculus_rqmbc();
  if (n == "RmbC*") {
    CalculusSpec calc = calculus_rmbc();
    calc.name = "RmbC*";
    return calc;
  }
  if (n == "RbC") {
    std::array tags{AxiomTag::cf};
    return calculus_rmbc(tags);
  }
  if (n == "RCi") {
    std::array tags{AxiomTag::ci, AxiomTag::cf};
    return calculus_rmbc(tags);
  }
  if (n == "RCila") {
    std::array tags{AxiomTag::ci, AxiomTag::cl, AxiomTag::cf,
                    AxiomTag::caAnd, AxiomTag::caOr, AxiomTag::caImp};
    return calculus_rmbc(tags);
  }
  std::string base = n;
  std::vector<AxiomTag> tags;
  if (auto open = n.find('('); open != std::string::npos) {
    if (n.back() != ')') throw Error("malformed calculus name '" + n + "'");
    base = n.substr(0, open);
    std::stringstream list(n.substr(open + 1, n.size() - open - 2));
    std::string item;
    while (std::getline(list, item, ',')) {
      auto tag = axiom_tag_from_name(trim(item));
      if (!tag) throw Error("unknown axiom tag '" + trim(item) + "'");
      tags.push_back(*tag);
    }
  }
  if (base == "mbC") return calculus_mbc(tags);
  if (base == "RmbC") return calculus_rmbc(tags);
  throw Error("unknown calculus '" + n + "'");
}

std::vector<std::string> calculus_names() {
  return {"CPLplus", "mbC", "RmbC", "RmbC*", "RbC", "RCi", "RCila", "E", "EplusE", "RQmbC"};
}

ProofError::ProofError(Kind kind, std::size_t step, const std::string& message)
    : Error(std::string(name(kind)) + (step ? " at step " + std::to_string(step) : std::string()) +
            ": " + message),
      kind_(kind),
      step_(step) {}

const char* name(ProofError::Kind kind) noexcept {
  switch (kind) {
    case ProofError::Kind::BadAxiomInstance: return "BadAxiomInstance";
    case ProofError::Kind::BadRuleApplication: return "BadRuleApplication";
    case ProofError::Kind::ForwardReference: return "ForwardReference";
    case ProofError::Kind::BadPremise: return "BadPremise";
    case ProofError::Kind::ConclusionMismatch: return "ConclusionMismatch";
    case ProofError::Kind::BadWitness: return "BadWitness";
  }
  return "?";
}

CheckedProof check_steps(const CalculusSpec& calc, const Proof& proof, Regime regime) {
  if (regime == Regime::Theorem && !proof.premises.empty()) {
    fail(ProofError::Kind::BadPremise, 0, "a theorem proof has no premises");
  }
  CheckedProof out;
  for (std::size_t k = 1; k <= proof.steps.size(); ++k) check_one(calc, proof, regime, k, out);
  return out;
}

Formula check_theorem(const CalculusSpec& calc, const Proof& proof) {
  CheckedProof checked = check_steps(calc, proof, Regime::Theorem);
  if (checked.lines.empty()) fail(ProofError::Kind::ConclusionMismatch, 0, "empty proof");
  return checked.lines.back();
}

namespace {

Verdict run_checked(const std::function<void()>& body) {
  try {
    body();
  } catch (const ProofError& e) {
    return Verdict{false, e};
  }
  return Verdict{true, std::nullopt};
}

void require_conclusion(const CheckedProof& checked, const Formula& phi) {
  if (checked.lines.empty()) fail(ProofError::Kind::ConclusionMismatch, 0, "empty proof");
  if (checked.lines.back() != phi) {
    fail(ProofError::Kind::ConclusionMismatch, checked.lines.size(),
         "proof ends in " + render(checked.lines.back()) + ", not " + render(phi));
  }
}

void require_premises(const Proof& proof, std::span<const Formula> gamma) {
  if (!std::ranges::equal(proof.premises, gamma)) {
    fail(ProofError::Kind::BadPremise, 0, "the proof's premises differ from the given set");
  }
}

}  // namespace

Verdict check_global_derivation(const CalculusSpec& calc, std::span<const Formula> gamma,
                                const Formula& phi, const Proof& proof) {
  return run_checked([&] {
    require_premises(proof, gamma);
    require_conclusion(check_steps(calc, proof, Regime::Global), phi);
  });
}

Verdict check_local_derivation(const CalculusSpec& calc, std::span<const Formula> gamma,
                               const Formula& phi, const LocalWitness& witness) {
  return run_checked([&] {
    if (!witness.proof.premises.empty()) {
      fail(ProofError::Kind::BadWitness, 0, "the witness proof must not use premises");
    }
    std::vector<Formula> chosen;
    for (std::size_t i : witness.subset) {
      if (i < 1 || i > gamma.size()) {
        fail(ProofError::Kind::BadWitness, 0, "premise index " + std::to_string(i) + " is out of range");
      }
      chosen.push_back(gamma[i - 1]);
    }
    Formula proved = check_theorem(calc, witness.proof);
    if (proved == phi) return;
    if (!chosen.empty() && proved == imp(conj_all(chosen), phi)) return;
    fail(ProofError::Kind::ConclusionMismatch, witness.proof.steps.size(),
         "the witness proves " + render(proved));
  });
}

Verdict check_local_derivation(const CalculusSpec& calc, std::span<const Formula> gamma,
                               const Formula& phi, const Proof& proof) {
  return run_checked([&] {
    require_premises(proof, gamma);
    require_conclusion(check_steps(calc, proof, Regime::Local), phi);
  });
}

// ---------------------------------------------------------------------------
// ProofBuilder

ProofBuilder::ProofBuilder(CalculusSpec calc, std::vector<Formula> premises)
    : calc_(std::move(calc)) {
  proof_.premises = std::move(premises);
}

std::size_t ProofBuilder::push(Step step) {
  proof_.steps.push_back(std::move(step));
  try {
    check_one(calc_, proof_, Regime::Global, proof_.steps.size(), checked_);
  } catch (...) {
    proof_.steps.pop_back();
    throw;
  }
  proof_.steps.back().formula = checked_.lines.back();
  return proof_.steps.size();
}

std::size_t ProofBuilder::axiom(const std::string& id, Binding binding) {
  return push(Step{AxiomStep{id, std::move(binding), std::nullopt, std::nullopt}, std::nullopt});
}

std::size_t ProofBuilder::quantifier_axiom(const std::string& id, const Formula& body,
                                           const std::string& x, const Term& t) {
  return push(Step{AxiomStep{id, Binding{{"a", body}}, x, t}, std::nullopt});
}

std::size_t ProofBuilder::premise(std::size_t index) {
  return push(Step{PremiseStep{index}, std::nullopt});
}

std::size_t ProofBuilder::mp(std::size_t minor, std::size_t major) {
  return push(Step{RuleStep{RuleId::MP, {minor, major}, std::nullopt}, std::nullopt});
}

std::size_t ProofBuilder::rule(RuleId r, std::size_t line, std::optional<std::string> variable) {
  return push(Step{RuleStep{r, {line}, std::move(variable)}, std::nullopt});
}

std::size_t ProofBuilder::embed(const Proof& theorem) {
  if (!theorem.premises.empty()) throw Error("only premise-free proofs can be embedded");
  const std::size_t offset = size();
  for (Step s : theorem.steps) {
    if (auto* rs = std::get_if<RuleStep>(&s.body)) {
      for (auto& c : rs->cites) c += offset;
    }
    push(std::move(s));
  }
  return size();
}

std::size_t ProofBuilder::and_intro(std::size_t left, std::size_t right) {
  const std::size_t ax = axiom("Ax3", {{"a", formula(left)}, {"b", formula(right)}});
  return mp(right, mp(left, ax));
}

std::size_t ProofBuilder::and_left(std::size_t line) {
  const Formula& f = formula(line);
  if (f.op() != Connective::And) throw Error("and_left needs a conjunction");
  return mp(line, axiom("Ax4", {{"a", f.left()}, {"b", f.right()}}));
}

std::size_t ProofBuilder::and_right(std::size_t line) {
  const Formula& f = formula(line);
  if (f.op() != Connective::And) throw Error("and_right needs a conjunction");
  return mp(line, axiom("Ax5", {{"a", f.left()}, {"b", f.right()}}));
}

std::size_t ProofBuilder::identity(const Formula& a) {
  const Formula aa = imp(a, a);
  const std::size_t s1 = axiom("Ax1", {{"a", a}, {"b", aa}});
  const std::size_t s2 = axiom("Ax2", {{"a", a}, {"b", aa}, {"c", a}});
  const std::size_t s3 = mp(s1, s2);
  const std::size_t s4 = axiom("Ax1", {{"a", a}, {"b", a}});
  return mp(s4, s3);
}

const Formula& ProofBuilder::formula(std::size_t line) const {
  if (line < 1 || line > checked_.lines.size()) throw Error("no line " + std::to_string(line));
  return checked_.lines[line - 1];
}

Proof ProofBuilder::proof_of(std::size_t line) const {
  std::vector<std::size_t> keep = support_of(proof_, line);
  std::map<std::size_t, std::size_t> renumber;
  Proof out;
  out.premises = proof_.premises;
  for (std::size_t k : keep) {
    Step s = proof_.steps[k - 1];
    if (auto* rs = std::get_if<RuleStep>(&s.body)) {
      for (auto& c : rs->cites) c = renumber.at(c);
    }
    out.steps.push_back(std::move(s));
    renumber[k] = out.steps.size();
  }
  return out;
}

std::size_t ProofBuilder::discharge(std::size_t line) {
  if (proof_.premises.empty()) throw Error("no premise to discharge");
  formula(line);
  const std::size_t last = proof_.premises.size();
  const Formula h = proof_.premises.back();
  std::vector<Formula> rest(proof_.premises.begin(), proof_.premises.end() - 1);

  std::vector<bool> on_h(size() + 1, false);
  for (std::size_t k = 1; k <= size(); ++k) {
    const Step& s = proof_.steps[k - 1];
    if (const auto* pr = std::get_if<PremiseStep>(&s.body)) {
      on_h[k] = pr->index == last;
    } else if (const auto* rs = std::get_if<RuleStep>(&s.body)) {
      for (std::size_t c : rs->cites) on_h[k] = on_h[k] || on_h[c];
    }
  }

  ProofBuilder out(calc_, rest);
  std::map<std::size_t, std::size_t> copy_of, imp_of;
  auto lifted = [&](std::size_t k) {
    if (auto it = imp_of.find(k); it != imp_of.end()) return it->second;
    const std::size_t ax = out.axiom("Ax1", {{"a", formula(k)}, {"b", h}});
    const std::size_t r = out.mp(copy_of.at(k), ax);
    imp_of[k] = r;
    return r;
  };

  for (std::size_t k : support_of(proof_, line)) {
    Step s = proof_.steps[k - 1];
    if (!on_h[k]) {
      if (auto* rs = std::get_if<RuleStep>(&s.body)) {
        for (auto& c : rs->cites) c = copy_of.at(c);
      }
      copy_of[k] = out.push(std::move(s));
      continue;
    }
    if (std::holds_alternative<PremiseStep>(s.body)) {
      imp_of[k] = out.identity(h);
      continue;
    }
    const auto& rs = std::get<RuleStep>(s.body);
    if (rs.rule != RuleId::MP) {
      throw ProofError(ProofError::Kind::BadRuleApplication, k,
                       std::string(name(rs.rule)) + " applied to a line depending on the discharged premise");
    }
    const std::size_t i = rs.cites[0], j = rs.cites[1];
    const std::size_t hi = on_h[i] ? imp_of.at(i) : lifted(i);
    const std::size_t hj = on_h[j] ? imp_of.at(j) : lifted(j);
    const Formula& major = formula(j);
    const std::size_t ax2 = out.axiom("Ax2", {{"a", h}, {"b", major.left()}, {"c", major.right()}});
    imp_of[k] = out.mp(hi, out.mp(hj, ax2));
  }
  const std::size_t result = on_h[line] ? imp_of.at(line) : lifted(line);
  Proof pruned = out.proof_of(result);
  ProofBuilder fresh(calc_, rest);
  for (Step s : pruned.steps) fresh.push(std::move(s));
  *this = std::move(fresh);
  return size();
}

Proof export_hypothesis(const CalculusSpec& calc, const Proof& witness,
                        std::span<const Formula> gamma, const Formula& a, const Formula& b) {
  if (gamma.empty()) {
    if (check_theorem(calc, witness) != imp(a, b)) throw Error("witness does not prove a -> b");
    return witness;
  }
  const Formula all = conj_all(gamma);
  ProofBuilder pb(calc, {all, a});
  const std::size_t w = pb.embed(witness);
  std::vector<std::size_t> parts;
  std::size_t rest = pb.premise(1);
  for (std::size_t i = 0; i + 1 < gamma.size(); ++i) {
    parts.push_back(pb.and_left(rest));
    rest = pb.and_right(rest);
  }
  parts.push_back(rest);
  std::size_t acc = pb.and_intro(parts.back(), pb.premise(2));
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = pb.and_intro(parts[i], acc);
  const Formula expected = imp(pb.formula(acc), b);
  if (pb.formula(w) != expected) throw Error("witness does not prove " + render(expected));
  const std::size_t got = pb.mp(acc, w);
  pb.discharge(got);
  const std::size_t done = pb.discharge(pb.size());
  return pb.proof_of(done);
}

// ---------------------------------------------------------------------------
// Scripts

namespace {

std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

class ScriptReader {
 public:
  ScriptReader(std::string_view text, const std::optional<CalculusSpec>& fallback)
      : text_(text), calc_(fallback) {}

  Script read() {
    std::size_t offset = 0, line_no = 0;
    while (offset <= text_.size()) {
      std::size_t end = text_.find('\n', offset);
      if (end == std::string_view::npos) end = text_.size();
      ++line_no;
      line_start_ = offset;
      line_no_ = line_no;
      std::string_view raw = text_.substr(offset, end - offset);
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      const std::string line = trim(raw);
      if (!line.empty()) handle(line);
      offset = end + 1;
    }
    if (calc_) script_.calculus = calc_->name;
    return std::move(script_);
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    throw ParseError(line_start_, "line " + std::to_string(line_no_) + ": " + msg);
  }

  const CalculusSpec& calc() const {
    if (!calc_) error("no calculus selected before the first formula");
    return *calc_;
  }

  Formula formula(const std::string& text) const {
    try {
      if (calc().first_order) return parse_first_order(text, script_.constants);
      return parse(text, calc().sig);
    } catch (const ParseError& e) {
      error(e.what());
    } catch (const SignatureError& e) {
      error(e.what());
    }
  }

  void handle(const std::string& line) {
    if (std::isdigit(static_cast<unsigned char>(line[0]))) {
      step(line);
      return;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) error("expected 'key: value' or a numbered step");
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    if (key == "calculus") {
      try {
        calc_ = calculus_by_name(value);
      } catch (const Error& e) {
        error(e.what());
      }
    } else if (key == "constants") {
      for (const auto& c : split_top_level(value)) script_.constants.insert(c);
    } else if (key == "premise") {
      script_.proof.premises.push_back(formula(value));
    } else if (key == "goal") {
      script_.goal = formula(value);
    } else if (key != "title") {
      error("unknown header '" + key + "'");
    }
  }

  static std::size_t number(const std::string& token, const ScriptReader& r) {
    if (token.empty() || !std::all_of(token.begin(), token.end(), ::isdigit)) {
      r.error("expected a line number, got '" + token + "'");
    }
    return std::stoul(token);
  }

  void step(const std::string& line) {
    const auto dot = line.find('.');
    if (dot == std::string::npos) error("expected 'n.'");
    const std::size_t n = number(line.substr(0, dot), *this);
    if (n != script_.proof.steps.size() + 1) {
      error("step " + std::to_string(n) + " out of sequence");
    }
    std::string rest = trim(line.substr(dot + 1));
    std::string verb = rest.substr(0, rest.find_first_of(" \t:{"));
    rest = trim(rest.substr(verb.size()));

    Step s{PremiseStep{}, std::nullopt};
    if (verb == "axiom") {
      std::string id = rest.substr(0, rest.find_first_of(" \t:{"));
      if (id.empty()) error("axiom step without an axiom id");
      rest = trim(rest.substr(id.size()));
      AxiomStep ax{id, {}, std::nullopt, std::nullopt};
      const AxiomEntry* entry = calc().find_axiom(id);
      const bool quantifier = entry && entry->kind != AxiomKind::Schema;
      if (!rest.empty() && rest[0] == '{') {
        const auto close = rest.find('}');
        if (close == std::string::npos) error("unterminated binding");
        for (const auto& item : split_top_level(rest.substr(1, close - 1))) {
          const auto c = item.find(':');
          if (c == std::string::npos) error("binding entry without ':'");
          const std::string key = trim(item.substr(0, c));
          const std::string value = trim(item.substr(c + 1));
          if (quantifier && key == "x") {
            ax.variable = value;
          } else if (quantifier && key == "t") {
            try {
              ax.term = parse_term(value, script_.constants);
            } catch (const ParseError& e) {
              error(e.what());
            }
          } else {
            ax.binding.insert_or_assign(key, formula(value));
          }
        }
        rest = trim(rest.substr(close + 1));
      }
      s.body = std::move(ax);
    } else {
      std::string args = rest.substr(0, rest.find(':'));
      rest = rest.substr(args.size());
      std::istringstream in(args);
      std::vector<std::string> words;
      for (std::string w; in >> w;) words.push_back(w);
      if (verb == "premise") {
        if (words.size() != 1) error("premise takes one index");
        s.body = PremiseStep{number(words[0], *this)};
      } else if (auto r = rule_from_name(verb)) {
        const bool quant = *r == RuleId::ExistsIn || *r == RuleId::ForallIn;
        const std::size_t want = *r == RuleId::MP ? 2 : quant ? 2 : 1;
        if (words.size() != want) error(verb + " takes " + std::to_string(want) + " argument(s)");
        RuleStep rs{*r, {}, std::nullopt};
        if (quant) {
          rs.cites.push_back(number(words[0], *this));
          rs.variable = words[1];
        } else {
          for (const auto& w : words) rs.cites.push_back(number(w, *this));
        }
        s.body = std::move(rs);
      } else {
        error("unknown step kind '" + verb + "'");
      }
    }
    rest = trim(rest);
    if (!rest.empty()) {
      if (rest[0] != ':') error("unexpected '" + rest + "'");
      s.formula = formula(trim(rest.substr(1)));
    }
    script_.proof.steps.push_back(std::move(s));
  }

  std::string_view text_;
  std::optional<CalculusSpec> calc_;
  Script script_;
  std::size_t line_start_ = 0, line_no_ = 0;
};

}  // namespace

Script parse_script(std::string_view text, const std::optional<CalculusSpec>& fallback) {
  return ScriptReader(text, fallback).read();
}

std::string render_script(const CalculusSpec& calc, const Proof& proof,
                          const std::optional<Formula>& goal,
                          const std::set<std::string>& constants, const std::string& title) {
  std::ostringstream out;
  if (!title.empty()) out << "# " << title << "\n";
  out << "calculus: " << calc.name << "\n";
  if (!constants.empty()) {
    out << "constants: ";
    bool first = true;
    for (const auto& c : constants) {
      out << (first ? "" : ", ") << c;
      first = false;
    }
    out << "\n";
  }
  for (const auto& p : proof.premises) out << "premise: " << render(p) << "\n";
  if (goal) out << "goal: " << render(*goal) << "\n";
  for (std::size_t k = 1; k <= proof.steps.size(); ++k) {
    const Step& s = proof.steps[k - 1];
    out << k << ". ";
    if (const auto* ax = std::get_if<AxiomStep>(&s.body)) {
      out << "axiom " << ax->axiom;
      if (!ax->binding.empty() || ax->variable || ax->term) {
        out << " {";
        bool first = true;
        for (const auto& [key, f] : ax->binding) {
          out << (first ? "" : ", ") << key << ": " << render(f);
          first = false;
        }
        if (ax->variable) out << (first ? "" : ", ") << "x: " << *ax->variable, first = false;
        if (ax->term) out << (first ? "" : ", ") << "t: " << render(*ax->term);
        out << "}";
      }
    } else if (const auto* pr = std::get_if<PremiseStep>(&s.body)) {
      out << "premise " << pr->index;
    } else {
      const auto& rs = std::get<RuleStep>(s.body);
      out << name(rs.rule);
      for (std::size_t c : rs.cites) out << " " << c;
      if (rs.variable) out << " " << *rs.variable;
    }
    if (s.formula) out << " : " << render(*s.formula);
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Theorem library

namespace {

Formula sigma(std::string_view text) { return parse(text, SignatureId::Sigma); }

// Under premises [.., a & b] style hypotheses the builder derives a conclusion
// and discharges; these helpers keep the library definitions short.
LibraryEntry theorem_entry(std::string file, std::string title, ProofBuilder& pb, std::size_t line) {
  Proof p = pb.proof_of(line);
  Formula goal = pb.formula(line);
  return LibraryEntry{std::move(file), std::move(title), pb.calculus(), std::move(p), goal, false};
}

// Commutation (a & b) <-> (b & a) as a theorem in `pb`; returns its line.
std::size_t commute_and(ProofBuilder& pb, const Formula& a, const Formula& b) {
  auto one_way = [&](const Formula& x, const Formula& y) {
    ProofBuilder sub(pb.calculus(), {conj(x, y)});
    const std::size_t h = sub.premise(1);
    const std::size_t swapped = sub.and_intro(sub.and_right(h), sub.and_left(h));
    return sub.proof_of(sub.discharge(swapped));
  };
  const std::size_t l = pb.embed(one_way(a, b));
  const std::size_t r = pb.embed(one_way(b, a));
  return pb.and_intro(l, r);
}

}  // namespace

std::vector<LibraryEntry> theorem_library() {
  std::vector<LibraryEntry> lib;
  const Formula p = var("p"), q = var("q"), r = var("r");
  const CalculusSpec mbc = calculus_mbc();

  {
    ProofBuilder pb(calculus_cpl_plus());
    lib.push_back(theorem_entry("identity.prf", "p -> p in CPL+", pb, pb.identity(p)));
  }
  {
    // @p -> ~(p & !p), with ~a = a -> _|_.
    const Formula contra = conj(p, neg(p));
    const Formula bottom = sigma("_|_");
    ProofBuilder pb(mbc, {circ(p), contra});
    const std::size_t c = pb.premise(1);
    const std::size_t h = pb.premise(2);
    const std::size_t bc = pb.axiom("bc1", {{"a", p}, {"b", bottom}});
    const std::size_t got = pb.mp(pb.and_right(h), pb.mp(pb.and_left(h), pb.mp(c, bc)));
    pb.discharge(got);
    const std::size_t done = pb.discharge(pb.size());
    lib.push_back(theorem_entry("circ_implies_strongneg.prf", "@p -> ~(p & !p) in mbC", pb, done));
  }
  {
    // (p & !p) -> !@p: by cases on @p | !@p.
    const Formula contra = conj(p, neg(p));
    const Formula target = neg(circ(p));
    ProofBuilder pb(mbc, {contra, circ(p)});
    const std::size_t h = pb.premise(1);
    const std::size_t c = pb.premise(2);
    const std::size_t bc = pb.axiom("bc1", {{"a", p}, {"b", target}});
    const std::size_t got = pb.mp(pb.and_right(h), pb.mp(pb.and_left(h), pb.mp(c, bc)));
    const std::size_t left = pb.discharge(got);
    const std::size_t right = pb.identity(target);
    const std::size_t ax8 = pb.axiom("Ax8", {{"a", circ(p)}, {"b", target}, {"c", target}});
    const std::size_t em = pb.axiom("Ax10", {{"a", circ(p)}});
    const std::size_t concl = pb.mp(em, pb.mp(right, pb.mp(left, ax8)));
    const std::size_t done = pb.discharge(concl);
    lib.push_back(theorem_entry("contradiction_implies_neg_circ.prf", "(p & !p) -> !@p in mbC", pb, done));
  }
  {
    // @p -> !(p & !p): by cases on (p & !p) | !(p & !p).
    const Formula contra = conj(p, neg(p));
    const Formula target = neg(contra);
    ProofBuilder pb(mbc, {circ(p), contra});
    const std::size_t c = pb.premise(1);
    const std::size_t h = pb.premise(2);
    const std::size_t bc = pb.axiom("bc1", {{"a", p}, {"b", target}});
    const std::size_t got = pb.mp(pb.and_right(h), pb.mp(pb.and_left(h), pb.mp(c, bc)));
    const std::size_t left = pb.discharge(got);
    const std::size_t right = pb.identity(target);
    const std::size_t ax8 = pb.axiom("Ax8", {{"a", contra}, {"b", target}, {"c", target}});
    const std::size_t em = pb.axiom("Ax10", {{"a", contra}});
    const std::size_t concl = pb.mp(em, pb.mp(right, pb.mp(left, ax8)));
    const std::size_t done = pb.discharge(concl);
    lib.push_back(theorem_entry("circ_implies_neg_contradiction.prf", "@p -> !(p & !p) in mbC", pb, done));
  }
  {
    const Formula hyp = conj(p, conj(neg(p), circ(p)));
    ProofBuilder pb(mbc, {hyp});
    const std::size_t h = pb.premise(1);
    const std::size_t tail = pb.and_right(h);
    const std::size_t bc = pb.axiom("bc1", {{"a", p}, {"b", q}});
    const std::size_t got = pb.mp(pb.and_left(tail), pb.mp(pb.and_left(h), pb.mp(pb.and_right(tail), bc)));
    const std::size_t done = pb.discharge(got);
    lib.push_back(theorem_entry("gentle_explosion.prf", "(p & (!p & @p)) -> q in mbC", pb, done));
  }
  {
    // Necessitation for @ on the theorem a = p | !p in RmbC(cl, ce).
    std::array tags{AxiomTag::cl, AxiomTag::ce};
    const Formula a = disj(p, neg(p));
    ProofBuilder sub(calculus_rmbc(tags), {neg(a)});
    const std::size_t thm_in_sub = sub.axiom("Ax10", {{"a", p}});
    const std::size_t both = sub.and_intro(thm_in_sub, sub.premise(1));
    const Proof forward = sub.proof_of(sub.discharge(both));

    ProofBuilder pb(calculus_rmbc(tags));
    const std::size_t thm = pb.axiom("Ax10", {{"a", p}});
    const std::size_t fwd = pb.embed(forward);
    const std::size_t back = pb.axiom("Ax5", {{"a", a}, {"b", neg(a)}});
    const std::size_t equiv = pb.and_intro(fwd, back);
    const std::size_t rn = pb.rule(RuleId::RNeg, equiv);
    const std::size_t nna = pb.mp(thm, pb.axiom("ce", {{"a", a}}));
    const std::size_t to_contra = pb.and_left(rn);
    const std::size_t neg_contra = pb.mp(nna, to_contra);
    const std::size_t done = pb.mp(neg_contra, pb.axiom("cl", {{"a", a}}));
    lib.push_back(theorem_entry("nec_circ_excluded_middle.prf", "@(p | !p) in RmbC(cl,ce)", pb, done));
  }
  {
    ProofBuilder pb(calculus_rmbc());
    const std::size_t done = pb.rule(RuleId::RNeg, commute_and(pb, p, q));
    lib.push_back(theorem_entry("rneg_commuted_conjunction.prf", "!(p & q) <-> !(q & p) in RmbC", pb, done));
  }
  {
    ProofBuilder pb(calculus_rmbc());
    const std::size_t done = pb.rule(RuleId::RCirc, commute_and(pb, p, q));
    lib.push_back(theorem_entry("rcirc_commuted_conjunction.prf", "@(p & q) <-> @(q & p) in RmbC", pb, done));
  }
  {
    const CalculusSpec cpl = calculus_cpl_plus();
    const Formula right_nested = conj(p, conj(q, r));
    const Formula left_nested = conj(conj(p, q), r);
    ProofBuilder to_left(cpl, {right_nested});
    {
      const std::size_t h = to_left.premise(1);
      const std::size_t tail = to_left.and_right(h);
      const std::size_t pq = to_left.and_intro(to_left.and_left(h), to_left.and_left(tail));
      to_left.discharge(to_left.and_intro(pq, to_left.and_right(tail)));
    }
    ProofBuilder to_right(cpl, {left_nested});
    {
      const std::size_t h = to_right.premise(1);
      const std::size_t head = to_right.and_left(h);
      const std::size_t qr = to_right.and_intro(to_right.and_right(head), to_right.and_right(h));
      to_right.discharge(to_right.and_intro(to_right.and_left(head), qr));
    }
    ProofBuilder pb(cpl);
    const std::size_t l = pb.embed(to_left.proof());
    const std::size_t rr = pb.embed(to_right.proof());
    const std::size_t done = pb.and_intro(l, rr);
    lib.push_back(theorem_entry("conjunction_reassociation.prf",
                                "(p & (q & r)) <-> ((p & q) & r) in CPL+", pb, done));
  }
  {
    ProofBuilder pb(calculus_cpl_plus(), {conj(p, imp(p, q))});
    const std::size_t h = pb.premise(1);
    const std::size_t done = pb.discharge(pb.mp(pb.and_left(h), pb.and_right(h)));
    lib.push_back(theorem_entry("local_mp_witness.prf", "(p & (p -> q)) -> q in CPL+", pb, done));
  }
  {
    ProofBuilder pb(calculus_rmbc(), {iff(p, q)});
    const std::size_t done = pb.rule(RuleId::RNeg, pb.premise(1));
    LibraryEntry e{"rneg_on_premise.prf", "p <-> q derives !p <-> !q globally", pb.calculus(),
                   pb.proof_of(done), pb.formula(done), true};
    lib.push_back(std::move(e));
  }
  {
    ProofBuilder pb(calculus_e_plus_e());
    const std::size_t done = pb.rule(RuleId::RBox1, commute_and(pb, p, q));
    lib.push_back(theorem_entry("box_commuted_conjunction.prf", "[1](p & q) <-> [1](q & p) in EplusE", pb, done));
  }
  {
    const Formula px = Formula::pred("P", {Term::variable("x")});
    const Formula all = Formula::quant(Connective::Forall, "x", px);
    ProofBuilder pb(calculus_rqmbc(), {all});
    const Term x = Term::variable("x");
    const std::size_t inst = pb.mp(pb.premise(1), pb.quantifier_axiom("AxForall", px, "x", x));
    const std::size_t ex = pb.mp(inst, pb.quantifier_axiom("AxExists", px, "x", x));
    const std::size_t done = pb.discharge(ex);
    lib.push_back(theorem_entry("forall_implies_exists.prf",
                                "(forall x. P(x)) -> (exists x. P(x)) in RQmbC", pb, done));
  }
  return lib;
}

}  // namespace balfi
