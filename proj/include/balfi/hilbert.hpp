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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "balfi/balfi.hpp"
#include "balfi/formula.hpp"
#include "balfi/syntax.hpp"

namespace balfi {

enum class RuleId : std::uint8_t { MP, RNeg, RCirc, RBox1, RBox2, ExistsIn, ForallIn };

// Script spelling: "mp", "rneg", "rcirc", "rbox1", "rbox2", "existsin", "forallin".
const char* name(RuleId rule) noexcept;
std::optional<RuleId> rule_from_name(std::string_view name);

enum class AxiomKind : std::uint8_t {
  Schema,
  ExistsIntro,  // a[x/t] -> exists x. a
  ForallElim,   // (forall x. a) -> a[x/t]
};

struct AxiomEntry {
  std::string id;
  Schema schema;
  AxiomKind kind = AxiomKind::Schema;
};

struct CalculusSpec {
  std::string name;
  SignatureId sig = SignatureId::Sigma;
  bool first_order = false;
  std::vector<AxiomEntry> axioms;
  std::set<RuleId> local_rules;
  // Superset of local_rules.
  std::set<RuleId> global_rules;

  const AxiomEntry* find_axiom(std::string_view id) const;
  bool has_rule(RuleId r) const { return global_rules.contains(r); }
  bool is_global_only(RuleId r) const {
    return global_rules.contains(r) && !local_rules.contains(r);
  }
};

CalculusSpec calculus_cpl_plus();
CalculusSpec calculus_mbc(std::span<const AxiomTag> extra = {});
CalculusSpec calculus_rmbc(std::span<const AxiomTag> extra = {});
CalculusSpec calculus_e();
CalculusSpec calculus_e_plus_e();
CalculusSpec calculus_rqmbc();

// Accepts CPLplus, mbC, RmbC, RmbC*, E, EplusE, RQmbC, the tagged forms
// "RmbC(ci,cf)" and "mbC(cf)", and the aliases RbC, RCi, RCila.
CalculusSpec calculus_by_name(std::string_view name);
std::vector<std::string> calculus_names();

// Step references and premise indices are 1-based, as in scripts.
struct AxiomStep {
  std::string axiom;
  Binding binding;
  // Only for the quantifier axioms: the bound variable and the term.
  std::optional<std::string> variable;
  std::optional<Term> term;
};

struct PremiseStep {
  std::size_t index = 0;
};

struct RuleStep {
  RuleId rule = RuleId::MP;
  std::vector<std::size_t> cites;
  // The quantified variable for ExistsIn and ForallIn.
  std::optional<std::string> variable;
};

struct Step {
  std::variant<AxiomStep, PremiseStep, RuleStep> body;
  // Formula asserted by the author; must agree with the checked one.
  std::optional<Formula> formula;
};

struct Proof {
  std::vector<Formula> premises;
  std::vector<Step> steps;
};

class ProofError : public Error {
 public:
  enum class Kind : std::uint8_t {
    BadAxiomInstance,
    BadRuleApplication,
    ForwardReference,
    BadPremise,
    ConclusionMismatch,
    BadWitness,
  };

  ProofError(Kind kind, std::size_t step, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  // 1-based step number; 0 when the error concerns the whole proof.
  std::size_t step() const noexcept { return step_; }

 private:
  Kind kind_;
  std::size_t step_;
};

const char* name(ProofError::Kind kind) noexcept;

enum class Regime : std::uint8_t {
  Theorem,  // no premises
  Global,   // premises anywhere, every rule on every line
  Local,    // global-only rules restricted to premise-free lines
};

struct CheckedProof {
  std::vector<Formula> lines;
  // Whether each line depends on a premise.
  std::vector<bool> uses_premises;
};

// Verifies every step; throws ProofError.
CheckedProof check_steps(const CalculusSpec& calc, const Proof& proof, Regime regime);

// Returns the last line as a certified theorem; throws ProofError.
Formula check_theorem(const CalculusSpec& calc, const Proof& proof);

struct Verdict {
  bool accepted = false;
  std::optional<ProofError> error;

  explicit operator bool() const noexcept { return accepted; }
};

// RmbC* regime. proof.premises must equal gamma and the last line phi.
Verdict check_global_derivation(const CalculusSpec& calc, std::span<const Formula> gamma,
                                const Formula& phi, const Proof& proof);

// A premise-free proof of phi, or of (g_i1 & (... & g_ik)) -> phi for the
// cited 1-based indices into gamma, in that order.
struct LocalWitness {
  std::vector<std::size_t> subset;
  Proof proof;
};

Verdict check_local_derivation(const CalculusSpec& calc, std::span<const Formula> gamma,
                               const Formula& phi, const LocalWitness& witness);

// Careful-reasoning form: premises allowed, global-only rules only on lines
// that do not depend on them.
Verdict check_local_derivation(const CalculusSpec& calc, std::span<const Formula> gamma,
                               const Formula& phi, const Proof& proof);

// Incremental proof construction. Each call checks the new line and returns
// its 1-based number.
class ProofBuilder {
 public:
  explicit ProofBuilder(CalculusSpec calc, std::vector<Formula> premises = {});

  std::size_t axiom(const std::string& id, Binding binding);
  std::size_t quantifier_axiom(const std::string& id, const Formula& body,
                               const std::string& x, const Term& t);
  std::size_t premise(std::size_t index);
  std::size_t mp(std::size_t minor, std::size_t major);
  std::size_t rule(RuleId r, std::size_t line, std::optional<std::string> variable = {});
  // Copies a premise-free proof and returns the number of its last line.
  std::size_t embed(const Proof& theorem);

  // Derived CPL+ steps.
  std::size_t and_intro(std::size_t left, std::size_t right);
  std::size_t and_left(std::size_t line);
  std::size_t and_right(std::size_t line);
  // a -> a, five lines.
  std::size_t identity(const Formula& a);

  // Deduction metatheorem: discharges the last premise h, turning the proof
  // of `line` into a proof of h -> formula(line) from the remaining premises.
  // Lines depending on h under a global-only rule make this throw.
  std::size_t discharge(std::size_t line);

  const Formula& formula(std::size_t line) const;
  std::size_t size() const { return proof_.steps.size(); }
  const Proof& proof() const { return proof_; }
  const CalculusSpec& calculus() const { return calc_; }

  // The proof truncated to the lines `line` depends on, renumbered.
  Proof proof_of(std::size_t line) const;

 private:
  std::size_t push(Step step);

  CalculusSpec calc_;
  Proof proof_;
  CheckedProof checked_;
};

// Exportation: from a witness proving (g1 & (... & (gn & a))) -> b, builds
// one proving (g1 & (... & gn)) -> (a -> b). With n = 0 the input must prove
// a -> b and is returned unchanged.
Proof export_hypothesis(const CalculusSpec& calc, const Proof& witness,
                        std::span<const Formula> gamma, const Formula& a, const Formula& b);

// Proof scripts.
struct Script {
  std::string calculus;
  std::set<std::string> constants;
  std::optional<Formula> goal;
  Proof proof;
};

// Parses the text format. The calculus header, when present, selects the
// signature used for formulas; `fallback` is used otherwise.
Script parse_script(std::string_view text, const std::optional<CalculusSpec>& fallback = {});
std::string render_script(const CalculusSpec& calc, const Proof& proof,
                          const std::optional<Formula>& goal = {},
                          const std::set<std::string>& constants = {},
                          const std::string& title = {});

struct LibraryEntry {
  std::string file;
  std::string title;
  CalculusSpec calculus;
  Proof proof;
  Formula goal;
  // Global derivation from premises rather than a theorem.
  bool global = false;
};

// The shipped theorem library, built with ProofBuilder.
std::vector<LibraryEntry> theorem_library();

}  // namespace balfi
