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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "balfi/algebra.hpp"
#include "balfi/error.hpp"
#include "balfi/formula.hpp"
#include "balfi/syntax.hpp"

namespace balfi {

// Axioms extending mbC, plus the auxiliary schemas dm, !(a & !a) and @a.
enum class AxiomTag : std::uint8_t {
  ciw,
  ci,
  cl,
  cf,
  ce,
  caAnd,
  caOr,
  caImp,
  dm,
  negSelfContradiction,
  circAll,
};

const char* name(AxiomTag tag) noexcept;
std::optional<AxiomTag> axiom_tag_from_name(std::string_view name);
std::span<const AxiomTag> all_axiom_tags() noexcept;
// The eight tags with an equational characterization.
std::span<const AxiomTag> equational_tags() noexcept;
bool has_equation(AxiomTag tag) noexcept;
const Schema& schema_of(AxiomTag tag);

class BalfiViolation : public Error {
 public:
  enum class Kind : std::uint8_t { ViolatedJoin, ViolatedGentleExplosion, Malformed };

  BalfiViolation(Kind kind, Element witness, const std::string& message)
      : Error(message), kind_(kind), witness_(witness) {}

  Kind kind() const noexcept { return kind_; }
  Element witness() const noexcept { return witness_; }

 private:
  Kind kind_;
  Element witness_;
};

// A powerset Boolean algebra with LFI operators: a | !a = 1 and
// a & !a & @a = 0 for every element a. Immutable once constructed.
class Balfi {
 public:
  const PowersetAlgebra& algebra() const noexcept { return alg_; }
  Element neg(Element a) const noexcept { return neg_[a.bits]; }
  Element circ(Element a) const noexcept { return circ_[a.bits]; }
  std::span<const Element> neg_table() const noexcept { return neg_; }
  std::span<const Element> circ_table() const noexcept { return circ_; }

  friend bool operator==(const Balfi&, const Balfi&) = default;

 private:
  friend Balfi check_balfi(PowersetAlgebra, std::vector<Element>, std::vector<Element>);
  friend Balfi trusted_balfi(PowersetAlgebra, std::vector<Element>, std::vector<Element>);
  Balfi(PowersetAlgebra alg, std::vector<Element> neg, std::vector<Element> circ)
      : alg_(alg), neg_(std::move(neg)), circ_(std::move(circ)) {}

  PowersetAlgebra alg_;
  std::vector<Element> neg_;
  std::vector<Element> circ_;
};

// Validates the tables (indexed by carrier rank) and reports the first
// violated equation together with its witness element.
Balfi check_balfi(PowersetAlgebra alg, std::vector<Element> neg, std::vector<Element> circ);

// Skips validation; for callers that construct tables satisfying both
// equations by construction (the enumerator).
Balfi trusted_balfi(PowersetAlgebra alg, std::vector<Element> neg, std::vector<Element> circ);

// Boolean complement for the negation and the top element for consistency.
Balfi classical_balfi(int n_atoms);

using Valuation = std::map<std::string, Element>;

// Homomorphic extension of `v` to `f`. Throws UnboundError for variables
// missing from `v` and SignatureError for connectives outside SigmaE.
Element evaluate(const Balfi& b, const Valuation& v, const Formula& f);

// A formula compiled to postfix code over positional arguments. The argument
// order is the first-occurrence order of the formula's variables, or the
// order given explicitly.
class TermFunction {
 public:
  explicit TermFunction(const Formula& f);
  TermFunction(const Formula& f, std::vector<std::string> argument_order);

  const std::vector<std::string>& arguments() const noexcept { return args_; }
  Element operator()(const Balfi& b, std::span<const Element> args) const;

 private:
  struct Instr {
    Connective op;
    std::uint32_t arg;
  };
  void compile(const Formula& f);

  std::vector<std::string> args_;
  std::vector<Instr> code_;
  std::size_t max_stack_ = 0;
};

// Calls fn(tuple) for every tuple in {0..base-1}^k in odometer order (last
// position fastest). Stops early when fn returns false; returns whether the
// sweep completed.
template <typename Fn>
bool for_each_tuple(std::size_t base, std::size_t k, Fn&& fn) {
  std::vector<Element> tuple(k);
  while (true) {
    if (!fn(std::span<const Element>(tuple))) return false;
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++tuple[i].bits < base) break;
      tuple[i].bits = 0;
      if (i == 0) return true;
    }
    if (k == 0) return true;
  }
}

// True iff v(f) = 1 for every valuation over the variables of f.
bool is_valid_in(const Balfi& b, const Formula& f);

// B is a model of the schema: its term function is 1 on every carrier tuple.
bool models_schema(const Balfi& b, const Schema& s);

// Pointwise check of the equation characterizing `tag`. Throws Error for
// tags without an equation (dm, negSelfContradiction, circAll).
bool satisfies_equation(const Balfi& b, AxiomTag tag);

// Degree-preserving consequence over the given models: phi is valid in all
// of them, or the conjunction of gamma implies phi in all of them. A true
// result means only that no countermodel exists among `models`.
bool local_consequence(std::span<const Balfi> models, std::span<const Formula> gamma,
                       const Formula& phi);

// Truth-preserving consequence over the given models.
bool global_consequence(std::span<const Balfi> models, std::span<const Formula> gamma,
                        const Formula& phi);

// Some a has a & !a != 0.
bool is_paraconsistent(const Balfi& b);
// Paraconsistent, and both @a & a and @a & !a are nonzero for some a.
bool is_lfi(const Balfi& b);

}  // namespace balfi
