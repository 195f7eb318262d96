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
#include <set>
#include <string>
#include <string_view>

#include "balfi/formula.hpp"

namespace balfi {

enum class SignatureId : std::uint8_t {
  SigmaPlus,  // and, or, implies
  Sigma,      // + paraconsistent negation, consistency
  SigmaC,     // + paraconsistent negation
  SigmaC0,    // SigmaC + 0
  SigmaCe,    // SigmaC + 0, 1, classical negation
  SigmaE,     // Sigma + 0, 1
  SigmaBA,    // SigmaPlus + 0, 1
  SigmaM,     // SigmaPlus + classical negation, box, diamond
  SigmaBM,    // SigmaM with two independent modalities
};

const char* name(SignatureId sig) noexcept;
std::optional<SignatureId> signature_from_name(std::string_view name);
bool allows(SignatureId sig, Connective c) noexcept;

// Throws SignatureError naming the first connective outside `sig`. Predicates
// and quantifiers are accepted only when `first_order` is set.
void validate(const Formula& f, SignatureId sig, bool first_order = false);

// Name of the variable used by the `_|_` expansion (p0 & !p0) & @p0.
inline constexpr std::string_view kBottomWitness = "p0";

// Parses the ASCII/Unicode grammar. Sugar is expanded: `a <-> b` becomes
// (a -> b) & (b -> a); `_|_` and `~` (where classical negation is not
// primitive) are expressed with the connectives of `sig`.
Formula parse(std::string_view text, SignatureId sig = SignatureId::Sigma);

// First-order variant over the connectives of Sigma: adds `forall x. f`,
// `exists x. f` and atoms `P(t1,...,tn)`. Identifiers listed in `constants`
// are read as individual constants, other lowercase term identifiers as
// variables.
Formula parse_first_order(std::string_view text, const std::set<std::string>& constants);
Term parse_term(std::string_view text, const std::set<std::string>& constants);

// An axiom schema: the Var nodes of `body` are metavariables.
struct Schema {
  Formula body;

  std::vector<std::string> metavariables() const { return variables(body); }
};

using Binding = std::map<std::string, Formula>;

// Uniform replacement of every metavariable; throws UnboundError when the
// binding misses one.
Formula substitute(const Schema& schema, const Binding& binding);

// Returns the unique binding with substitute(schema, binding) == candidate, if
// any. Repeated metavariables must match syntactically equal subformulas.
std::optional<Binding> match_schema(const Schema& schema, const Formula& candidate);

// Structural size in which the consistency operator weighs 2 and every other
// node 1, so that complexity(@g) > complexity(!g).
std::size_t complexity(const Formula& f);

}  // namespace balfi
