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
#include <vector>

#include "balfi/balfi.hpp"
#include "balfi/formula.hpp"

namespace balfi {

class NotFreeFor : public Error {
 public:
  NotFreeFor(std::string variable, const Term& term, std::string binder)
      : Error("term " + render(term) + " is not free for " + variable + " (captured by " +
              binder + ")"),
        variable_(std::move(variable)),
        binder_(std::move(binder)) {}

  const std::string& variable() const noexcept { return variable_; }
  const std::string& binder() const noexcept { return binder_; }

 private:
  std::string variable_;
  std::string binder_;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

struct FOSignature {
  std::set<std::string> constants;
  std::map<std::string, int> functions;
  std::map<std::string, int> predicates;

  // Throws UnknownSymbol or Error on arity mismatch.
  void check(const Term& t) const;
  void check(const Formula& f) const;
};

// Variables of a term, in first-occurrence order.
std::vector<std::string> term_variables(const Term& t);
// Free individual variables, in first-occurrence order.
std::vector<std::string> free_vars(const Formula& f);
bool occurs_free(const std::string& x, const Formula& f);

Term substitute_term(const Term& s, const std::string& x, const Term& t);

// f[x/t]: replaces the free occurrences of x. Throws NotFreeFor on capture.
Formula fo_substitute(const Formula& f, const std::string& x, const Term& t);

// A term t with fo_substitute(body, x, t) == instance, if one exists. When x
// is not free in body, t is the variable x itself.
std::optional<Term> match_substitution(const Formula& body, const std::string& x,
                                       const Formula& instance);

// Prefixes forall over the free variables, outermost first.
Formula universal_closure(const Formula& f);

// Value tables in row-major order over U^arity.
struct FunctionTable {
  int arity = 0;
  std::vector<int> values;
};

struct PredicateTable {
  int arity = 0;
  std::vector<Element> values;
};

struct FOStructure {
  int universe = 1;
  Balfi balfi;
  std::map<std::string, int> consts;
  std::map<std::string, FunctionTable> funcs;
  std::map<std::string, PredicateTable> preds;

  FOSignature signature() const;
  // Table sizes, ranges and carrier membership; throws Error.
  void validate() const;
};

using Assignment = std::map<std::string, int>;

int term_denote(const FOStructure& s, const Assignment& mu, const Term& t);

// Quantifiers are the meet and join over the universe. Throws on
// propositional variables, modal operators and unknown symbols.
Element fo_evaluate(const FOStructure& s, const Assignment& mu, const Formula& f);

// Value 1 under every assignment of the free variables.
bool fo_valid_in(const FOStructure& s, const Formula& f);

}  // namespace balfi
