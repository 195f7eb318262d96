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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace balfi {

// First-order term: variable, individual constant or function application.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Const, App };

  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term apply(std::string function, std::vector<Term> args);

  Kind kind() const noexcept { return node_->kind; }
  const std::string& name() const noexcept { return node_->name; }
  std::span<const Term> args() const noexcept { return node_->args; }

  friend bool operator==(const Term& lhs, const Term& rhs);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

enum class Connective : std::uint8_t {
  Var,
  Bottom,    // constant 0
  Top,       // constant 1
  ParaNeg,   // paraconsistent negation
  Circ,      // consistency operator
  ClassNeg,  // classical negation, primitive only in the modal signatures
  Box1,
  Dia1,
  Box2,
  Dia2,
  And,
  Or,
  Imp,
  Pred,  // first-order atom P(t1,...,tn)
  Forall,
  Exists,
};

bool is_unary(Connective c) noexcept;
bool is_binary(Connective c) noexcept;
bool is_quantifier(Connective c) noexcept;

// ASCII spelling used by the printer ("!", "&", "[1]", "forall", ...).
const char* spelling(Connective c) noexcept;

// Immutable formula tree. Copies share structure.
class Formula {
 public:
  static Formula var(std::string name);
  static Formula bottom();
  static Formula top();
  static Formula unary(Connective op, Formula child);
  static Formula binary(Connective op, Formula left, Formula right);
  static Formula pred(std::string name, std::vector<Term> terms);
  static Formula quant(Connective q, std::string variable, Formula body);

  Connective op() const noexcept { return node_->op; }
  // Variable name, predicate name, or bound variable of a quantifier.
  const std::string& name() const noexcept { return node_->name; }
  // Operand of a unary connective or body of a quantifier.
  const Formula& child() const noexcept { return node_->kids[0]; }
  const Formula& left() const noexcept { return node_->kids[0]; }
  const Formula& right() const noexcept { return node_->kids[1]; }
  std::span<const Term> terms() const noexcept { return node_->terms; }

  bool is_var() const noexcept { return op() == Connective::Var; }

  std::size_t hash() const noexcept { return node_->hash; }

  friend bool operator==(const Formula& lhs, const Formula& rhs);

 private:
  struct Node {
    Connective op;
    std::string name;
    std::vector<Formula> kids;
    std::vector<Term> terms;
    std::size_t hash;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

// Builders.
Formula var(std::string name);
Formula neg(Formula f);
Formula circ(Formula f);
Formula tilde(Formula f);
Formula box1(Formula f);
Formula dia1(Formula f);
Formula box2(Formula f);
Formula dia2(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula imp(Formula a, Formula b);
// a <-> b abbreviates (a -> b) & (b -> a).
Formula iff(Formula a, Formula b);
// Right-nested conjunction g1 & (g2 & (... & gn)); requires a nonempty list.
Formula conj_all(std::span<const Formula> parts);

// If f has the shape (a -> b) & (b -> a), returns {a, b}.
bool split_iff(const Formula& f, Formula& a, Formula& b);

// Propositional variables in order of first occurrence (left to right).
std::vector<std::string> variables(const Formula& f);

std::size_t depth(const Formula& f);

std::string render(const Term& t);
// Canonical ASCII form; parse(render(f)) reproduces f.
std::string render(const Formula& f);

}  // namespace balfi
