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

#include "balfi/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <unordered_set>

namespace balfi {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t term_hash(const Term& t) {
  std::size_t h = std::hash<std::string>{}(t.name()) + static_cast<std::size_t>(t.kind());
  for (const Term& a : t.args()) h = mix(h, term_hash(a));
  return h;
}

}  // namespace

Term Term::variable(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}}));
}

Term Term::constant(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Const, std::move(name), {}}));
}

Term Term::apply(std::string function, std::vector<Term> args) {
  return Term(
      std::make_shared<const Node>(Node{Kind::App, std::move(function), std::move(args)}));
}

bool operator==(const Term& lhs, const Term& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  if (lhs.kind() != rhs.kind() || lhs.name() != rhs.name()) return false;
  return std::ranges::equal(lhs.args(), rhs.args());
}

bool is_unary(Connective c) noexcept {
  switch (c) {
    case Connective::ParaNeg:
    case Connective::Circ:
    case Connective::ClassNeg:
    case Connective::Box1:
    case Connective::Dia1:
    case Connective::Box2:
    case Connective::Dia2:
      return true;
    default:
      return false;
  }
}

bool is_binary(Connective c) noexcept {
  return c == Connective::And || c == Connective::Or || c == Connective::Imp;
}

bool is_quantifier(Connective c) noexcept {
  return c == Connective::Forall || c == Connective::Exists;
}

const char* spelling(Connective c) noexcept {
  switch (c) {
    case Connective::Var: return "var";
    case Connective::Bottom: return "0";
    case Connective::Top: return "1";
    case Connective::ParaNeg: return "!";
    case Connective::Circ: return "@";
    case Connective::ClassNeg: return "~";
    case Connective::Box1: return "[1]";
    case Connective::Dia1: return "<1>";
    case Connective::Box2: return "[2]";
    case Connective::Dia2: return "<2>";
    case Connective::And: return "&";
    case Connective::Or: return "|";
    case Connective::Imp: return "->";
    case Connective::Pred: return "predicate";
    case Connective::Forall: return "forall";
    case Connective::Exists: return "exists";
  }
  return "?";
}

Formula Formula::make(Node node) {
  std::size_t h = mix(static_cast<std::size_t>(node.op), std::hash<std::string>{}(node.name));
  for (const Formula& k : node.kids) h = mix(h, k.hash());
  for (const Term& t : node.terms) h = mix(h, term_hash(t));
  node.hash = h;
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula Formula::var(std::string name) {
  return make(Node{Connective::Var, std::move(name), {}, {}, 0});
}

Formula Formula::bottom() { return make(Node{Connective::Bottom, {}, {}, {}, 0}); }

Formula Formula::top() { return make(Node{Connective::Top, {}, {}, {}, 0}); }

Formula Formula::unary(Connective op, Formula child) {
  assert(is_unary(op));
  return make(Node{op, {}, {std::move(child)}, {}, 0});
}

Formula Formula::binary(Connective op, Formula left, Formula right) {
  assert(is_binary(op));
  return make(Node{op, {}, {std::move(left), std::move(right)}, {}, 0});
}

Formula Formula::pred(std::string name, std::vector<Term> terms) {
  return make(Node{Connective::Pred, std::move(name), {}, std::move(terms), 0});
}

Formula Formula::quant(Connective q, std::string variable, Formula body) {
  assert(is_quantifier(q));
  return make(Node{q, std::move(variable), {std::move(body)}, {}, 0});
}

bool operator==(const Formula& lhs, const Formula& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  if (lhs.hash() != rhs.hash() || lhs.op() != rhs.op() || lhs.name() != rhs.name()) return false;
  return std::ranges::equal(lhs.node_->kids, rhs.node_->kids) &&
         std::ranges::equal(lhs.terms(), rhs.terms());
}

Formula var(std::string name) { return Formula::var(std::move(name)); }
Formula neg(Formula f) { return Formula::unary(Connective::ParaNeg, std::move(f)); }
Formula circ(Formula f) { return Formula::unary(Connective::Circ, std::move(f)); }
Formula tilde(Formula f) { return Formula::unary(Connective::ClassNeg, std::move(f)); }
Formula box1(Formula f) { return Formula::unary(Connective::Box1, std::move(f)); }
Formula dia1(Formula f) { return Formula::unary(Connective::Dia1, std::move(f)); }
Formula box2(Formula f) { return Formula::unary(Connective::Box2, std::move(f)); }
Formula dia2(Formula f) { return Formula::unary(Connective::Dia2, std::move(f)); }
Formula conj(Formula a, Formula b) {
  return Formula::binary(Connective::And, std::move(a), std::move(b));
}
Formula disj(Formula a, Formula b) {
  return Formula::binary(Connective::Or, std::move(a), std::move(b));
}
Formula imp(Formula a, Formula b) {
  return Formula::binary(Connective::Imp, std::move(a), std::move(b));
}
Formula iff(Formula a, Formula b) { return conj(imp(a, b), imp(b, a)); }

Formula conj_all(std::span<const Formula> parts) {
  assert(!parts.empty());
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = conj(parts[i], acc);
  return acc;
}

bool split_iff(const Formula& f, Formula& a, Formula& b) {
  if (f.op() != Connective::And) return false;
  const Formula& l = f.left();
  const Formula& r = f.right();
  if (l.op() != Connective::Imp || r.op() != Connective::Imp) return false;
  if (!(l.left() == r.right() && l.right() == r.left())) return false;
  a = l.left();
  b = l.right();
  return true;
}

std::vector<std::string> variables(const Formula& f) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    switch (g.op()) {
      case Connective::Var:
        if (seen.insert(g.name()).second) out.push_back(g.name());
        return;
      case Connective::Bottom:
      case Connective::Top:
      case Connective::Pred:
        return;
      default:
        break;
    }
    if (is_binary(g.op())) {
      walk(g.left());
      walk(g.right());
    } else {
      walk(g.child());
    }
  };
  walk(f);
  return out;
}

std::size_t depth(const Formula& f) {
  if (is_binary(f.op())) return 1 + std::max(depth(f.left()), depth(f.right()));
  if (is_unary(f.op()) || is_quantifier(f.op())) return 1 + depth(f.child());
  return 0;
}

std::string render(const Term& t) {
  if (t.kind() != Term::Kind::App) return t.name();
  std::string out = t.name() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ", ";
    out += render(t.args()[i]);
  }
  return out + ")";
}

namespace {

// Binding strength used by the printer: larger binds tighter.
int strength(Connective c) {
  switch (c) {
    case Connective::Imp: return 1;
    case Connective::Or: return 2;
    case Connective::And: return 3;
    default: return is_quantifier(c) ? 0 : 4;
  }
}

void render_into(const Formula& f, std::string& out);

void render_operand(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  render_into(f, out);
  if (parens) out += ')';
}

void render_into(const Formula& f, std::string& out) {
  const Connective op = f.op();
  switch (op) {
    case Connective::Var:
      out += f.name();
      return;
    case Connective::Bottom:
    case Connective::Top:
      out += spelling(op);
      return;
    case Connective::Pred:
      out += f.name();
      if (!f.terms().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          if (i) out += ", ";
          out += render(f.terms()[i]);
        }
        out += ')';
      }
      return;
    case Connective::Forall:
    case Connective::Exists:
      out += spelling(op);
      out += ' ';
      out += f.name();
      out += ". ";
      render_into(f.child(), out);
      return;
    default:
      break;
  }
  if (is_unary(op)) {
    out += spelling(op);
    render_operand(f.child(), strength(f.child().op()) < 4, out);
    return;
  }
  // Binary connectives are right-associative.
  const int s = strength(op);
  render_operand(f.left(), strength(f.left().op()) <= s, out);
  out += ' ';
  out += spelling(op);
  out += ' ';
  const int rs = strength(f.right().op());
  render_operand(f.right(), rs < s || rs == 0, out);
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

}  // namespace balfi
