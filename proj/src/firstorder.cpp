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

#include "balfi/firstorder.hpp"

#include <algorithm>

namespace balfi {

namespace {

void add_unique(std::vector<std::string>& out, const std::string& x) {
  if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
}

void collect_term(const Term& t, std::vector<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      add_unique(out, t.name());
      break;
    case Term::Kind::Const:
      break;
    case Term::Kind::App:
      for (const auto& a : t.args()) collect_term(a, out);
      break;
  }
}

void collect_free(const Formula& f, std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
  const Connective op = f.op();
  if (op == Connective::Pred) {
    for (const auto& t : f.terms()) {
      std::vector<std::string> vs;
      collect_term(t, vs);
      for (const auto& v : vs) {
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) add_unique(out, v);
      }
    }
  } else if (is_quantifier(op)) {
    bound.push_back(f.name());
    collect_free(f.child(), bound, out);
    bound.pop_back();
  } else if (is_unary(op)) {
    collect_free(f.child(), bound, out);
  } else if (is_binary(op)) {
    collect_free(f.left(), bound, out);
    collect_free(f.right(), bound, out);
  }
}

bool match_term(const Term& pattern, const Term& target, const std::string& x,
                std::optional<Term>& t) {
  if (pattern.kind() == Term::Kind::Var && pattern.name() == x) {
    if (t) return *t == target;
    t = target;
    return true;
  }
  if (pattern.kind() != target.kind() || pattern.name() != target.name()) return false;
  if (pattern.args().size() != target.args().size()) return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i) {
    if (!match_term(pattern.args()[i], target.args()[i], x, t)) return false;
  }
  return true;
}

bool match_formula(const Formula& pattern, const Formula& target, const std::string& x,
                   std::optional<Term>& t) {
  if (pattern.op() != target.op() || pattern.name() != target.name()) return false;
  const Connective op = pattern.op();
  if (op == Connective::Pred) {
    if (pattern.terms().size() != target.terms().size()) return false;
    for (std::size_t i = 0; i < pattern.terms().size(); ++i) {
      if (!match_term(pattern.terms()[i], target.terms()[i], x, t)) return false;
    }
    return true;
  }
  if (is_quantifier(op)) {
    if (pattern.name() == x) return pattern == target;
    return match_formula(pattern.child(), target.child(), x, t);
  }
  if (is_unary(op)) return match_formula(pattern.child(), target.child(), x, t);
  if (is_binary(op)) {
    return match_formula(pattern.left(), target.left(), x, t) &&
           match_formula(pattern.right(), target.right(), x, t);
  }
  return pattern == target;
}

std::size_t table_index(const std::vector<int>& args, int universe) {
  std::size_t idx = 0;
  for (int a : args) idx = idx * static_cast<std::size_t>(universe) + static_cast<std::size_t>(a);
  return idx;
}

std::size_t table_size(int arity, int universe) {
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(universe);
  return n;
}

Element eval(const FOStructure& s, Assignment& mu, const Formula& f) {
  const Balfi& b = s.balfi;
  const PowersetAlgebra& alg = b.algebra();
  switch (f.op()) {
    case Connective::Bottom:
      return alg.zero();
    case Connective::Top:
      return alg.one();
    case Connective::ParaNeg:
      return b.neg(eval(s, mu, f.child()));
    case Connective::Circ:
      return b.circ(eval(s, mu, f.child()));
    case Connective::ClassNeg:
      return alg.compl_(eval(s, mu, f.child()));
    case Connective::And:
      return alg.meet(eval(s, mu, f.left()), eval(s, mu, f.right()));
    case Connective::Or:
      return alg.join(eval(s, mu, f.left()), eval(s, mu, f.right()));
    case Connective::Imp:
      return alg.impl(eval(s, mu, f.left()), eval(s, mu, f.right()));
    case Connective::Pred: {
      auto it = s.preds.find(f.name());
      if (it == s.preds.end()) throw UnknownSymbol("unknown predicate '" + f.name() + "'");
      if (it->second.arity != static_cast<int>(f.terms().size())) {
        throw Error("predicate '" + f.name() + "' expects " + std::to_string(it->second.arity) +
                    " arguments");
      }
      std::vector<int> args;
      for (const auto& t : f.terms()) args.push_back(term_denote(s, mu, t));
      return it->second.values[table_index(args, s.universe)];
    }
    case Connective::Forall:
    case Connective::Exists: {
      const bool forall = f.op() == Connective::Forall;
      auto saved = mu.find(f.name());
      std::optional<int> previous;
      if (saved != mu.end()) previous = saved->second;
      Element acc = forall ? alg.one() : alg.zero();
      for (int a = 0; a < s.universe; ++a) {
        mu[f.name()] = a;
        Element v = eval(s, mu, f.child());
        acc = forall ? alg.meet(acc, v) : alg.join(acc, v);
      }
      if (previous) {
        mu[f.name()] = *previous;
      } else {
        mu.erase(f.name());
      }
      return acc;
    }
    case Connective::Var:
      throw Error("propositional variable '" + f.name() + "' in a first-order formula");
    default:
      throw SignatureError(spelling(f.op()), "RQmbC");
  }
}

}  // namespace

void FOSignature::check(const Term& t) const {
  switch (t.kind()) {
    case Term::Kind::Var:
      return;
    case Term::Kind::Const:
      if (!constants.contains(t.name())) throw UnknownSymbol("unknown constant '" + t.name() + "'");
      return;
    case Term::Kind::App: {
      auto it = functions.find(t.name());
      if (it == functions.end()) throw UnknownSymbol("unknown function '" + t.name() + "'");
      if (it->second != static_cast<int>(t.args().size())) {
        throw Error("function '" + t.name() + "' expects " + std::to_string(it->second) +
                    " arguments");
      }
      for (const auto& a : t.args()) check(a);
      return;
    }
  }
}

void FOSignature::check(const Formula& f) const {
  const Connective op = f.op();
  if (op == Connective::Pred) {
    auto it = predicates.find(f.name());
    if (it == predicates.end()) throw UnknownSymbol("unknown predicate '" + f.name() + "'");
    if (it->second != static_cast<int>(f.terms().size())) {
      throw Error("predicate '" + f.name() + "' expects " + std::to_string(it->second) +
                  " arguments");
    }
    for (const auto& t : f.terms()) check(t);
  } else if (is_binary(op)) {
    check(f.left());
    check(f.right());
  } else if (is_unary(op) || is_quantifier(op)) {
    check(f.child());
  }
}

std::vector<std::string> term_variables(const Term& t) {
  std::vector<std::string> out;
  collect_term(t, out);
  return out;
}

std::vector<std::string> free_vars(const Formula& f) {
  std::vector<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool occurs_free(const std::string& x, const Formula& f) {
  auto vs = free_vars(f);
  return std::find(vs.begin(), vs.end(), x) != vs.end();
}

Term substitute_term(const Term& s, const std::string& x, const Term& t) {
  switch (s.kind()) {
    case Term::Kind::Var:
      return s.name() == x ? t : s;
    case Term::Kind::Const:
      return s;
    case Term::Kind::App: {
      std::vector<Term> args;
      for (const auto& a : s.args()) args.push_back(substitute_term(a, x, t));
      return Term::apply(s.name(), std::move(args));
    }
  }
  return s;
}

Formula fo_substitute(const Formula& f, const std::string& x, const Term& t) {
  const Connective op = f.op();
  if (op == Connective::Pred) {
    std::vector<Term> terms;
    for (const auto& s : f.terms()) terms.push_back(substitute_term(s, x, t));
    return Formula::pred(f.name(), std::move(terms));
  }
  if (is_quantifier(op)) {
    const std::string& y = f.name();
    if (y == x || !occurs_free(x, f.child())) return f;
    auto tv = term_variables(t);
    if (std::find(tv.begin(), tv.end(), y) != tv.end()) throw NotFreeFor(x, t, y);
    return Formula::quant(op, y, fo_substitute(f.child(), x, t));
  }
  if (is_unary(op)) return Formula::unary(op, fo_substitute(f.child(), x, t));
  if (is_binary(op)) {
    return Formula::binary(op, fo_substitute(f.left(), x, t), fo_substitute(f.right(), x, t));
  }
  return f;
}

std::optional<Term> match_substitution(const Formula& body, const std::string& x,
                                       const Formula& instance) {
  std::optional<Term> t;
  if (!match_formula(body, instance, x, t)) return std::nullopt;
  if (!t) t = Term::variable(x);
  try {
    if (fo_substitute(body, x, *t) != instance) return std::nullopt;
  } catch (const NotFreeFor&) {
    return std::nullopt;
  }
  return t;
}

Formula universal_closure(const Formula& f) {
  auto vs = free_vars(f);
  Formula out = f;
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) {
    out = Formula::quant(Connective::Forall, *it, out);
  }
  return out;
}

FOSignature FOStructure::signature() const {
  FOSignature sig;
  for (const auto& [c, _] : consts) sig.constants.insert(c);
  for (const auto& [f, table] : funcs) sig.functions[f] = table.arity;
  for (const auto& [p, table] : preds) sig.predicates[p] = table.arity;
  return sig;
}

void FOStructure::validate() const {
  if (universe < 1) throw Error("the universe must be nonempty");
  if (preds.empty()) throw Error("a first-order signature needs at least one predicate");
  for (const auto& [c, value] : consts) {
    if (value < 0 || value >= universe) throw Error("constant '" + c + "' is outside the universe");
  }
  for (const auto& [name, table] : funcs) {
    if (table.arity < 1) throw Error("function '" + name + "' must have positive arity");
    if (table.values.size() != table_size(table.arity, universe)) {
      throw Error("function '" + name + "' has a table of the wrong size");
    }
    for (int v : table.values) {
      if (v < 0 || v >= universe) throw Error("function '" + name + "' leaves the universe");
    }
  }
  for (const auto& [name, table] : preds) {
    if (table.arity < 0) throw Error("predicate '" + name + "' has negative arity");
    if (table.values.size() != table_size(table.arity, universe)) {
      throw Error("predicate '" + name + "' has a table of the wrong size");
    }
    for (Element e : table.values) {
      if (!balfi.algebra().contains(e)) {
        throw Error("predicate '" + name + "' takes a value outside the carrier");
      }
    }
  }
}

int term_denote(const FOStructure& s, const Assignment& mu, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = mu.find(t.name());
      if (it == mu.end()) throw UnboundError(t.name());
      return it->second;
    }
    case Term::Kind::Const: {
      auto it = s.consts.find(t.name());
      if (it == s.consts.end()) throw UnknownSymbol("unknown constant '" + t.name() + "'");
      return it->second;
    }
    case Term::Kind::App: {
      auto it = s.funcs.find(t.name());
      if (it == s.funcs.end()) throw UnknownSymbol("unknown function '" + t.name() + "'");
      if (it->second.arity != static_cast<int>(t.args().size())) {
        throw Error("function '" + t.name() + "' expects " + std::to_string(it->second.arity) +
                    " arguments");
      }
      std::vector<int> args;
      for (const auto& a : t.args()) args.push_back(term_denote(s, mu, a));
      return it->second.values[table_index(args, s.universe)];
    }
  }
  return 0;
}

Element fo_evaluate(const FOStructure& s, const Assignment& mu, const Formula& f) {
  Assignment work = mu;
  return eval(s, work, f);
}

bool fo_valid_in(const FOStructure& s, const Formula& f) {
  auto vs = free_vars(f);
  const Element one = s.balfi.algebra().one();
  Assignment mu;
  for (const auto& x : vs) mu[x] = 0;
  while (true) {
    if (eval(s, mu, f) != one) return false;
    std::size_t i = vs.size();
    while (true) {
      if (i == 0) return true;
      --i;
      if (++mu[vs[i]] < s.universe) break;
      mu[vs[i]] = 0;
    }
  }
}

}  // namespace balfi
