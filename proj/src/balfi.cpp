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

#include "balfi/balfi.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

namespace balfi {

namespace {

struct TagInfo {
  AxiomTag tag;
  const char* name;
  const char* schema;
};

constexpr std::array<TagInfo, 11> kTags{{
    {AxiomTag::ciw, "ciw", "@a | (a & !a)"},
    {AxiomTag::ci, "ci", "!@a -> a & !a"},
    {AxiomTag::cl, "cl", "!(a & !a) -> @a"},
    {AxiomTag::cf, "cf", "!!a -> a"},
    {AxiomTag::ce, "ce", "a -> !!a"},
    {AxiomTag::caAnd, "caAnd", "@a & @b -> @(a & b)"},
    {AxiomTag::caOr, "caOr", "@a & @b -> @(a | b)"},
    {AxiomTag::caImp, "caImp", "@a & @b -> @(a -> b)"},
    {AxiomTag::dm, "dm", "!(a & b) -> !a | !b"},
    {AxiomTag::negSelfContradiction, "negSelfContradiction", "!(a & !a)"},
    {AxiomTag::circAll, "circAll", "@a"},
}};

constexpr std::array<AxiomTag, 11> kAllTags{
    AxiomTag::ciw,   AxiomTag::ci,    AxiomTag::cl,    AxiomTag::cf,
    AxiomTag::ce,    AxiomTag::caAnd, AxiomTag::caOr,  AxiomTag::caImp,
    AxiomTag::dm,    AxiomTag::negSelfContradiction,   AxiomTag::circAll,
};

const TagInfo& info(AxiomTag tag) { return kTags[static_cast<std::size_t>(tag)]; }

std::string element_text(Element a) {
  std::string out = "{";
  bool first = true;
  for (int i : atom_indices(a)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

bool evaluable(Connective c) {
  switch (c) {
    case Connective::Var:
    case Connective::Bottom:
    case Connective::Top:
    case Connective::ParaNeg:
    case Connective::Circ:
    case Connective::ClassNeg:
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      return true;
    default:
      return false;
  }
}

}  // namespace

const char* name(AxiomTag tag) noexcept { return info(tag).name; }

std::optional<AxiomTag> axiom_tag_from_name(std::string_view name) {
  for (const auto& t : kTags) {
    if (name == t.name) return t.tag;
  }
  return std::nullopt;
}

std::span<const AxiomTag> all_axiom_tags() noexcept { return kAllTags; }

std::span<const AxiomTag> equational_tags() noexcept {
  return std::span<const AxiomTag>(kAllTags).first(8);
}

bool has_equation(AxiomTag tag) noexcept { return static_cast<int>(tag) < 8; }

const Schema& schema_of(AxiomTag tag) {
  static const auto table = [] {
    std::vector<Schema> out;
    for (const auto& t : kTags) out.push_back(Schema{parse(t.schema, SignatureId::Sigma)});
    return out;
  }();
  return table[static_cast<std::size_t>(tag)];
}

Balfi check_balfi(PowersetAlgebra alg, std::vector<Element> neg, std::vector<Element> circ) {
  using Kind = BalfiViolation::Kind;
  if (neg.size() != alg.size() || circ.size() != alg.size()) {
    throw BalfiViolation(Kind::Malformed, Element{},
                         "operator tables must have " + std::to_string(alg.size()) + " entries");
  }
  for (std::size_t r = 0; r < alg.size(); ++r) {
    if (!alg.contains(neg[r]) || !alg.contains(circ[r])) {
      throw BalfiViolation(Kind::Malformed, alg.at(r),
                           "table entry outside the carrier at rank " + std::to_string(r));
    }
  }
  for (std::size_t r = 0; r < alg.size(); ++r) {
    Element a = alg.at(r);
    if (alg.join(a, neg[r]) != alg.one()) {
      throw BalfiViolation(Kind::ViolatedJoin, a, "a | !a != 1 at a = " + element_text(a));
    }
  }
  for (std::size_t r = 0; r < alg.size(); ++r) {
    Element a = alg.at(r);
    if (alg.meet(alg.meet(a, neg[r]), circ[r]) != alg.zero()) {
      throw BalfiViolation(Kind::ViolatedGentleExplosion, a,
                           "a & !a & @a != 0 at a = " + element_text(a));
    }
  }
  return Balfi(alg, std::move(neg), std::move(circ));
}

Balfi trusted_balfi(PowersetAlgebra alg, std::vector<Element> neg, std::vector<Element> circ) {
  return Balfi(alg, std::move(neg), std::move(circ));
}

Balfi classical_balfi(int n_atoms) {
  PowersetAlgebra alg(n_atoms);
  std::vector<Element> neg(alg.size()), circ(alg.size(), alg.one());
  for (std::size_t r = 0; r < alg.size(); ++r) neg[r] = alg.compl_(alg.at(r));
  return trusted_balfi(alg, std::move(neg), std::move(circ));
}

TermFunction::TermFunction(const Formula& f) : args_(variables(f)) { compile(f); }

TermFunction::TermFunction(const Formula& f, std::vector<std::string> argument_order)
    : args_(std::move(argument_order)) {
  compile(f);
}

void TermFunction::compile(const Formula& f) {
  std::unordered_map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < args_.size(); ++i) index.emplace(args_[i], i);
  std::size_t depth = 0;
  auto emit = [&](auto& self, const Formula& g) -> void {
    Connective op = g.op();
    if (!evaluable(op)) throw SignatureError(spelling(op), name(SignatureId::SigmaCe));
    if (op == Connective::Var) {
      auto it = index.find(g.name());
      if (it == index.end()) throw UnboundError(g.name());
      code_.push_back({op, it->second});
      max_stack_ = std::max(max_stack_, ++depth);
    } else if (op == Connective::Bottom || op == Connective::Top) {
      code_.push_back({op, 0});
      max_stack_ = std::max(max_stack_, ++depth);
    } else if (is_unary(op)) {
      self(self, g.child());
      code_.push_back({op, 0});
    } else {
      self(self, g.left());
      self(self, g.right());
      code_.push_back({op, 0});
      --depth;
    }
  };
  emit(emit, f);
}

Element TermFunction::operator()(const Balfi& b, std::span<const Element> args) const {
  const PowersetAlgebra& alg = b.algebra();
  constexpr std::size_t kInline = 64;
  std::array<Element, kInline> inline_stack;
  std::vector<Element> heap_stack;
  Element* stack = inline_stack.data();
  if (max_stack_ > kInline) {
    heap_stack.resize(max_stack_);
    stack = heap_stack.data();
  }
  std::size_t sp = 0;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Connective::Var:
        stack[sp++] = args[in.arg];
        break;
      case Connective::Bottom:
        stack[sp++] = alg.zero();
        break;
      case Connective::Top:
        stack[sp++] = alg.one();
        break;
      case Connective::ParaNeg:
        stack[sp - 1] = b.neg(stack[sp - 1]);
        break;
      case Connective::Circ:
        stack[sp - 1] = b.circ(stack[sp - 1]);
        break;
      case Connective::ClassNeg:
        stack[sp - 1] = alg.compl_(stack[sp - 1]);
        break;
      case Connective::And:
        --sp;
        stack[sp - 1] = alg.meet(stack[sp - 1], stack[sp]);
        break;
      case Connective::Or:
        --sp;
        stack[sp - 1] = alg.join(stack[sp - 1], stack[sp]);
        break;
      case Connective::Imp:
        --sp;
        stack[sp - 1] = alg.impl(stack[sp - 1], stack[sp]);
        break;
      default:
        break;
    }
  }
  return stack[0];
}

Element evaluate(const Balfi& b, const Valuation& v, const Formula& f) {
  TermFunction fn(f);
  std::vector<Element> args;
  args.reserve(fn.arguments().size());
  for (const auto& x : fn.arguments()) {
    auto it = v.find(x);
    if (it == v.end()) throw UnboundError(x);
    if (!b.algebra().contains(it->second)) {
      throw Error("value of '" + x + "' is outside the carrier");
    }
    args.push_back(it->second);
  }
  return fn(b, args);
}

bool is_valid_in(const Balfi& b, const Formula& f) {
  TermFunction fn(f);
  const Element one = b.algebra().one();
  return for_each_tuple(b.algebra().size(), fn.arguments().size(),
                        [&](std::span<const Element> t) { return fn(b, t) == one; });
}

bool models_schema(const Balfi& b, const Schema& s) { return is_valid_in(b, s.body); }

bool satisfies_equation(const Balfi& b, AxiomTag tag) {
  const PowersetAlgebra& alg = b.algebra();
  const std::size_t size = alg.size();
  auto contradiction = [&](Element a) { return alg.meet(a, b.neg(a)); };
  auto binary = [&](auto op) {
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        Element x = alg.at(i), y = alg.at(j);
        Element both = alg.meet(b.circ(x), b.circ(y));
        if (alg.meet(both, b.circ(op(x, y))) != both) return false;
      }
    }
    return true;
  };
  switch (tag) {
    case AxiomTag::caAnd:
      return binary([&](Element x, Element y) { return alg.meet(x, y); });
    case AxiomTag::caOr:
      return binary([&](Element x, Element y) { return alg.join(x, y); });
    case AxiomTag::caImp:
      return binary([&](Element x, Element y) { return alg.impl(x, y); });
    case AxiomTag::dm:
    case AxiomTag::negSelfContradiction:
    case AxiomTag::circAll:
      throw Error(std::string("no equation is attached to tag ") + name(tag));
    default:
      break;
  }
  for (std::size_t r = 0; r < size; ++r) {
    Element a = alg.at(r);
    Element nna = b.neg(b.neg(a));
    bool ok = true;
    switch (tag) {
      case AxiomTag::ciw:
        ok = b.circ(a) == alg.compl_(contradiction(a));
        break;
      case AxiomTag::ci:
        ok = b.neg(b.circ(a)) == contradiction(a);
        break;
      case AxiomTag::cl:
        ok = b.circ(a) == b.neg(contradiction(a));
        break;
      case AxiomTag::cf:
        ok = alg.meet(a, nna) == nna;
        break;
      case AxiomTag::ce:
        ok = alg.meet(a, nna) == a;
        break;
      default:
        break;
    }
    if (!ok) return false;
  }
  return true;
}

bool local_consequence(std::span<const Balfi> models, std::span<const Formula> gamma,
                       const Formula& phi) {
  const Formula target = gamma.empty() ? phi : imp(conj_all(gamma), phi);
  return std::all_of(models.begin(), models.end(),
                     [&](const Balfi& b) { return is_valid_in(b, target); });
}

bool global_consequence(std::span<const Balfi> models, std::span<const Formula> gamma,
                        const Formula& phi) {
  std::vector<std::string> order;
  auto collect = [&](const Formula& f) {
    for (auto& x : variables(f)) {
      if (std::find(order.begin(), order.end(), x) == order.end()) order.push_back(x);
    }
  };
  for (const auto& g : gamma) collect(g);
  collect(phi);
  std::vector<TermFunction> premises;
  for (const auto& g : gamma) premises.emplace_back(g, order);
  TermFunction goal(phi, order);
  for (const Balfi& b : models) {
    const Element one = b.algebra().one();
    bool held = for_each_tuple(b.algebra().size(), order.size(), [&](std::span<const Element> t) {
      for (const auto& p : premises) {
        if (p(b, t) != one) return true;
      }
      return goal(b, t) == one;
    });
    if (!held) return false;
  }
  return true;
}

bool is_paraconsistent(const Balfi& b) {
  const PowersetAlgebra& alg = b.algebra();
  for (std::size_t r = 0; r < alg.size(); ++r) {
    Element a = alg.at(r);
    if (alg.meet(a, b.neg(a)) != alg.zero()) return true;
  }
  return false;
}

bool is_lfi(const Balfi& b) {
  if (!is_paraconsistent(b)) return false;
  const PowersetAlgebra& alg = b.algebra();
  bool with_a = false, with_neg = false;
  for (std::size_t r = 0; r < alg.size(); ++r) {
    Element a = alg.at(r);
    with_a = with_a || alg.meet(a, b.circ(a)) != alg.zero();
    with_neg = with_neg || alg.meet(b.neg(a), b.circ(a)) != alg.zero();
  }
  return with_a && with_neg;
}

}  // namespace balfi
