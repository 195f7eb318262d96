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

#include "balfi/syntax.hpp"

#include <array>
#include <cctype>
#include <utility>

#include "balfi/error.hpp"

namespace balfi {

namespace {

constexpr std::uint32_t bit(Connective c) { return 1u << static_cast<unsigned>(c); }

constexpr std::uint32_t kPositive = bit(Connective::Var) | bit(Connective::And) |
                                    bit(Connective::Or) | bit(Connective::Imp);
constexpr std::uint32_t kConstants = bit(Connective::Bottom) | bit(Connective::Top);

std::uint32_t connectives_of(SignatureId sig) {
  switch (sig) {
    case SignatureId::SigmaPlus:
      return kPositive;
    case SignatureId::Sigma:
      return kPositive | bit(Connective::ParaNeg) | bit(Connective::Circ);
    case SignatureId::SigmaC:
      return kPositive | bit(Connective::ParaNeg);
    case SignatureId::SigmaC0:
      return kPositive | bit(Connective::ParaNeg) | bit(Connective::Bottom);
    case SignatureId::SigmaCe:
      return kPositive | bit(Connective::ParaNeg) | kConstants | bit(Connective::ClassNeg);
    case SignatureId::SigmaE:
      return kPositive | bit(Connective::ParaNeg) | bit(Connective::Circ) | kConstants;
    case SignatureId::SigmaBA:
      return kPositive | kConstants;
    case SignatureId::SigmaM:
      return kPositive | bit(Connective::ClassNeg) | bit(Connective::Box1) |
             bit(Connective::Dia1);
    case SignatureId::SigmaBM:
      return kPositive | bit(Connective::ClassNeg) | bit(Connective::Box1) |
             bit(Connective::Dia1) | bit(Connective::Box2) | bit(Connective::Dia2);
  }
  return 0;
}

constexpr std::array<std::pair<SignatureId, const char*>, 9> kNames{{
    {SignatureId::SigmaPlus, "SigmaPlus"},
    {SignatureId::Sigma, "Sigma"},
    {SignatureId::SigmaC, "SigmaC"},
    {SignatureId::SigmaC0, "SigmaC0"},
    {SignatureId::SigmaCe, "SigmaCe"},
    {SignatureId::SigmaE, "SigmaE"},
    {SignatureId::SigmaBA, "SigmaBA"},
    {SignatureId::SigmaM, "SigmaM"},
    {SignatureId::SigmaBM, "SigmaBM"},
}};

// ---------------------------------------------------------------------------
// Lexer

enum class Tok : std::uint8_t {
  End, LParen, RParen, Comma, Dot,
  Not, Circ, Tilde, Box1, Dia1, Box2, Dia2,
  And, Or, Imp, Iff,
  Zero, One, Falsum,
  Lower, Upper, Forall, Exists,
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

struct Spelled {
  std::string_view text;
  Tok kind;
};

// Longest spellings first where prefixes overlap.
constexpr std::array<Spelled, 31> kSymbols{{
    {"<->", Tok::Iff}, {"->", Tok::Imp}, {"_|_", Tok::Falsum},
    {"[1]", Tok::Box1}, {"[2]", Tok::Box2}, {"<1>", Tok::Dia1}, {"<2>", Tok::Dia2},
    {"(", Tok::LParen}, {")", Tok::RParen}, {",", Tok::Comma}, {".", Tok::Dot},
    {"!", Tok::Not}, {"@", Tok::Circ}, {"~", Tok::Tilde},
    {"&", Tok::And}, {"|", Tok::Or},
    {"¬", Tok::Not}, {"∘", Tok::Circ}, {"◦", Tok::Circ}, {"∼", Tok::Tilde},
    {"∧", Tok::And}, {"∨", Tok::Or}, {"→", Tok::Imp}, {"↔", Tok::Iff},
    {"⊥", Tok::Falsum},
    {"□₁", Tok::Box1}, {"□₂", Tok::Box2},
    {"◇₁", Tok::Dia1}, {"◇₂", Tok::Dia2},
    {"∀", Tok::Forall}, {"∃", Tok::Exists},
}};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    bool matched = false;
    for (const Spelled& s : kSymbols) {
      if (text.substr(i, s.text.size()) == s.text) {
        out.push_back({s.kind, i, std::string(s.text)});
        i += s.text.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::isalpha(c)) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string word(text.substr(i, j - i));
      Tok kind = std::isupper(c) ? Tok::Upper : Tok::Lower;
      if (word == "forall") kind = Tok::Forall;
      if (word == "exists") kind = Tok::Exists;
      out.push_back({kind, i, std::move(word)});
      i = j;
      continue;
    }
    if (c == '0' || c == '1') {
      if (i + 1 < text.size() && std::isalnum(static_cast<unsigned char>(text[i + 1])))
        throw ParseError(i, "malformed constant");
      out.push_back({c == '0' ? Tok::Zero : Tok::One, i, std::string(1, static_cast<char>(c))});
      ++i;
      continue;
    }
    throw ParseError(i, std::string("unexpected character '") + static_cast<char>(c) + "'");
  }
  out.push_back({Tok::End, text.size(), ""});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::string_view text, SignatureId sig, const std::set<std::string>* constants)
      : tokens_(lex(text)), sig_(sig), constants_(constants) {}

  Formula parse_all() {
    Formula f = parse_iff();
    expect(Tok::End, "end of input");
    return f;
  }

  Term parse_term_all() {
    Term t = parse_term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(peek().pos, std::string("expected ") + what +
                                       (peek().kind == Tok::End ? " but input ended"
                                                                : ", found '" + peek().text + "'"));
    return next();
  }

  bool first_order() const { return constants_ != nullptr; }

  void require(Connective c, std::size_t pos) const {
    (void)pos;
    if (!allows(sig_, c)) throw SignatureError(spelling(c), name(sig_));
  }

  Formula make_unary(Connective c, Formula f, std::size_t pos) const {
    require(c, pos);
    return Formula::unary(c, std::move(f));
  }

  Formula make_binary(Connective c, Formula a, Formula b, std::size_t pos) const {
    require(c, pos);
    return Formula::binary(c, std::move(a), std::move(b));
  }

  // Falsum in the current signature.
  Formula falsum(std::size_t pos) const {
    if (allows(sig_, Connective::Bottom)) return Formula::bottom();
    const Formula w = var(std::string(kBottomWitness));
    if (allows(sig_, Connective::ParaNeg) && allows(sig_, Connective::Circ))
      return conj(conj(w, neg(w)), circ(w));
    if (allows(sig_, Connective::ClassNeg)) return conj(w, tilde(w));
    throw ParseError(pos, std::string("no falsum is definable in signature ") + name(sig_));
  }

  Formula parse_iff() {
    Formula lhs = parse_imp();
    if (peek().kind == Tok::Iff) {
      const std::size_t pos = next().pos;
      Formula rhs = parse_iff();
      require(Connective::Imp, pos);
      require(Connective::And, pos);
      return iff(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::Imp) {
      const std::size_t pos = next().pos;
      return make_binary(Connective::Imp, std::move(lhs), parse_imp(), pos);
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    if (peek().kind == Tok::Or) {
      const std::size_t pos = next().pos;
      return make_binary(Connective::Or, std::move(lhs), parse_or(), pos);
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    if (peek().kind == Tok::And) {
      const std::size_t pos = next().pos;
      return make_binary(Connective::And, std::move(lhs), parse_and(), pos);
    }
    return lhs;
  }

  Formula parse_unary() {
    const Token& t = peek();
    const std::size_t pos = t.pos;
    switch (t.kind) {
      case Tok::Not: next(); return make_unary(Connective::ParaNeg, parse_unary(), pos);
      case Tok::Circ: next(); return make_unary(Connective::Circ, parse_unary(), pos);
      case Tok::Box1: next(); return make_unary(Connective::Box1, parse_unary(), pos);
      case Tok::Dia1: next(); return make_unary(Connective::Dia1, parse_unary(), pos);
      case Tok::Box2: next(); return make_unary(Connective::Box2, parse_unary(), pos);
      case Tok::Dia2: next(); return make_unary(Connective::Dia2, parse_unary(), pos);
      case Tok::Tilde: {
        next();
        Formula body = parse_unary();
        if (allows(sig_, Connective::ClassNeg))
          return Formula::unary(Connective::ClassNeg, std::move(body));
        if (!allows(sig_, Connective::Imp)) throw SignatureError("~", name(sig_));
        return imp(std::move(body), falsum(pos));
      }
      case Tok::Forall:
      case Tok::Exists: {
        if (!first_order()) throw ParseError(pos, "quantifier outside first-order formula");
        const Connective q = t.kind == Tok::Forall ? Connective::Forall : Connective::Exists;
        next();
        std::string v = expect(Tok::Lower, "bound variable").text;
        if (constants_->contains(v)) throw ParseError(pos, "cannot quantify constant '" + v + "'");
        expect(Tok::Dot, "'.' after bound variable");
        return Formula::quant(q, std::move(v), parse_iff());
      }
      default:
        return parse_atom();
    }
  }

  Formula parse_atom() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::LParen: {
        Formula f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Zero:
        require(Connective::Bottom, t.pos);
        return Formula::bottom();
      case Tok::One:
        require(Connective::Top, t.pos);
        return Formula::top();
      case Tok::Falsum:
        return falsum(t.pos);
      case Tok::Lower:
        return var(t.text);
      case Tok::Upper: {
        if (!first_order()) throw ParseError(t.pos, "predicate '" + t.text + "' outside first-order formula");
        std::vector<Term> args;
        if (accept(Tok::LParen)) {
          if (!accept(Tok::RParen)) {
            do {
              args.push_back(parse_term());
            } while (accept(Tok::Comma));
            expect(Tok::RParen, "')' after predicate arguments");
          }
        }
        return Formula::pred(t.text, std::move(args));
      }
      case Tok::End:
        throw ParseError(t.pos, "unexpected end of input");
      default:
        throw ParseError(t.pos, "unexpected '" + t.text + "'");
    }
  }

  Term parse_term() {
    const Token& t = expect(Tok::Lower, "term");
    if (accept(Tok::LParen)) {
      std::vector<Term> args;
      do {
        args.push_back(parse_term());
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "')' after function arguments");
      return Term::apply(t.text, std::move(args));
    }
    if (constants_ && constants_->contains(t.text)) return Term::constant(t.text);
    return Term::variable(t.text);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  SignatureId sig_;
  const std::set<std::string>* constants_;
};

bool match_into(const Formula& pattern, const Formula& candidate, Binding& binding) {
  if (pattern.is_var()) {
    auto [it, inserted] = binding.emplace(pattern.name(), candidate);
    return inserted || it->second == candidate;
  }
  if (pattern.op() != candidate.op() || pattern.name() != candidate.name()) return false;
  if (!std::ranges::equal(pattern.terms(), candidate.terms())) return false;
  if (is_binary(pattern.op()))
    return match_into(pattern.left(), candidate.left(), binding) &&
           match_into(pattern.right(), candidate.right(), binding);
  if (is_unary(pattern.op()) || is_quantifier(pattern.op()))
    return match_into(pattern.child(), candidate.child(), binding);
  return true;
}

Formula substitute_into(const Formula& f, const Binding& binding) {
  switch (f.op()) {
    case Connective::Var: {
      auto it = binding.find(f.name());
      if (it == binding.end()) throw UnboundError(f.name());
      return it->second;
    }
    case Connective::Bottom:
    case Connective::Top:
    case Connective::Pred:
      return f;
    default:
      break;
  }
  if (is_binary(f.op()))
    return Formula::binary(f.op(), substitute_into(f.left(), binding),
                           substitute_into(f.right(), binding));
  if (is_unary(f.op())) return Formula::unary(f.op(), substitute_into(f.child(), binding));
  return Formula::quant(f.op(), f.name(), substitute_into(f.child(), binding));
}

}  // namespace

const char* name(SignatureId sig) noexcept {
  for (const auto& [id, text] : kNames)
    if (id == sig) return text;
  return "?";
}

std::optional<SignatureId> signature_from_name(std::string_view text) {
  for (const auto& [id, spelled] : kNames)
    if (text == spelled) return id;
  return std::nullopt;
}

bool allows(SignatureId sig, Connective c) noexcept { return (connectives_of(sig) & bit(c)) != 0; }

void validate(const Formula& f, SignatureId sig, bool first_order) {
  const Connective op = f.op();
  if (op == Connective::Pred || is_quantifier(op)) {
    if (!first_order) throw SignatureError(spelling(op), name(sig));
  } else if (!allows(sig, op)) {
    throw SignatureError(spelling(op), name(sig));
  }
  if (is_binary(op)) {
    validate(f.left(), sig, first_order);
    validate(f.right(), sig, first_order);
  } else if (is_unary(op) || is_quantifier(op)) {
    validate(f.child(), sig, first_order);
  }
}

Formula parse(std::string_view text, SignatureId sig) {
  return Parser(text, sig, nullptr).parse_all();
}

Formula parse_first_order(std::string_view text, const std::set<std::string>& constants) {
  return Parser(text, SignatureId::Sigma, &constants).parse_all();
}

Term parse_term(std::string_view text, const std::set<std::string>& constants) {
  return Parser(text, SignatureId::Sigma, &constants).parse_term_all();
}

Formula substitute(const Schema& schema, const Binding& binding) {
  return substitute_into(schema.body, binding);
}

std::optional<Binding> match_schema(const Schema& schema, const Formula& candidate) {
  Binding binding;
  if (!match_into(schema.body, candidate, binding)) return std::nullopt;
  return binding;
}

std::size_t complexity(const Formula& f) {
  const Connective op = f.op();
  if (is_binary(op)) return 1 + complexity(f.left()) + complexity(f.right());
  if (is_unary(op) || is_quantifier(op))
    return (op == Connective::Circ ? 2 : 1) + complexity(f.child());
  return 1;
}

}  // namespace balfi
