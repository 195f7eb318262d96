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

#include <doctest.h>

#include "balfi/syntax.hpp"
#include "../support/generators.hpp"

using namespace balfi;

TEST_SUITE("syntax") {

TEST_CASE("precedence and associativity") {
  CHECK(parse("p & q | r") == disj(conj(var("p"), var("q")), var("r")));
  CHECK(parse("p -> q -> r") == imp(var("p"), imp(var("q"), var("r"))));
  CHECK(parse("!p & @q") == conj(neg(var("p")), circ(var("q"))));
  CHECK(parse("!!p -> p") == imp(neg(neg(var("p"))), var("p")));
  CHECK(parse("p <-> q") == iff(var("p"), var("q")));
  CHECK(parse("p ∧ ¬p → ∘q") == imp(conj(var("p"), neg(var("p"))), circ(var("q"))));
}

TEST_CASE("render round trip on random formulas") {
  testing::Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = testing::random_formula(rng, 6, {"p", "q", "r"});
    CHECK(parse(render(f)) == f);
  }
}

TEST_CASE("signatures reject foreign operators") {
  CHECK_THROWS_AS(parse("!p", SignatureId::SigmaPlus), SignatureError);
  CHECK_THROWS_AS(parse("@p", SignatureId::SigmaC), SignatureError);
  CHECK_THROWS_AS(parse("[1]p", SignatureId::Sigma), SignatureError);
  CHECK_THROWS_AS(parse("[2]p", SignatureId::SigmaM), SignatureError);
  CHECK_NOTHROW(parse("[2]p & <1>q", SignatureId::SigmaBM));
  CHECK_NOTHROW(parse("0 | 1", SignatureId::SigmaE));
}

TEST_CASE("falsum and strong negation expand in Sigma") {
  const Formula p0 = var(std::string(kBottomWitness));
  const Formula bot = conj(conj(p0, neg(p0)), circ(p0));
  CHECK(parse("_|_") == bot);
  CHECK(parse("~q") == imp(var("q"), bot));
  CHECK(parse("~q", SignatureId::SigmaM) == tilde(var("q")));
}

TEST_CASE("parse errors carry a position") {
  try {
    parse("p & & q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse("(p"), ParseError);
  CHECK_THROWS_AS(parse("p $ q"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
}

TEST_CASE("schema matching inverts substitution") {
  const Schema s{parse("@a & @b -> @(a & b)")};
  testing::Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    Binding b{{"a", testing::random_formula(rng, 3, {"p", "q"})}, {"b", testing::random_formula(rng, 3, {"p", "q"})}};
    const Formula inst = substitute(s, b);
    auto m = match_schema(s, inst);
    REQUIRE(m.has_value());
    CHECK(substitute(s, *m) == inst);
  }
  CHECK_FALSE(match_schema(Schema{parse("a -> a")}, parse("p -> q")).has_value());
}

TEST_CASE("first-order parsing") {
  const Formula f = parse_first_order("forall x. P(f(x)) -> exists y. R(x, c)", {"c"});
  CHECK(f.op() == Connective::Forall);
  CHECK(parse_first_order(render(f), {"c"}) == f);
  CHECK(parse_term("f(c)", {"c"}) == Term::apply("f", {Term::constant("c")}));
}

TEST_CASE("complexity and depth") {
  const Formula f = parse("!(p & q) -> @p");
  CHECK(depth(f) == 3);
  CHECK(complexity(f) >= depth(f));
  CHECK(variables(f) == std::vector<std::string>{"p", "q"});
}

}
