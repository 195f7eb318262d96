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

#include <set>

#include "balfi/modelfind.hpp"
#include "balfi/syntax.hpp"

using namespace balfi;

namespace {

// Closed-form size of the search space: for each z, sum over admissible
// negations of the number of admissible consistency values.
double census_formula(int n) {
  const std::uint32_t m = (1u << n) - 1;
  double total = 1;
  for (std::uint32_t z = 0; z <= m; ++z) {
    double row = 0;
    for (std::uint32_t x = 0; x <= m; ++x) {
      if ((z | x) == m) row += static_cast<double>(1u << __builtin_popcount(m & ~(z & x)));
    }
    total *= row;
  }
  return total;
}

}  // namespace

TEST_SUITE("modelfind") {

TEST_CASE("census sizes match the closed form") {
  SearchSpec spec;
  for (int n = 1; n <= 2; ++n) {
    spec.n_atoms = n;
    CHECK(static_cast<double>(enumerate_balfis(spec).size()) == census_formula(n));
  }
  CHECK(census_formula(1) == 6);
  CHECK(census_formula(2) == 1296);
  spec.n_atoms = 3;
  CHECK(estimate_space(spec) >= census_formula(3));
  CHECK_THROWS_AS(enumerate_balfis(spec), SpaceTooLarge);
  spec.limit = 5;
  CHECK(enumerate_balfis(spec).size() == 5);
}

TEST_CASE("parallel search returns the serial order") {
  SearchSpec spec;
  spec.require_tags = {AxiomTag::ce};
  const auto serial = enumerate_balfis(spec);
  spec.jobs = 4;
  CHECK(enumerate_balfis(spec) == serial);
}

TEST_CASE("filters agree with post-hoc filtering") {
  const auto all = enumerate_balfis(SearchSpec{});
  for (AxiomTag t : equational_tags()) {
    SearchSpec spec;
    spec.require_tags = {t};
    std::vector<Balfi> expected;
    for (const auto& b : all) {
      if (satisfies_equation(b, t)) expected.push_back(b);
    }
    CHECK(enumerate_balfis(spec) == expected);
    spec.require_tags.clear();
    spec.forbid_tags = {t};
    CHECK(enumerate_balfis(spec).size() + expected.size() == all.size());
  }
  SearchSpec para;
  para.require_paraconsistent = true;
  std::size_t expected = 0;
  for (const auto& b : all) expected += is_paraconsistent(b) ? 1 : 0;
  CHECK(enumerate_balfis(para).size() == expected);
}

TEST_CASE("fixed slots and determined consistency") {
  SearchSpec spec;
  spec.fixed_neg = {{3, Element{3}}};
  for (const auto& b : enumerate_balfis(spec)) CHECK(b.neg(Element{3}) == Element{3});
  spec = SearchSpec{};
  spec.require_tags = {AxiomTag::ci};
  CHECK(circ_determined(spec));
  spec.require_tags = {AxiomTag::cf};
  CHECK_FALSE(circ_determined(spec));
}

TEST_CASE("random mode is reproducible and yields BALFIs") {
  SearchSpec spec;
  spec.n_atoms = 4;
  spec.mode = SearchMode::Random;
  spec.random_count = 50;
  spec.seed = 42;
  const auto first = enumerate_balfis(spec);
  CHECK(first.size() == 50);
  CHECK(enumerate_balfis(spec) == first);
  for (const auto& b : first) {
    CHECK_NOTHROW(check_balfi(b.algebra(), {b.neg_table().begin(), b.neg_table().end()},
                              {b.circ_table().begin(), b.circ_table().end()}));
  }
}

TEST_CASE("countermodels refute and are absent for valid formulas") {
  SearchSpec spec;
  auto cm = find_countermodel(spec, {}, parse("!!p -> p"), ConsequenceMode::Local);
  REQUIRE(cm.has_value());
  CHECK(evaluate(cm->model, cm->valuation, parse("!!p -> p")) != cm->model.algebra().one());
  CHECK_FALSE(find_countermodel(spec, {}, parse("p | !p"), ConsequenceMode::Local).has_value());
  const std::vector<Formula> gamma{parse("p"), parse("!p"), parse("@p")};
  CHECK_FALSE(find_countermodel(spec, gamma, parse("q"), ConsequenceMode::Local).has_value());
}

TEST_CASE("named examples") {
  const Element z{0}, a{1}, b{2}, o{3};
  const Balfi remark = reconstruct_example(ExampleName::BRemark);
  CHECK(std::vector<Element>(remark.neg_table().begin(), remark.neg_table().end()) == std::vector<Element>{o, b, a, o});
  CHECK(std::vector<Element>(remark.circ_table().begin(), remark.circ_table().end()) == std::vector<Element>{z, a, z, z});
  const Balfi prime = reconstruct_example(ExampleName::BPrime);
  CHECK(std::vector<Element>(prime.neg_table().begin(), prime.neg_table().end()) == std::vector<Element>{o, o, o, z});
  CHECK(std::vector<Element>(prime.circ_table().begin(), prime.circ_table().end()) == std::vector<Element>{a, z, z, b});
  const Balfi triple = reconstruct_example(ExampleName::BTriplePrime);
  CHECK(satisfies_equation(triple, AxiomTag::cl));
  CHECK_FALSE(satisfies_equation(triple, AxiomTag::cf));
  CHECK(is_paraconsistent(triple));
  const Balfi x = reconstruct_example(ExampleName::BRci16a), y = reconstruct_example(ExampleName::BRci16b);
  CHECK_FALSE(x == y);
  for (const Balfi* m : {&x, &y}) {
    CHECK(m->algebra().atoms() == 4);
    CHECK(satisfies_equation(*m, AxiomTag::ci));
    CHECK(satisfies_equation(*m, AxiomTag::cf));
    CHECK(is_paraconsistent(*m));
  }
  for (ExampleName e : all_examples()) CHECK(example_from_name(name(e)) == e);
}

}
