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

#include "balfi/io.hpp"
#include "../support/generators.hpp"

using namespace balfi;
using namespace balfi::testing;

TEST_SUITE("io") {

TEST_CASE("BALFI files round trip") {
  for (const auto& b : random_balfis(3, 50, 3)) CHECK(balfi_from_json(balfi_to_json(b)) == b);
  const Json j = balfi_to_json(classical_balfi(1));
  CHECK(j["atoms"] == 1);
  Json broken = j;
  broken["neg"][0] = Json::array();
  CHECK_THROWS(balfi_from_json(broken));
}

TEST_CASE("frames and minimal models round trip") {
  Rng rng(47);
  for (int i = 0; i < 50; ++i) {
    const NeighborhoodFrame fr = random_frame(rng, 1 + static_cast<int>(pick(rng, 3)));
    CHECK(frame_from_json(frame_to_json(fr)) == fr);
    const MinimalModel n = n_from_s(fr);
    const MinimalModel back = minimal_model_from_json(minimal_model_to_json(n));
    CHECK(back.n1 == n.n1);
    CHECK(back.n2 == n.n2);
  }
}

TEST_CASE("structures round trip") {
  Rng rng(53);
  const auto pool = all_a4();
  for (int i = 0; i < 50; ++i) {
    const FOStructure s = random_structure(rng, pool);
    const FOStructure back = structure_from_json(structure_to_json(s));
    CHECK(back.universe == s.universe);
    CHECK(back.balfi == s.balfi);
    CHECK(back.consts == s.consts);
    CHECK(back.funcs.at("f").values == s.funcs.at("f").values);
    CHECK(back.preds.at("R").values == s.preds.at("R").values);
    CHECK(back.preds.at("R").arity == 2);
  }
}

TEST_CASE("elements") {
  CHECK(element_from_json(element_to_json(Element{5}), 3) == Element{5});
  CHECK_THROWS(element_from_json(Json::array({3}), 2));
}

}
