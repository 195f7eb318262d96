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

#include <json.hpp>

#include "balfi/balfi.hpp"
#include "balfi/firstorder.hpp"
#include "balfi/modal.hpp"

namespace balfi {

using Json = nlohmann::json;

// Elements are sorted atom-index arrays, e.g. [0] for {w1}.
Json element_to_json(Element e);
Element element_from_json(const Json& j, int n_atoms);

// {"atoms": n, "neg": [...], "circ": [...]}, tables by subset rank.
Json balfi_to_json(const Balfi& b);
// Runs check_balfi.
Balfi balfi_from_json(const Json& j);

Json valuation_to_json(const Valuation& v);

// {"worlds": n, "s_neg": [...], "s_circ": [...]}
Json frame_to_json(const NeighborhoodFrame& fr);
NeighborhoodFrame frame_from_json(const Json& j);

// A frame document plus "n1"/"n2": per world, the list of neighbourhood
// subsets. "d" maps variables to subsets in either document.
Json minimal_model_to_json(const MinimalModel& n);
MinimalModel minimal_model_from_json(const Json& j);
Denotation denotation_from_json(const Json& j, int worlds);

// {"universe": k, "balfi": {...}, "consts": {...}, "funcs": {...},
// "preds": {...}} with tables nested by argument position.
Json structure_to_json(const FOStructure& s);
FOStructure structure_from_json(const Json& j);

}  // namespace balfi
