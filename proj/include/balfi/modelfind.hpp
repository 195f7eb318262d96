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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "balfi/balfi.hpp"

namespace balfi {

enum class SearchMode : std::uint8_t { Exhaustive, Random };

struct SearchSpec {
  int n_atoms = 2;
  // Equational filters; tags without an equation are checked as schemas.
  std::vector<AxiomTag> require_tags;
  std::vector<AxiomTag> forbid_tags;
  std::vector<Schema> require_schemas;
  std::vector<Schema> forbid_schemas;
  bool require_paraconsistent = false;
  bool require_lfi = false;
  // Arbitrary predicates applied to complete candidates, after all other filters.
  std::vector<std::function<bool(const Balfi&)>> predicates;
  // Fixed table entries, keyed by carrier rank.
  std::map<std::size_t, Element> fixed_neg;
  std::map<std::size_t, Element> fixed_circ;

  SearchMode mode = SearchMode::Exhaustive;
  std::size_t random_count = 0;
  std::uint64_t seed = 0;
  // Random mode gives up after random_count * attempts_per_sample candidates.
  std::size_t attempts_per_sample = 1000;

  // Stop after this many models. A limited exhaustive search is exempt
  // from the space cap.
  std::optional<std::size_t> limit;
  double space_cap = 1e8;
  unsigned jobs = 1;
};

class SpaceTooLarge : public Error {
 public:
  SpaceTooLarge(double estimate, double cap)
      : Error("search space of about " + std::to_string(estimate) +
              " candidates exceeds the cap of " + std::to_string(cap)),
        estimate_(estimate) {}

  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

class Unsatisfiable : public Error {
 public:
  using Error::Error;
};

// True when the required tags force @a = ~(a & !a).
bool circ_determined(const SearchSpec& spec);

// Number of candidates left after the structural pruning and fixed entries.
double estimate_space(const SearchSpec& spec);

// Streams the models meeting `spec` in deterministic order. The callback
// returns false to stop. Returns the number of models delivered.
std::size_t for_each_balfi(const SearchSpec& spec, const std::function<bool(const Balfi&)>& fn);

std::vector<Balfi> enumerate_balfis(const SearchSpec& spec);

enum class ConsequenceMode : std::uint8_t { Local, Global };

struct Countermodel {
  Balfi model;
  Valuation valuation;
};

// Local: the meet of v(gamma) is not below v(phi) (v(phi) != 1 if gamma is
// empty). Global: every premise takes 1 and phi does not.
std::optional<Countermodel> refute_in(const Balfi& b, std::span<const Formula> gamma,
                                      const Formula& phi, ConsequenceMode mode);

// Searches the models of `spec` for a refutation. An empty result means
// none within the bound, never that the consequence holds.
std::optional<Countermodel> find_countermodel(const SearchSpec& spec,
                                              std::span<const Formula> gamma,
                                              const Formula& phi, ConsequenceMode mode);

enum class ExampleName : std::uint8_t { BRemark, BPrime, BRci16a, BRci16b, BTriplePrime };

const char* name(ExampleName e) noexcept;
std::optional<ExampleName> example_from_name(std::string_view name);
std::span<const ExampleName> all_examples() noexcept;

SearchSpec example_spec(ExampleName e);

// First model (second for BRci16b) of the example's constraints. Throws
// Unsatisfiable if none exists.
Balfi reconstruct_example(ExampleName e);

}  // namespace balfi
