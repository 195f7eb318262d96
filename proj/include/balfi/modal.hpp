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
#include <string>
#include <vector>

#include "balfi/balfi.hpp"

namespace balfi {

// W = {w1..wn} with subsets as bitmasks; both maps are indexed by subset rank.
struct NeighborhoodFrame {
  static constexpr int kMaxWorlds = 5;

  int worlds = 1;
  std::vector<Element> s_neg;
  std::vector<Element> s_circ;

  std::size_t subsets() const { return std::size_t{1} << worlds; }
  Element universe() const { return Element{static_cast<std::uint32_t>(subsets() - 1)}; }
  // Throws Error on wrong sizes or values outside W.
  void validate() const;

  friend bool operator==(const NeighborhoodFrame&, const NeighborhoodFrame&) = default;
};

using Denotation = std::map<std::string, Element>;

struct NeighborhoodModel {
  NeighborhoodFrame frame;
  Denotation d;
};

// n1[w] and n2[w] hold the neighbourhoods of world w: bit X is set iff X is
// in N_i(w).
struct MinimalModel {
  int worlds = 1;
  std::vector<std::uint64_t> n1;
  std::vector<std::uint64_t> n2;
  Denotation d;

  void validate() const;
};

// Formula over Sigma, computed with the set clauses directly.
Element denote(const NeighborhoodModel& m, const Formula& f);

Balfi balfi_from_frame(const NeighborhoodFrame& fr);
NeighborhoodFrame frame_from_balfi(const Balfi& b);

// The schema's term function, over the frame's BALFI, is W on every tuple.
bool frame_valid_schema(const NeighborhoodFrame& fr, const Schema& s);

// The set-theoretic condition on S_neg and S_circ for ciw, ci, cl, cf or
// ce, checked for every X. Throws Error for other tags.
bool frame_condition(const NeighborhoodFrame& fr, AxiomTag tag);

// Formula over the bimodal signature.
Element denote_bimodal(const MinimalModel& n, const Formula& f);

// !a becomes a -> [1]a and @a becomes ~(a & [1]a) & [2]a.
Formula translate(const Formula& f);

// N(w) = {X : w in S(X)} with S_neg giving N1 and S_circ giving N2; the
// result carries no denotation.
MinimalModel n_from_s(const NeighborhoodFrame& fr);
NeighborhoodFrame s_from_n(const MinimalModel& n);

// Visits every frame over `worlds` (at most 2) worlds, partitioning the
// sweep by S_neg table across `jobs` threads. `fn` must be thread-safe.
// Returns the number of frames for which fn returned false.
std::size_t sweep_frames(int worlds, unsigned jobs,
                         const std::function<bool(const NeighborhoodFrame&)>& fn);

}  // namespace balfi
