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

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace balfi {

// An element of a powerset algebra: the set of atoms w_{i+1} for each set bit i.
// The integer value of `bits` is the element's rank in the carrier.
struct Element {
  std::uint32_t bits = 0;

  constexpr auto operator<=>(const Element&) const = default;
};

// Sorted atom indices, e.g. {w1, w3} -> [0, 2].
std::vector<int> atom_indices(Element e);
Element from_atom_indices(std::span<const int> atoms);

// Human-readable name: 0, 1, a, b for the four-element algebra; {0,2} style
// atom lists otherwise.
std::string describe(Element e, int n_atoms);

enum class BooleanOp : std::uint8_t { Meet, Join, Imp, Compl };

// The finite Boolean algebra of all subsets of {w1, ..., wn}.
class PowersetAlgebra {
 public:
  static constexpr int kMaxAtoms = 16;

  explicit PowersetAlgebra(int n_atoms);

  int atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return std::size_t{1} << atoms_; }
  Element zero() const noexcept { return {0}; }
  Element one() const noexcept { return {mask_}; }
  bool contains(Element e) const noexcept { return (e.bits & ~mask_) == 0; }
  Element at(std::size_t rank) const;

  Element meet(Element x, Element y) const noexcept { return {x.bits & y.bits}; }
  Element join(Element x, Element y) const noexcept { return {x.bits | y.bits}; }
  Element impl(Element x, Element y) const noexcept { return {(~x.bits & mask_) | y.bits}; }
  Element compl_(Element x) const noexcept { return {~x.bits & mask_}; }
  bool leq(Element x, Element y) const noexcept { return (x.bits & ~y.bits) == 0; }

  // Throws Error on arity mismatch or foreign elements.
  Element apply(BooleanOp op, std::span<const Element> args) const;

  Element big_meet(std::span<const Element> xs) const noexcept;
  Element big_join(std::span<const Element> xs) const noexcept;

  friend bool operator==(const PowersetAlgebra&, const PowersetAlgebra&) = default;

 private:
  int atoms_;
  std::uint32_t mask_;
};

}  // namespace balfi
