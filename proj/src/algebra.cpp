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

#include "balfi/algebra.hpp"

#include "balfi/error.hpp"

namespace balfi {

std::vector<int> atom_indices(Element e) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (e.bits & (1u << i)) out.push_back(i);
  return out;
}

Element from_atom_indices(std::span<const int> atoms) {
  Element e;
  for (int i : atoms) {
    if (i < 0 || i >= PowersetAlgebra::kMaxAtoms)
      throw Error("atom index " + std::to_string(i) + " out of range");
    e.bits |= 1u << i;
  }
  return e;
}

std::string describe(Element e, int n_atoms) {
  const std::uint32_t top = (n_atoms >= 32) ? ~0u : ((1u << n_atoms) - 1);
  if (e.bits == 0) return "0";
  if (e.bits == top) return "1";
  if (n_atoms == 2) return e.bits == 1 ? "a" : "b";
  std::string out = "{";
  bool first = true;
  for (int i : atom_indices(e)) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

PowersetAlgebra::PowersetAlgebra(int n_atoms) : atoms_(n_atoms) {
  if (n_atoms < 1 || n_atoms > kMaxAtoms)
    throw Error("number of atoms must be in [1, 16], got " + std::to_string(n_atoms));
  mask_ = (1u << n_atoms) - 1;
}

Element PowersetAlgebra::at(std::size_t rank) const {
  if (rank >= size()) throw Error("carrier rank " + std::to_string(rank) + " out of range");
  return {static_cast<std::uint32_t>(rank)};
}

Element PowersetAlgebra::apply(BooleanOp op, std::span<const Element> args) const {
  const std::size_t arity = op == BooleanOp::Compl ? 1 : 2;
  if (args.size() != arity)
    throw Error("operation expects " + std::to_string(arity) + " arguments, got " +
                std::to_string(args.size()));
  for (Element e : args)
    if (!contains(e)) throw Error("element outside the carrier");
  switch (op) {
    case BooleanOp::Meet: return meet(args[0], args[1]);
    case BooleanOp::Join: return join(args[0], args[1]);
    case BooleanOp::Imp: return impl(args[0], args[1]);
    case BooleanOp::Compl: return compl_(args[0]);
  }
  return zero();
}

Element PowersetAlgebra::big_meet(std::span<const Element> xs) const noexcept {
  Element acc = one();
  for (Element e : xs) acc = meet(acc, e);
  return acc;
}

Element PowersetAlgebra::big_join(std::span<const Element> xs) const noexcept {
  Element acc = zero();
  for (Element e : xs) acc = join(acc, e);
  return acc;
}

}  // namespace balfi
